use serde::Serialize;

use crate::cocycles::{is_class_function_compatible, regular_classes, Cocycle};
use crate::exact::Cyclotomic;

use super::{AlgebraElement, AlgebraError};

/// The class sums `k_C = Σ_{g∈C} g̃` over regular classes, a basis of
/// `Z(C_ψG)` when ψ is class-function compatible.
#[derive(Debug, Clone, Serialize)]
pub struct CenterBasis {
    /// Indices into the group's conjugacy classes.
    pub classes: Vec<usize>,
    pub sizes: Vec<usize>,
    #[serde(skip)]
    pub elements: Vec<AlgebraElement>,
}

impl CenterBasis {
    pub fn dimension(&self) -> usize {
        self.classes.len()
    }
}

/// `dim Z(C_ψG)`, computed from the commutant equations `[z, h̃] = 0`.
///
/// These read `z_{hxh⁻¹} = μ(x;h)·z_x`, so each conjugacy orbit contributes
/// one dimension exactly when the phases it forces are consistent.
pub fn center_dimension(psi: &Cocycle) -> usize {
    let g = psi.group();
    let n = psi.order();
    let mut dim = 0;
    for members in &g.classes().classes {
        let x = members[0];
        let mut phase: Vec<Option<u64>> = vec![None; g.order()];
        let mut consistent = true;
        for h in g.elements() {
            let y = g.conjugate(x, h);
            let k = psi.conjugation_exponent(x, h) % n;
            match phase[y] {
                None => phase[y] = Some(k),
                Some(old) if old != k => {
                    consistent = false;
                    break;
                }
                _ => {}
            }
        }
        if consistent {
            dim += 1;
        }
    }
    dim
}

fn root_counts_equal(a: &[i64], b: &[i64], n: u64) -> bool {
    a == b || Cyclotomic::from_root_counts(a, n) == Cyclotomic::from_root_counts(b, n)
}

/// Class sums over regular classes, each checked to commute with every
/// generator and their number checked against [`center_dimension`].
pub fn center_basis(psi: &Cocycle) -> Result<CenterBasis, AlgebraError> {
    let check = is_class_function_compatible(psi)?;
    let g = psi.group();
    if let Some((x, h)) = check.witness {
        return Err(AlgebraError::NotClassFunction { g: g.label(x).into(), h: g.label(h).into() });
    }
    let report = regular_classes(psi)?;
    let n = psi.order();
    let size = g.order();
    let classes = g.classes();
    let mut elements = Vec::new();
    for &c in &report.regular_classes {
        let members = &classes.classes[c];
        for &t in g.generators() {
            let mut left = vec![0i64; size * n as usize];
            let mut right = vec![0i64; size * n as usize];
            for &x in members {
                left[g.mul(t, x) * n as usize + psi.exponent(t, x) as usize] += 1;
                right[g.mul(x, t) * n as usize + psi.exponent(x, t) as usize] += 1;
            }
            for z in g.elements() {
                let span = z * n as usize..(z + 1) * n as usize;
                if !root_counts_equal(&left[span.clone()], &right[span], n) {
                    return Err(AlgebraError::Verification(format!(
                        "class sum of {} does not commute with {}",
                        g.label(members[0]),
                        g.label(t)
                    )));
                }
            }
        }
        elements.push(AlgebraElement::from_terms(members.iter().map(|&x| (x, Cyclotomic::one()))));
    }
    let dim = center_dimension(psi);
    if dim != elements.len() {
        return Err(AlgebraError::Verification(format!(
            "{} central class sums but the center has dimension {dim}",
            elements.len()
        )));
    }
    Ok(CenterBasis {
        sizes: report.regular_classes.iter().map(|&c| classes.size(c)).collect(),
        classes: report.regular_classes,
        elements,
    })
}

/// Exact structure constants `k_i k_j = Σ_l a_{ij}^l k_l` of the center.
#[derive(Debug, Clone, Serialize)]
pub struct StructureConstants {
    /// `a[i][j][l]`.
    pub a: Vec<Vec<Vec<Cyclotomic>>>,
}

impl StructureConstants {
    pub fn get(&self, i: usize, j: usize, l: usize) -> &Cyclotomic {
        &self.a[i][j][l]
    }

    pub fn dimension(&self) -> usize {
        self.a.len()
    }
}

/// Computes `a_{ij}^l` from the products of class sums, verifying that each
/// product is constant on regular classes and vanishes off them.
pub fn structure_constants(psi: &Cocycle, basis: &CenterBasis) -> Result<StructureConstants, AlgebraError> {
    let g = psi.group();
    let n = psi.order() as usize;
    let classes = g.classes();
    let t = basis.dimension();
    let mut position = vec![None; classes.len()];
    for (i, &c) in basis.classes.iter().enumerate() {
        position[c] = Some(i);
    }
    let mut a = vec![vec![Vec::with_capacity(t); t]; t];
    let mut counts = vec![0i64; g.order() * n];
    for i in 0..t {
        for j in 0..t {
            counts.iter_mut().for_each(|c| *c = 0);
            for &x in &classes.classes[basis.classes[i]] {
                for &y in &classes.classes[basis.classes[j]] {
                    counts[g.mul(x, y) * n + psi.exponent(x, y) as usize] += 1;
                }
            }
            let at = |z: usize| &counts[z * n..(z + 1) * n];
            for (c, members) in classes.classes.iter().enumerate() {
                let rep = members[0];
                for &z in &members[1..] {
                    if !root_counts_equal(at(z), at(rep), n as u64) {
                        return Err(AlgebraError::Verification(format!(
                            "product of class sums is not constant on the class of {}",
                            g.label(rep)
                        )));
                    }
                }
                let value = Cyclotomic::from_root_counts(at(rep), n as u64);
                match position[c] {
                    Some(_) => a[i][j].push(value),
                    None if value.is_zero() => {}
                    None => {
                        return Err(AlgebraError::Verification(format!(
                            "product of class sums is nonzero at the non-regular {}",
                            g.label(rep)
                        )))
                    }
                }
            }
            // `a[i][j]` was filled in class order; regular classes are sorted ascending.
        }
    }
    Ok(StructureConstants { a })
}
