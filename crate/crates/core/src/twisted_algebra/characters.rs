use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cocycles::Cocycle;
use crate::exact::{Cyclotomic, ExactMatrix, Rational, Solution};

use super::center::{center_basis, structure_constants, CenterBasis, StructureConstants};
use super::{AlgebraElement, AlgebraError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralOptions {
    pub seed: u64,
    /// Residual bound for the joint eigenvectors and orthonormality before snapping.
    pub tolerance: f64,
    /// Integrality window for degrees and eigenvalue multiplicities.
    pub snap_tolerance: f64,
    pub max_attempts: usize,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions { seed: 0, tolerance: 1e-8, snap_tolerance: 1e-6, max_attempts: 32 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularClass {
    /// Index into the group's conjugacy classes.
    pub class: usize,
    pub representative: usize,
    pub label: String,
    pub size: usize,
}

/// Irreducible ψ-characters on the regular classes, exact.
///
/// Rows are sorted by degree and then by their values read class by class.
#[derive(Debug, Clone, Serialize)]
pub struct TwistedCharacterTable {
    #[serde(skip)]
    psi: Cocycle,
    #[serde(skip)]
    center: CenterBasis,
    #[serde(skip)]
    structure: StructureConstants,
    pub classes: Vec<RegularClass>,
    pub degrees: Vec<u64>,
    /// `values[τ][i] = χ_τ(g)` for `g` in the `i`-th regular class.
    pub values: Vec<Vec<Cyclotomic>>,
    /// `central[τ][i] = ω_τ(k_i) = |C_i|·χ_τ(C_i)/d_τ`.
    pub central: Vec<Vec<Cyclotomic>>,
    /// Largest deviation from orthonormality before snapping.
    pub float_orthonormality_error: f64,
    pub seed: u64,
    pub attempts: usize,
}

impl TwistedCharacterTable {
    pub fn cocycle(&self) -> &Cocycle {
        &self.psi
    }

    pub fn center(&self) -> &CenterBasis {
        &self.center
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.structure
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Position of a group conjugacy class among the regular classes.
    pub fn regular_index(&self, class: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.class == class)
    }

    pub fn trivial_index(&self) -> Option<usize> {
        (0..self.len()).find(|&t| self.values[t].iter().all(Cyclotomic::is_one))
    }
}

pub fn character_table(psi: &Cocycle) -> Result<TwistedCharacterTable, AlgebraError> {
    character_table_with(psi, &SpectralOptions::default())
}

type Cmat = DMatrix<Complex64>;

pub fn character_table_with(psi: &Cocycle, opts: &SpectralOptions) -> Result<TwistedCharacterTable, AlgebraError> {
    let group = psi.group().clone();
    let order = group.order() as f64;
    let center = center_basis(psi)?;
    let structure = structure_constants(psi, &center)?;
    let t = center.dimension();
    let sizes: Vec<f64> = center.sizes.iter().map(|&s| s as f64).collect();

    // Multiplication by k_i in the orthonormal basis k_l/√|C_l| is normal.
    let b: Vec<Cmat> = (0..t)
        .map(|i| {
            Cmat::from_fn(t, t, |l, j| {
                structure.get(i, j, l).to_complex() * (sizes[l].sqrt() / sizes[j].sqrt())
            })
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut omegas = None;
    let mut attempts = 0;
    let mut reason = String::new();
    while attempts < opts.max_attempts {
        attempts += 1;
        match split_once(&b, &mut rng, opts.tolerance) {
            Ok(w) => {
                omegas = Some(w);
                break;
            }
            Err(r) => reason = r,
        }
    }
    let omegas = omegas.ok_or(AlgebraError::SpectralFailure { attempts, reason })?;

    // Degrees and approximate characters.
    let mut approx = Vec::with_capacity(t);
    let mut degrees = Vec::with_capacity(t);
    for w in &omegas {
        let s: f64 = w.iter().zip(&sizes).map(|(x, c)| x.norm_sqr() / c).sum();
        let d = (order / s).sqrt();
        let dr = d.round();
        if (d - dr).abs() > opts.snap_tolerance || dr < 1.0 {
            return Err(AlgebraError::NonIntegralDegree { value: d });
        }
        degrees.push(dr as u64);
        approx.push(w.iter().zip(&sizes).map(|(x, c)| x * dr / c).collect::<Vec<Complex64>>());
    }
    let mut float_err: f64 = 0.0;
    for a in 0..t {
        for bb in 0..t {
            let ip: Complex64 = (0..t).map(|i| approx[a][i] * approx[bb][i].conj() * sizes[i]).sum::<Complex64>() / order;
            let want = if a == bb { 1.0 } else { 0.0 };
            float_err = float_err.max((ip - want).norm());
        }
    }
    if float_err > opts.tolerance.max(1e-6) {
        return Err(AlgebraError::Verification(format!("orthonormality error {float_err:e} before snapping")));
    }

    let classes: Vec<RegularClass> = center
        .classes
        .iter()
        .zip(&center.sizes)
        .map(|(&c, &size)| {
            let rep = group.classes().representatives[c];
            RegularClass { class: c, representative: rep, label: group.label(rep).to_string(), size }
        })
        .collect();

    let mut values = Vec::with_capacity(t);
    for (tau, row) in approx.iter().enumerate() {
        let exact: Result<Vec<Cyclotomic>, AlgebraError> = (0..t)
            .map(|i| {
                snap_value(psi, &classes, row, classes[i].representative, degrees[tau], opts.snap_tolerance)
                    .ok_or(AlgebraError::Inexact { irrep: tau, class: i })
            })
            .collect();
        values.push(exact?);
    }

    // Sort by degree, then by values class by class.
    let mut order_idx: Vec<usize> = (0..t).collect();
    let key = |tau: usize| {
        let vals: Vec<(i64, i64)> = approx[tau]
            .iter()
            .map(|z| ((-z.re * 1e6).round() as i64, (-z.im * 1e6).round() as i64))
            .collect();
        (degrees[tau], vals)
    };
    order_idx.sort_by_key(|&tau| key(tau));
    let degrees: Vec<u64> = order_idx.iter().map(|&k| degrees[k]).collect();
    let values: Vec<Vec<Cyclotomic>> = order_idx.iter().map(|&k| values[k].clone()).collect();

    let central: Vec<Vec<Cyclotomic>> = values
        .iter()
        .zip(&degrees)
        .map(|(row, &d)| {
            row.iter()
                .zip(&center.sizes)
                .map(|(x, &c)| x.scale(&Rational::new(c as i64, d as i64)))
                .collect()
        })
        .collect();

    let table = TwistedCharacterTable {
        psi: psi.clone(),
        center,
        structure,
        classes,
        degrees,
        values,
        central,
        float_orthonormality_error: float_err,
        seed: opts.seed,
        attempts,
    };
    verify_exact(&table)?;
    Ok(table)
}

/// One random Hermitian combination of the `B_i` and the joint eigenvalues
/// read off its eigenvectors.
fn split_once(b: &[Cmat], rng: &mut ChaCha8Rng, tol: f64) -> Result<Vec<Vec<Complex64>>, String> {
    let t = b.len();
    let mut h = Cmat::zeros(t, t);
    let i_unit = Complex64::new(0.0, 1.0);
    for bi in b {
        let r: f64 = rng.random_range(-1.0..1.0);
        let s: f64 = rng.random_range(-1.0..1.0);
        let adj = bi.adjoint();
        h += (bi + &adj) * Complex64::new(r, 0.0) + (bi - &adj) * (i_unit * s);
    }
    let eig = h.symmetric_eigen();
    let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    let spread = ev.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    if ev.windows(2).any(|w| w[1] - w[0] < 1e-6 * spread) {
        return Err("eigenvalues of the random combination are not separated".into());
    }
    let mut out = Vec::with_capacity(t);
    for k in 0..t {
        let v = eig.eigenvectors.column(k).into_owned();
        let mut w = Vec::with_capacity(t);
        for bi in b {
            let bv = bi * &v;
            let lambda = v.dotc(&bv);
            let resid = (&bv - &v * lambda).norm();
            if resid > tol * (1.0 + bi.norm()) * 1e2 {
                return Err(format!("joint eigenvector residual {resid:e}"));
            }
            w.push(lambda);
        }
        out.push(w);
    }
    Ok(out)
}

/// Exact `χ(g̃)` from the multiplicities of the eigenvalues of `ρ(g̃)`.
///
/// With `g̃^j = ζ_N^{c_j}·(g^j)~` and `g̃^o = ζ_N^{c_o}` for `o = ord(g)`, the
/// eigenvalues are `β·ζ_o^k` where `β = ζ_{No}^{c_o}`, and their
/// multiplicities are recovered by a discrete Fourier transform over the
/// powers of `g`.
fn snap_value(
    psi: &Cocycle,
    classes: &[RegularClass],
    row: &[Complex64],
    g: usize,
    degree: u64,
    snap_tol: f64,
) -> Option<Cyclotomic> {
    let group = psi.group();
    let n = psi.order();
    let o = group.element_order(g) as u64;
    let value_at = |x: usize| -> Complex64 {
        let c = group.class_of(x);
        classes.iter().position(|rc| rc.class == c).map(|i| row[i]).unwrap_or_default()
    };
    let mut c = vec![0u64; o as usize + 1];
    let mut power = 0usize;
    for j in 0..o as usize {
        c[j + 1] = (c[j] + psi.exponent(power, g)) % n;
        power = group.mul(power, g);
    }
    let big = n * o;
    let zeta = |k: u64, m: u64| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (k % m) as f64 / m as f64);
    let mut counts = vec![0i64; big as usize];
    let mut total = 0i64;
    for k in 0..o {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut x = 0usize;
        for j in 0..o {
            let chi_j = zeta(c[j as usize], n) * value_at(x);
            // conj(β ζ_o^k)^j = ζ_{No}^{-j(c_o + kN)}
            let phase = (j * ((c[o as usize] + k * n) % big)) % big;
            acc += chi_j * zeta(big - phase, big);
            x = group.mul(x, g);
        }
        acc /= o as f64;
        let m = acc.re.round();
        if (acc - Complex64::new(m, 0.0)).norm() > snap_tol || m < 0.0 {
            return None;
        }
        total += m as i64;
        counts[((c[o as usize] + k * n) % big) as usize] += m as i64;
    }
    if total as u64 != degree {
        return None;
    }
    let exact = Cyclotomic::from_root_counts(&counts, big).reduce_conductor();
    if (exact.to_complex() - value_at(g)).norm() > snap_tol {
        return None;
    }
    Some(exact)
}

fn verify_exact(table: &TwistedCharacterTable) -> Result<(), AlgebraError> {
    let order = table.psi.group().order() as i64;
    let t = table.len();
    let sum_sq: u64 = table.degrees.iter().map(|d| d * d).sum();
    if sum_sq as i64 != order {
        return Err(AlgebraError::Verification(format!("Σ d² = {sum_sq}, expected {order}")));
    }
    for a in 0..t {
        for b in a..t {
            let mut ip = Cyclotomic::zero();
            for i in 0..t {
                let term = table.values[a][i].try_mul(&table.values[b][i].conj())?;
                ip = ip.try_add(&term.scale(&Rational::from_integer(table.classes[i].size as i64)))?;
            }
            let ip = ip.scale(&Rational::new(1, order));
            if ip != Cyclotomic::from_int((a == b) as i64) {
                return Err(AlgebraError::Verification(format!("⟨χ_{a}, χ_{b}⟩ = {ip}")));
            }
        }
    }
    // Central characters are algebra homomorphisms of the center.
    let sc = &table.structure;
    for w in &table.central {
        for i in 0..t {
            for j in i..t {
                let mut rhs = Cyclotomic::zero();
                for (l, wl) in w.iter().enumerate() {
                    let a = sc.get(i, j, l);
                    if !a.is_zero() {
                        rhs = rhs.try_add(&a.try_mul(wl)?)?;
                    }
                }
                if w[i].try_mul(&w[j])? != rhs {
                    return Err(AlgebraError::Verification("central character is not multiplicative".into()));
                }
            }
        }
    }
    Ok(())
}

/// `χ_τ(g)`, zero off the regular classes.
pub fn character_at(table: &TwistedCharacterTable, tau: usize, g: usize) -> Cyclotomic {
    let c = table.psi.group().class_of(g);
    table.regular_index(c).map(|i| table.values[tau][i].clone()).unwrap_or_default()
}

/// The central idempotent `Σ_{τ∈T} e_τ`, written in class sums.
///
/// Coordinates solve `Σ_i x_i ω_τ(k_i) = [τ ∈ T]`; the result is checked to
/// be idempotent through the structure constants.
pub fn central_idempotent_for(table: &TwistedCharacterTable, subset: &[usize]) -> Result<AlgebraElement, AlgebraError> {
    if subset.is_empty() {
        return Err(AlgebraError::EmptySubset);
    }
    let t = table.len();
    if let Some(&bad) = subset.iter().find(|&&tau| tau >= t) {
        return Err(AlgebraError::IndexOutOfRange { index: bad, order: t });
    }
    let m = ExactMatrix::from_rows(table.central.clone())?;
    let rhs: Vec<Cyclotomic> = (0..t).map(|tau| Cyclotomic::from_int(subset.contains(&tau) as i64)).collect();
    let x = match m.solve(&rhs)? {
        Solution::Unique(x) => x,
        _ => return Err(AlgebraError::SingularSystem),
    };
    let sc = &table.structure;
    for l in 0..t {
        let mut sq = Cyclotomic::zero();
        for i in 0..t {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..t {
                let a = sc.get(i, j, l);
                if !x[j].is_zero() && !a.is_zero() {
                    sq = sq.try_add(&x[i].try_mul(&x[j])?.try_mul(a)?)?;
                }
            }
        }
        if sq != x[l] {
            return Err(AlgebraError::Verification("central idempotent is not idempotent".into()));
        }
    }
    let mut e = AlgebraElement::zero();
    for (i, xi) in x.iter().enumerate() {
        e = e.add(&table.center.elements[i].scale(xi));
    }
    Ok(e)
}

/// Multiplicity of `σ` in `V ⊗ τ`, where `V` is an ordinary representation
/// given by its character on every conjugacy class of the group.
pub fn tensor_multiplicity(
    table: &TwistedCharacterTable,
    v_on_classes: &[Cyclotomic],
    tau: usize,
    sigma: usize,
) -> Result<u64, AlgebraError> {
    let group = table.psi.group();
    if v_on_classes.len() != group.classes().len() {
        return Err(AlgebraError::Verification(format!(
            "{} character values for {} classes",
            v_on_classes.len(),
            group.classes().len()
        )));
    }
    let mut sum = Cyclotomic::zero();
    for (i, rc) in table.classes.iter().enumerate() {
        let term = v_on_classes[rc.class].try_mul(&table.values[tau][i])?.try_mul(&table.values[sigma][i].conj())?;
        sum = sum.try_add(&term.scale(&Rational::from_integer(rc.size as i64)))?;
    }
    let m = sum.scale(&Rational::new(1, group.order() as i64));
    match m.as_rational() {
        Some(r) if r.is_integer() && !r.is_negative() => Ok(r.to_i64().expect("small multiplicity") as u64),
        _ => Err(AlgebraError::NonIntegralMultiplicity { value: m.to_string() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycles::{catalog_cocycle, dihedral_class_function_coboundary, CocycleKind};
    use crate::groups::{catalog_group, GroupKind};
    use crate::twisted_algebra::multiply;
    use std::sync::Arc;

    fn group(kind: GroupKind) -> Arc<crate::groups::FiniteGroup> {
        Arc::new(catalog_group(&kind).unwrap())
    }

    #[test]
    fn s3_table() {
        let g = group(GroupKind::Symmetric { n: 3 });
        let table = character_table(&Cocycle::trivial(g.clone())).unwrap();
        assert_eq!(table.degrees, vec![1, 1, 2]);
        assert_eq!(table.trivial_index(), Some(0));
        let t = g.parse_word("s1").unwrap();
        assert_eq!(character_at(&table, 1, t), Cyclotomic::from_int(-1));
        assert_eq!(character_at(&table, 2, t), Cyclotomic::zero());
    }

    #[test]
    fn cyclic_four_has_roots_of_unity() {
        let g = group(GroupKind::Cyclic { n: 4 });
        let table = character_table(&Cocycle::trivial(g.clone())).unwrap();
        assert_eq!(table.degrees, vec![1; 4]);
        let gen = g.generators()[0];
        let mut vals: Vec<Cyclotomic> = (0..4).map(|tau| character_at(&table, tau, gen)).collect();
        vals.sort_by_key(|v| v.to_string());
        let mut want: Vec<Cyclotomic> = (0..4).map(|k| Cyclotomic::root_of_unity(k, 4)).collect();
        want.sort_by_key(|v| v.to_string());
        assert_eq!(vals, want);
    }

    #[test]
    fn twisted_dihedral_has_degree_two_irreps() {
        for m in 2..=4usize {
            let g = group(GroupKind::Dihedral { k: 2 * m });
            let psi = catalog_cocycle(g.clone(), &CocycleKind::DihedralNontrivial { m }).unwrap();
            let psi = psi.twist(&dihedral_class_function_coboundary(&g, m).unwrap()).unwrap();
            let table = character_table(&psi).unwrap();
            assert_eq!(table.degrees, vec![2; m as usize]);
        }
    }

    #[test]
    fn seed_does_not_change_the_table() {
        let g = group(GroupKind::Symmetric { n: 4 });
        let psi = Cocycle::trivial(g);
        let a = character_table_with(&psi, &SpectralOptions { seed: 1, ..Default::default() }).unwrap();
        let b = character_table_with(&psi, &SpectralOptions { seed: 99, ..Default::default() }).unwrap();
        assert_eq!(a.values, b.values);
        assert_eq!(a.degrees, vec![1, 1, 2, 3, 3]);
    }

    #[test]
    fn idempotents_of_s4() {
        let g = group(GroupKind::Symmetric { n: 4 });
        let psi = Cocycle::trivial(g.clone());
        let table = character_table(&psi).unwrap();
        let mut total = AlgebraElement::zero();
        for tau in 0..table.len() {
            let e = central_idempotent_for(&table, &[tau]).unwrap();
            assert_eq!(multiply(&e, &e, &psi).unwrap(), e);
            // e_τ = (d/|G|) Σ χ(g⁻¹) g
            let d = table.degrees[tau] as i64;
            for x in g.elements() {
                let want = character_at(&table, tau, g.inv(x)).scale(&Rational::new(d, 24));
                assert_eq!(e.coefficient(x), want);
            }
            total = total.add(&e);
        }
        assert_eq!(total, AlgebraElement::one());
        let all: Vec<usize> = (0..table.len()).collect();
        assert_eq!(central_idempotent_for(&table, &all).unwrap(), AlgebraElement::one());
    }

    #[test]
    fn standard_tensor_decomposition_in_s3() {
        let g = group(GroupKind::Symmetric { n: 3 });
        let table = character_table(&Cocycle::trivial(g.clone())).unwrap();
        let std: Vec<Cyclotomic> = (0..g.classes().len())
            .map(|c| character_at(&table, 2, g.classes().representatives[c]))
            .collect();
        // V ⊗ V = 1 + sgn + V
        for sigma in 0..3 {
            assert_eq!(tensor_multiplicity(&table, &std, 2, sigma).unwrap(), 1);
        }
        assert_eq!(tensor_multiplicity(&table, &std, 0, 2).unwrap(), 1);
        assert_eq!(tensor_multiplicity(&table, &std, 0, 0).unwrap(), 0);
    }
}
