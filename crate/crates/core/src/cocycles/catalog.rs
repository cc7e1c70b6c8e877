use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::exact::RootOfUnity;
use crate::groups::{FiniteGroup, DEFAULT_ORDER_CAP};

use super::presentation::{cocycle_from_presentation, Relation};
use super::{Coboundary, Cocycle, CocycleError};

fn one() -> i8 {
    1
}

/// Cocycle families understood by scenario files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CocycleKind {
    Trivial,
    /// On the symmetries of the `2m`-gon: `ψ(r^i s^a, r^j s^b) = ε^{a·j}`
    /// with `r = s1 s2`, `s = s1`, `ε = e^{2πi/2m}`.
    DihedralNontrivial { m: usize },
    /// On `G(m,1,n)`, the class `(γ, λ, μ)` realised by the twisted presentation.
    GeneralizedSymmetric {
        m: usize,
        n: usize,
        #[serde(default = "one")]
        gamma: i8,
        #[serde(default = "one")]
        lambda: i8,
        #[serde(default = "one")]
        mu: i8,
    },
    /// Explicit row-major table.
    Table { rows: Vec<Vec<RootOfUnity>> },
}

/// Realisable `(γ, λ, μ)` for `G(m,1,n)`.
pub fn admissible_tuples(m: usize, n: usize) -> Vec<(i8, i8, i8)> {
    let pm = [1i8, -1];
    let mut out = Vec::new();
    for &gamma in &pm {
        for &lambda in &pm {
            for &mu in &pm {
                let ok = match (m % 2 == 0, n) {
                    (true, n) if n >= 4 => true,
                    (true, 3) => gamma == 1,
                    (true, 2) => gamma == 1 && lambda == 1,
                    (false, n) if n >= 4 => lambda == 1 && mu == 1,
                    _ => gamma == 1 && lambda == 1 && mu == 1,
                };
                if ok {
                    out.push((gamma, lambda, mu));
                }
            }
        }
    }
    out
}

pub fn catalog_cocycle(group: Arc<FiniteGroup>, kind: &CocycleKind) -> Result<Cocycle, CocycleError> {
    match kind {
        CocycleKind::Trivial => Ok(Cocycle::trivial(group)),
        CocycleKind::DihedralNontrivial { m } => dihedral(group, *m),
        CocycleKind::GeneralizedSymmetric { m, n, gamma, lambda, mu } => {
            generalized_symmetric(group, *m, *n, (*gamma, *lambda, *mu))
        }
        CocycleKind::Table { rows } => Cocycle::from_table(group, rows),
    }
}

/// Writes every element of the `2m`-gon group as `(j, a)` with `g = r^j s1^a`.
fn dihedral_coordinates(group: &FiniteGroup, m: usize) -> Result<Vec<(usize, usize)>, CocycleError> {
    let wrong = |why: &str| CocycleError::WrongGroup(format!("expected the symmetries of the {}-gon: {why}", 2 * m));
    if m == 0 || group.order() != 4 * m {
        return Err(wrong("order mismatch"));
    }
    let s1 = group.parse_word("s1").map_err(|_| wrong("no generator s1"))?;
    let s2 = group.parse_word("s2").map_err(|_| wrong("no generator s2"))?;
    if group.mul(s1, s1) != 0 || group.mul(s2, s2) != 0 {
        return Err(wrong("s1, s2 are not involutions"));
    }
    let r = group.mul(s1, s2);
    let mut coords = vec![(usize::MAX, 0); group.order()];
    let mut x = 0;
    for j in 0..2 * m {
        coords[x] = (j, 0);
        coords[group.mul(x, s1)] = (j, 1);
        x = group.mul(x, r);
    }
    if x != 0 || coords.iter().any(|c| c.0 == usize::MAX) {
        return Err(wrong("elements are not all of the form (s1 s2)^j s1^a"));
    }
    Ok(coords)
}

fn dihedral(group: Arc<FiniteGroup>, m: usize) -> Result<Cocycle, CocycleError> {
    let coords = dihedral_coordinates(&group, m)?;
    let n = group.order();
    let mut exps = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            exps.push((coords[a].1 * coords[b].0) as u64);
        }
    }
    Cocycle::from_exponents(group, 2 * m as u64, exps)
}

/// `δ(r^i) = ζ_{4m}^{-i}` for `-m < i ≤ m` and `δ = 1` on reflections. Twisting
/// the dihedral catalog cocycle by `δ` makes `μ(g;h) = 1` for every regular `g`.
pub fn dihedral_class_function_coboundary(group: &FiniteGroup, m: usize) -> Result<Coboundary, CocycleError> {
    let coords = dihedral_coordinates(group, m)?;
    let values = coords
        .iter()
        .map(|&(j, a)| {
            if a == 1 {
                RootOfUnity::ONE
            } else {
                let i = if j <= m { j as i64 } else { j as i64 - 2 * m as i64 };
                RootOfUnity::new(-i, 4 * m as u64)
            }
        })
        .collect();
    Coboundary::new(values)
}

/// Coboundaries shipped by name.
pub fn named_coboundary(group: &FiniteGroup, name: &str) -> Result<Coboundary, CocycleError> {
    match name {
        "dihedral_class_function" => dihedral_class_function_coboundary(group, group.order() / 4),
        "trivial" => Ok(Coboundary::trivial(group.order())),
        _ => Err(CocycleError::UnknownCoboundary(name.to_string())),
    }
}

fn sign(x: i8) -> Result<RootOfUnity, CocycleError> {
    match x {
        1 => Ok(RootOfUnity::ONE),
        -1 => Ok(RootOfUnity::minus_one()),
        _ => Err(CocycleError::Inadmissible(format!("{x} is not ±1"))),
    }
}

fn generalized_symmetric(
    group: Arc<FiniteGroup>,
    m: usize,
    n: usize,
    (gamma, lambda, mu): (i8, i8, i8),
) -> Result<Cocycle, CocycleError> {
    let scalars = (sign(gamma)?, sign(lambda)?, sign(mu)?);
    if !admissible_tuples(m, n).contains(&(gamma, lambda, mu)) {
        return Err(CocycleError::Inadmissible(format!(
            "(γ, λ, μ) = ({gamma}, {lambda}, {mu}) is not realised for G({m},1,{n})"
        )));
    }
    let (reference, forms, sn) = crate::groups::generalized_symmetric(m, n, DEFAULT_ORDER_CAP.max(group.order()))?;
    if reference.table_rows() != group.table_rows() || reference.generator_names() != group.generator_names() {
        return Err(CocycleError::WrongGroup(format!("expected G({m},1,{n}) from the catalog")));
    }
    // Generator indices: s_i ↦ i-1, w_j ↦ n-2+j.
    let t = |i: usize| i - 1;
    let u = |j: usize| n - 2 + j;
    let words: Vec<Vec<usize>> = forms
        .iter()
        .map(|f| {
            let mut w = Vec::new();
            for (j, &a) in f.exponents.iter().enumerate() {
                w.extend(std::iter::repeat_n(u(j + 1), a));
            }
            w.extend(sn.word(f.sigma).iter().copied());
            w
        })
        .collect();

    let (g_s, l_s, m_s) = scalars;
    let rel = |word: Vec<usize>, scalar: RootOfUnity| Relation { word, scalar };
    let power = |x: usize, k: usize| vec![x; k];
    let mut relations = Vec::new();
    for i in 1..n {
        relations.push(rel(vec![t(i), t(i)], RootOfUnity::ONE));
    }
    for j in 1..=n {
        relations.push(rel(power(u(j), m), RootOfUnity::ONE));
    }
    for i in 1..n.saturating_sub(1) {
        relations.push(rel([t(i), t(i + 1)].repeat(3), RootOfUnity::ONE));
    }
    for i in 1..n {
        for k in i + 2..n {
            relations.push(rel([t(i), t(k)].repeat(2), g_s));
        }
    }
    for i in 1..n {
        // t_i u_i t_i = u_{i+1} and t_i u_{i+1} t_i = u_i
        for (a, b) in [(i, i + 1), (i + 1, i)] {
            let mut w = vec![t(i), u(a), t(i)];
            w.extend(power(u(b), m - 1));
            relations.push(rel(w, RootOfUnity::ONE));
        }
        // t_i u_j t_i = λ u_j for j ≠ i, i+1
        for j in (1..=n).filter(|&j| j != i && j != i + 1) {
            let mut w = vec![t(i), u(j), t(i)];
            w.extend(power(u(j), m - 1));
            relations.push(rel(w, l_s));
        }
    }
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            // u_i u_j u_i^{-1} u_j^{-1} = μ
            let mut w = vec![u(i), u(j)];
            w.extend(power(u(i), m - 1));
            w.extend(power(u(j), m - 1));
            relations.push(rel(w, m_s));
        }
    }
    let psi = cocycle_from_presentation(group, &words, &relations)?;
    psi.validate()
        .map_err(|v| CocycleError::Presentation(format!("extracted table is not a cocycle: {v:?}")))?;
    Ok(psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycles::{is_class_function_compatible, regular_classes};
    use crate::groups::{catalog_group, GroupKind};

    fn dihedral_group(m: usize) -> Arc<FiniteGroup> {
        Arc::new(catalog_group(&GroupKind::Dihedral { k: 2 * m }).unwrap())
    }

    #[test]
    fn dihedral_cocycle_is_valid() {
        for m in 1..=4 {
            let g = dihedral_group(m);
            let psi = catalog_cocycle(g, &CocycleKind::DihedralNontrivial { m }).unwrap();
            psi.validate().unwrap();
        }
    }

    #[test]
    fn dihedral_m2_rotations_act_trivially() {
        let g = dihedral_group(2);
        let psi = catalog_cocycle(g.clone(), &CocycleKind::DihedralNontrivial { m: 2 }).unwrap();
        let coords = dihedral_coordinates(&g, 2).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                if coords[a].1 == 0 {
                    assert!(psi.value(a, b).is_one());
                }
            }
        }
        let s1 = g.parse_word("s1").unwrap();
        assert!(psi.value(s1, s1).is_one());
    }

    #[test]
    fn dihedral_regular_classes_are_rotation_pairs() {
        for m in 2..=4 {
            let g = dihedral_group(m);
            let psi = catalog_cocycle(g.clone(), &CocycleKind::DihedralNontrivial { m }).unwrap();
            let report = regular_classes(&psi).unwrap();
            assert_eq!(report.regular_classes.len(), m);
            let r = g.parse_word("s1*s2").unwrap();
            let r_inv = g.parse_word("s2*s1").unwrap();
            for i in 0..m {
                let (a, b) = (g.pow(r, i), g.pow(r_inv, i));
                assert!(report.is_regular(a) && report.is_regular(b));
                assert_eq!(g.class_of(a), g.class_of(b));
            }
            assert!(!report.is_regular(g.pow(r, m)));
            assert!(!report.is_regular(g.parse_word("s1").unwrap()));
            assert!(!report.is_regular(g.parse_word("s2").unwrap()));
        }
    }

    #[test]
    fn dihedral_coboundary_gives_class_function_cocycle() {
        for m in 1..=5 {
            let g = dihedral_group(m);
            let psi = catalog_cocycle(g.clone(), &CocycleKind::DihedralNontrivial { m }).unwrap();
            if m >= 2 {
                assert!(!is_class_function_compatible(&psi).unwrap().compatible);
            }
            let delta = named_coboundary(&g, "dihedral_class_function").unwrap();
            let tw = psi.twist(&delta).unwrap();
            tw.validate().unwrap();
            assert!(is_class_function_compatible(&tw).unwrap().compatible, "m = {m}");
            assert_eq!(regular_classes(&tw).unwrap().regular, regular_classes(&psi).unwrap().regular);
        }
    }

    #[test]
    fn admissibility_table() {
        assert_eq!(admissible_tuples(2, 4).len(), 8);
        assert_eq!(admissible_tuples(3, 4), vec![(1, 1, 1), (-1, 1, 1)]);
        assert_eq!(admissible_tuples(2, 3).len(), 4);
        assert_eq!(admissible_tuples(4, 2), vec![(1, 1, 1), (1, 1, -1)]);
        assert_eq!(admissible_tuples(3, 3), vec![(1, 1, 1)]);
        let g = Arc::new(catalog_group(&GroupKind::GeneralizedSymmetric { m: 3, n: 2 }).unwrap());
        let kind = CocycleKind::GeneralizedSymmetric { m: 3, n: 2, gamma: 1, lambda: 1, mu: -1 };
        assert!(matches!(catalog_cocycle(g, &kind), Err(CocycleError::Inadmissible(_))));
    }

    #[test]
    fn generalized_symmetric_mu_commutator() {
        let g = Arc::new(catalog_group(&GroupKind::GeneralizedSymmetric { m: 2, n: 2 }).unwrap());
        let kind = CocycleKind::GeneralizedSymmetric { m: 2, n: 2, gamma: 1, lambda: 1, mu: -1 };
        let psi = catalog_cocycle(g.clone(), &kind).unwrap();
        let w1 = g.parse_word("w1").unwrap();
        let w2 = g.parse_word("w2").unwrap();
        assert_eq!(psi.value(w1, w2).mul(&psi.value(w2, w1).inv()), RootOfUnity::minus_one());
    }

    #[test]
    fn generalized_symmetric_trivial_class_is_trivial() {
        for (m, n) in [(2, 2), (3, 2), (2, 3)] {
            let g = Arc::new(catalog_group(&GroupKind::GeneralizedSymmetric { m, n }).unwrap());
            let kind = CocycleKind::GeneralizedSymmetric { m, n, gamma: 1, lambda: 1, mu: 1 };
            assert!(catalog_cocycle(g, &kind).unwrap().is_trivial());
        }
    }

    #[test]
    fn generalized_symmetric_relations_hold_for_every_tuple() {
        for (m, n) in [(2, 3), (4, 2), (2, 2)] {
            let g = Arc::new(catalog_group(&GroupKind::GeneralizedSymmetric { m, n }).unwrap());
            for (gamma, lambda, mu) in admissible_tuples(m, n) {
                let kind = CocycleKind::GeneralizedSymmetric { m, n, gamma, lambda, mu };
                catalog_cocycle(g.clone(), &kind).unwrap().validate().unwrap();
            }
        }
    }

    #[test]
    fn wrong_group_rejected() {
        let g = Arc::new(catalog_group(&GroupKind::Symmetric { n: 3 }).unwrap());
        assert!(matches!(
            catalog_cocycle(g, &CocycleKind::DihedralNontrivial { m: 2 }),
            Err(CocycleError::WrongGroup(_))
        ));
    }
}

