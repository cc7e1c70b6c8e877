//! Normalized 2-cocycles `ψ: G × G → μ_N` stored as dense exponent tables.

mod catalog;
mod presentation;

use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::exact::RootOfUnity;
use crate::groups::{FiniteGroup, GroupError};

pub use catalog::{
    admissible_tuples, catalog_cocycle, dihedral_class_function_coboundary, named_coboundary, CocycleKind,
};
pub use presentation::{cocycle_from_presentation, Relation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CocycleError {
    #[error("cocycle table has {got} rows/columns, the group has order {expected}")]
    Shape { expected: usize, got: usize },
    #[error("coboundary must take the value 1 at the identity")]
    CoboundaryNotNormalized,
    #[error("cocycle and group do not match")]
    GroupMismatch,
    #[error("inadmissible cocycle parameters: {0}")]
    Inadmissible(String),
    #[error("catalog cocycle does not apply: {0}")]
    WrongGroup(String),
    #[error("presentation is inconsistent: {0}")]
    Presentation(String),
    #[error("regular set is not closed under conjugation at {0}")]
    NotConjugationClosed(String),
    #[error("unknown coboundary {0:?}")]
    UnknownCoboundary(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A 2-cocycle with values `ζ_N^{k}`, stored as exponents `k` at a common order `N`.
#[derive(Debug, Clone)]
pub struct Cocycle {
    group: Arc<FiniteGroup>,
    order: u64,
    exps: Vec<u32>,
}

/// First failure of the cocycle identity or of normalization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CocycleViolation {
    /// `ψ(e,g) ≠ 1` or `ψ(g,e) ≠ 1`.
    NotNormalized { g: usize },
    /// `ψ(g,h)ψ(gh,k) ≠ ψ(g,hk)ψ(h,k)`.
    Identity { g: usize, h: usize, k: usize },
}

impl Cocycle {
    pub fn trivial(group: Arc<FiniteGroup>) -> Cocycle {
        let n = group.order();
        Cocycle { group, order: 1, exps: vec![0; n * n] }
    }

    /// Builds a cocycle from exponents at order `order`. The order is reduced
    /// to the lcm of the orders of the values actually present.
    pub fn from_exponents(group: Arc<FiniteGroup>, order: u64, exps: Vec<u64>) -> Result<Cocycle, CocycleError> {
        let n = group.order();
        if exps.len() != n * n {
            return Err(CocycleError::Shape { expected: n, got: (exps.len() as f64).sqrt() as usize });
        }
        let roots: Vec<RootOfUnity> = exps.iter().map(|&k| RootOfUnity::new((k % order) as i64, order)).collect();
        Ok(Cocycle::from_roots(group, &roots))
    }

    /// Builds a cocycle from a row-major table of roots of unity.
    pub fn from_table(group: Arc<FiniteGroup>, rows: &[Vec<RootOfUnity>]) -> Result<Cocycle, CocycleError> {
        let n = group.order();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(CocycleError::Shape { expected: n, got: rows.len() });
        }
        let flat: Vec<RootOfUnity> = rows.iter().flatten().copied().collect();
        Ok(Cocycle::from_roots(group, &flat))
    }

    fn from_roots(group: Arc<FiniteGroup>, roots: &[RootOfUnity]) -> Cocycle {
        let order = roots.iter().fold(1u64, |a, r| a.lcm(&r.order()));
        let exps = roots.iter().map(|r| r.exponent_at(order) as u32).collect();
        Cocycle { group, order, exps }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Common order `N` of all values.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&k| k == 0)
    }

    /// `k` with `ψ(g,h) = ζ_N^k`.
    #[inline]
    pub fn exponent(&self, g: usize, h: usize) -> u64 {
        self.exps[g * self.group.order() + h] as u64
    }

    pub fn value(&self, g: usize, h: usize) -> RootOfUnity {
        RootOfUnity::new(self.exponent(g, h) as i64, self.order)
    }

    pub fn table(&self) -> Vec<Vec<RootOfUnity>> {
        let n = self.group.order();
        (0..n).map(|g| (0..n).map(|h| self.value(g, h)).collect()).collect()
    }

    pub fn is_normalized(&self) -> bool {
        self.group.elements().all(|g| self.exponent(0, g) == 0 && self.exponent(g, 0) == 0)
    }

    /// Exhaustive check of normalization and the cocycle identity.
    pub fn validate(&self) -> Result<(), CocycleViolation> {
        validate_cocycle(self)
    }

    /// Exponent of `μ(g;h)`, where `h̃ g̃ h̃⁻¹ = μ(g;h)·(hgh⁻¹)~`.
    pub fn conjugation_exponent(&self, g: usize, h: usize) -> u64 {
        let grp = &self.group;
        let hi = grp.inv(h);
        let n = self.order;
        (self.exponent(h, g) + self.exponent(grp.mul(h, g), hi) + n - self.exponent(h, hi)) % n
    }

    pub fn conjugation_factor(&self, g: usize, h: usize) -> RootOfUnity {
        RootOfUnity::new(self.conjugation_exponent(g, h) as i64, self.order)
    }

    /// `ψ′(g,h) = ψ(g,h)·δ(g)δ(h)/δ(gh)`.
    pub fn twist(&self, delta: &Coboundary) -> Result<Cocycle, CocycleError> {
        twist_by_coboundary(self, delta)
    }

    pub fn same_group(&self, other: &Arc<FiniteGroup>) -> bool {
        Arc::ptr_eq(&self.group, other) || self.group.table_rows() == other.table_rows()
    }
}

pub fn validate_cocycle(psi: &Cocycle) -> Result<(), CocycleViolation> {
    let g = &psi.group;
    let n = psi.order;
    for x in g.elements() {
        if psi.exponent(0, x) != 0 || psi.exponent(x, 0) != 0 {
            return Err(CocycleViolation::NotNormalized { g: x });
        }
    }
    for a in g.elements() {
        for b in g.elements() {
            let ab = g.mul(a, b);
            let lhs0 = psi.exponent(a, b);
            for c in g.elements() {
                let lhs = (lhs0 + psi.exponent(ab, c)) % n;
                let rhs = (psi.exponent(a, g.mul(b, c)) + psi.exponent(b, c)) % n;
                if lhs != rhs {
                    return Err(CocycleViolation::Identity { g: a, h: b, k: c });
                }
            }
        }
    }
    Ok(())
}

/// A map `δ: G → roots of unity` with `δ(e) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coboundary {
    values: Vec<RootOfUnity>,
}

impl Coboundary {
    pub fn new(values: Vec<RootOfUnity>) -> Result<Coboundary, CocycleError> {
        if values.first().is_some_and(|v| !v.is_one()) {
            return Err(CocycleError::CoboundaryNotNormalized);
        }
        Ok(Coboundary { values })
    }

    pub fn trivial(n: usize) -> Coboundary {
        Coboundary { values: vec![RootOfUnity::ONE; n] }
    }

    /// Values given on some elements by label; unlisted elements map to 1.
    pub fn from_labels(group: &FiniteGroup, entries: &[(String, RootOfUnity)]) -> Result<Coboundary, CocycleError> {
        let mut values = vec![RootOfUnity::ONE; group.order()];
        for (label, v) in entries {
            values[group.parse_word(label)?] = *v;
        }
        Coboundary::new(values)
    }

    pub fn value(&self, g: usize) -> RootOfUnity {
        self.values[g]
    }

    pub fn values(&self) -> &[RootOfUnity] {
        &self.values
    }
}

pub fn twist_by_coboundary(psi: &Cocycle, delta: &Coboundary) -> Result<Cocycle, CocycleError> {
    let g = &psi.group;
    if delta.values.len() != g.order() {
        return Err(CocycleError::Shape { expected: g.order(), got: delta.values.len() });
    }
    let n = delta.values.iter().fold(psi.order, |a, r| a.lcm(&r.order()));
    let scale = n / psi.order;
    let d: Vec<u64> = delta.values.iter().map(|r| r.exponent_at(n)).collect();
    let mut exps = Vec::with_capacity(g.order() * g.order());
    for a in g.elements() {
        for b in g.elements() {
            exps.push((psi.exponent(a, b) * scale + d[a] + d[b] + n - d[g.mul(a, b)]) % n);
        }
    }
    Cocycle::from_exponents(g.clone(), n, exps)
}

/// Which elements are ψ-regular, grouped by conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    /// Regular elements, ascending.
    pub regular: Vec<usize>,
    /// Indices of the regular conjugacy classes, ascending.
    pub regular_classes: Vec<usize>,
    /// For each irregular element, some `h` in its centralizer with `ψ(g,h) ≠ ψ(h,g)`.
    pub witnesses: Vec<Option<usize>>,
}

impl RegularityReport {
    pub fn is_regular(&self, g: usize) -> bool {
        self.witnesses[g].is_none()
    }
}

/// `g` is regular iff `ψ(g,h) = ψ(h,g)` for all `h` commuting with `g`.
pub fn regular_classes(psi: &Cocycle) -> Result<RegularityReport, CocycleError> {
    let g = &psi.group;
    let witnesses: Vec<Option<usize>> = g
        .elements()
        .map(|x| {
            g.elements()
                .filter(|&h| g.mul(h, x) == g.mul(x, h))
                .find(|&h| psi.exponent(x, h) != psi.exponent(h, x))
        })
        .collect();
    let classes = g.classes();
    let mut regular_classes = Vec::new();
    for (c, members) in classes.classes.iter().enumerate() {
        let reg = witnesses[members[0]].is_none();
        if let Some(&bad) = members.iter().find(|&&x| witnesses[x].is_none() != reg) {
            return Err(CocycleError::NotConjugationClosed(g.label(bad).to_string()));
        }
        if reg {
            regular_classes.push(c);
        }
    }
    let regular = g.elements().filter(|&x| witnesses[x].is_none()).collect();
    Ok(RegularityReport { regular, regular_classes, witnesses })
}

/// Outcome of the μ-criterion for class-function compatibility.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassFunctionCheck {
    pub compatible: bool,
    /// A regular `g` and some `h` with `μ(g;h) ≠ 1`.
    pub witness: Option<(usize, usize)>,
}

/// True iff `μ(g;h) = 1` for every regular `g` and every `h`. Twisted
/// characters then satisfy `χ(hgh⁻¹) = χ(g)` on regular elements, and they
/// vanish elsewhere, so all of them are class functions.
pub fn is_class_function_compatible(psi: &Cocycle) -> Result<ClassFunctionCheck, CocycleError> {
    let report = regular_classes(psi)?;
    let g = &psi.group;
    for &x in &report.regular {
        if let Some(h) = g.elements().find(|&h| psi.conjugation_exponent(x, h) != 0) {
            return Ok(ClassFunctionCheck { compatible: false, witness: Some((x, h)) });
        }
    }
    Ok(ClassFunctionCheck { compatible: true, witness: None })
}
