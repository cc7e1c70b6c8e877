//! The twisted group algebra `C_ψG` with basis `g̃` and product
//! `g̃ ∘ h̃ = ψ(g,h)·(gh)~`.

mod center;
mod characters;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cocycles::{Cocycle, CocycleError};
use crate::exact::{Cyclotomic, ExactError};

pub use center::{center_basis, center_dimension, structure_constants, CenterBasis, StructureConstants};
pub use characters::{
    central_idempotent_for, character_at, character_table, character_table_with, tensor_multiplicity,
    RegularClass, SpectralOptions, TwistedCharacterTable,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgebraError {
    #[error("element index {index} is outside a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("cocycle is not class-function compatible: μ({g};{h}) ≠ 1")]
    NotClassFunction { g: String, h: String },
    #[error("spectral splitting failed after {attempts} attempts: {reason}")]
    SpectralFailure { attempts: usize, reason: String },
    #[error("degree {value} is not an integer within tolerance")]
    NonIntegralDegree { value: f64 },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("multiplicity {value} is not a non-negative integer")]
    NonIntegralMultiplicity { value: String },
    #[error("character value could not be made exact for irreducible {irrep} at class {class}")]
    Inexact { irrep: usize, class: usize },
    #[error("idempotent system is singular")]
    SingularSystem,
    #[error("empty set of irreducibles")]
    EmptySubset,
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
}

/// A sparse element `Σ a_g g̃` of `C_ψG`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<usize, Cyclotomic>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn one() -> Self {
        AlgebraElement::basis(0)
    }

    pub fn basis(g: usize) -> Self {
        AlgebraElement { terms: BTreeMap::from([(g, Cyclotomic::one())]) }
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, Cyclotomic)>>(terms: I) -> Self {
        let mut out = AlgebraElement::zero();
        for (g, c) in terms {
            out.add_term(g, &c);
        }
        out
    }

    pub fn add_term(&mut self, g: usize, c: &Cyclotomic) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&g) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&g);
        } else {
            self.terms.insert(g, sum);
        }
    }

    pub fn coefficient(&self, g: usize) -> Cyclotomic {
        self.terms.get(&g).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Cyclotomic)> {
        self.terms.iter().map(|(&g, c)| (g, c))
    }

    pub fn support(&self) -> Vec<usize> {
        self.terms.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c);
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.scale(&Cyclotomic::from_int(-1)))
    }

    pub fn scale(&self, s: &Cyclotomic) -> AlgebraElement {
        AlgebraElement::from_terms(self.terms().map(|(g, c)| (g, c * s)))
    }
}

impl Serialize for AlgebraElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms.iter())
    }
}

/// `ζ_N^k` for `k = 0..N`.
pub(crate) fn root_table(order: u64) -> Vec<Cyclotomic> {
    (0..order).map(|k| Cyclotomic::root_of_unity(k, order)).collect()
}

/// Bilinear extension of `g̃ ∘ h̃ = ψ(g,h)·(gh)~`.
pub fn multiply(a: &AlgebraElement, b: &AlgebraElement, psi: &Cocycle) -> Result<AlgebraElement, AlgebraError> {
    let group = psi.group();
    let n = group.order();
    for g in a.terms.keys().chain(b.terms.keys()) {
        if *g >= n {
            return Err(AlgebraError::IndexOutOfRange { index: *g, order: n });
        }
    }
    let roots = root_table(psi.order());
    let mut out = AlgebraElement::zero();
    for (&g, x) in &a.terms {
        for (&h, y) in &b.terms {
            let c = x.try_mul(y)?.try_mul(&roots[psi.exponent(g, h) as usize])?;
            out.add_term(group.mul(g, h), &c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycles::{catalog_cocycle, CocycleKind};
    use crate::groups::{catalog_group, GroupKind};
    use std::sync::Arc;

    #[test]
    fn identity_is_neutral() {
        let g = Arc::new(catalog_group(&GroupKind::Dihedral { k: 4 }).unwrap());
        let psi = catalog_cocycle(g.clone(), &CocycleKind::DihedralNontrivial { m: 2 }).unwrap();
        for x in g.elements() {
            let b = AlgebraElement::basis(x);
            assert_eq!(multiply(&AlgebraElement::one(), &b, &psi).unwrap(), b);
            assert_eq!(multiply(&b, &AlgebraElement::one(), &psi).unwrap(), b);
        }
    }

    #[test]
    fn trivial_cocycle_is_group_algebra() {
        let g = Arc::new(catalog_group(&GroupKind::Symmetric { n: 3 }).unwrap());
        let psi = Cocycle::trivial(g.clone());
        for x in g.elements() {
            for y in g.elements() {
                let p = multiply(&AlgebraElement::basis(x), &AlgebraElement::basis(y), &psi).unwrap();
                assert_eq!(p, AlgebraElement::basis(g.mul(x, y)));
            }
        }
    }

    #[test]
    fn dihedral_s1_squared() {
        let g = Arc::new(catalog_group(&GroupKind::Dihedral { k: 4 }).unwrap());
        let psi = catalog_cocycle(g.clone(), &CocycleKind::DihedralNontrivial { m: 2 }).unwrap();
        let s1 = AlgebraElement::basis(g.parse_word("s1").unwrap());
        assert_eq!(multiply(&s1, &s1, &psi).unwrap(), AlgebraElement::one());
    }

    #[test]
    fn product_is_associative() {
        let g = Arc::new(catalog_group(&GroupKind::Dihedral { k: 6 }).unwrap());
        let psi = catalog_cocycle(g.clone(), &CocycleKind::DihedralNontrivial { m: 3 }).unwrap();
        let a = AlgebraElement::from_terms([(1, Cyclotomic::from_int(2)), (5, Cyclotomic::root_of_unity(1, 3))]);
        let b = AlgebraElement::from_terms([(2, Cyclotomic::one()), (7, Cyclotomic::from_int(-1))]);
        let c = AlgebraElement::from_terms([(3, Cyclotomic::root_of_unity(1, 4)), (11, Cyclotomic::one())]);
        let left = multiply(&multiply(&a, &b, &psi).unwrap(), &c, &psi).unwrap();
        let right = multiply(&a, &multiply(&b, &c, &psi).unwrap(), &psi).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn out_of_range_index_rejected() {
        let g = Arc::new(catalog_group(&GroupKind::Cyclic { n: 2 }).unwrap());
        let psi = Cocycle::trivial(g);
        assert!(multiply(&AlgebraElement::basis(5), &AlgebraElement::one(), &psi).is_err());
    }

    #[test]
    fn zero_terms_are_dropped() {
        let mut a = AlgebraElement::basis(1);
        a.add_term(1, &Cyclotomic::from_int(-1));
        assert!(a.is_zero());
    }
}
