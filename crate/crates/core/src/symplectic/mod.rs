//! Symplectic actions, symplectic reflections, the defining relation of
//! `H_c(G,U,ψ)` and its PBW overlap check.

mod pbw;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::cocycles::{regular_classes, Cocycle, CocycleError};
use crate::exact::{Cyclotomic, ExactError, ExactMatrix};
use crate::groups::{FiniteGroup, GroupError};
use crate::twisted_algebra::{character_at, AlgebraElement, AlgebraError, TwistedCharacterTable};

pub use pbw::{pbw_diamond_check, NormalTerm, PbwCertificate, PbwOutcome};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SymplecticError {
    #[error("form must be a square matrix of even size, got {rows}x{cols}")]
    FormShape { rows: usize, cols: usize },
    #[error("form is not skew-symmetric and invertible")]
    DegenerateForm,
    #[error("expected {expected} matrices, got {got}")]
    MatrixCount { expected: usize, got: usize },
    #[error("matrix for {element} has the wrong shape")]
    MatrixShape { element: String },
    #[error("matrix for {element} does not preserve the symplectic form")]
    NotSymplectic { element: String },
    #[error("matrices do not define a homomorphism at ({g}, {h})")]
    NotHomomorphism { g: String, h: String },
    #[error("h-representation matrix for {element} is singular")]
    SingularInput { element: String },
    #[error("action and cocycle live on different groups")]
    GroupMismatch,
    #[error("parameter is defined on {element}, which is not a ψ-regular symplectic reflection")]
    UnsupportedParameter { element: String },
    #[error("reflection invariant fails at {element}: {reason}")]
    ReflectionInvariant { element: String, reason: String },
    #[error("vector has length {got}, expected {expected}")]
    VectorLength { expected: usize, got: usize },
    #[error("basis order is not a permutation of 0..{0}")]
    BasisOrder(usize),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `U = ℂ^{2n}` with `ω(x,y) = xᵀ Ω y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymplecticSpace {
    omega: ExactMatrix,
}

impl SymplecticSpace {
    pub fn new(omega: ExactMatrix) -> Result<Self, SymplecticError> {
        let (r, c) = (omega.rows(), omega.cols());
        if r != c || r % 2 != 0 {
            return Err(SymplecticError::FormShape { rows: r, cols: c });
        }
        let skew = omega.transpose().add(&omega).is_zero();
        if !skew || omega.rank()? != r {
            return Err(SymplecticError::DegenerateForm);
        }
        Ok(SymplecticSpace { omega })
    }

    /// `Ω = [[0, I], [−I, 0]]`, so `ω(e_i, e_{n+i}) = 1`.
    pub fn standard(n: usize) -> Self {
        let mut omega = ExactMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            omega[(i, n + i)] = Cyclotomic::one();
            omega[(n + i, i)] = Cyclotomic::from_int(-1);
        }
        SymplecticSpace { omega }
    }

    /// `Ω = [[0, −I], [I, 0]]` on `h ⊕ h*`, so `ω((x,f),(y,g)) = f(y) − g(x)`.
    pub fn cherednik(n: usize) -> Self {
        let mut omega = ExactMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            omega[(i, n + i)] = Cyclotomic::from_int(-1);
            omega[(n + i, i)] = Cyclotomic::one();
        }
        SymplecticSpace { omega }
    }

    pub fn dimension(&self) -> usize {
        self.omega.rows()
    }

    pub fn gram(&self) -> &ExactMatrix {
        &self.omega
    }

    pub fn form(&self, x: &[Cyclotomic], y: &[Cyclotomic]) -> Cyclotomic {
        bilinear(&self.omega, x, y)
    }
}

pub(crate) fn bilinear(m: &ExactMatrix, x: &[Cyclotomic], y: &[Cyclotomic]) -> Cyclotomic {
    let my = m.mul_vec(y);
    x.iter().zip(&my).map(|(a, b)| a * b).sum()
}

/// `ρ: G → Sp(U)`, possibly with a kernel.
#[derive(Debug, Clone, Serialize)]
pub struct SymplecticAction {
    #[serde(skip)]
    group: Arc<FiniteGroup>,
    space: SymplecticSpace,
    #[serde(skip)]
    matrices: Vec<ExactMatrix>,
    kernel: Vec<usize>,
}

impl SymplecticAction {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }

    pub fn dimension(&self) -> usize {
        self.space.dimension()
    }

    pub fn matrix(&self, g: usize) -> &ExactMatrix {
        &self.matrices[g]
    }

    pub fn kernel(&self) -> &[usize] {
        &self.kernel
    }

    pub fn apply(&self, g: usize, x: &[Cyclotomic]) -> Vec<Cyclotomic> {
        self.matrices[g].mul_vec(x)
    }

    /// The character `g ↦ tr ρ(g)` on each conjugacy class.
    pub fn character_on_classes(&self) -> Vec<Cyclotomic> {
        self.group.classes().representatives.iter().map(|&g| self.matrices[g].trace()).collect()
    }
}

/// Matrices for every element, extended multiplicatively along the words of
/// the group from images of its generators.
pub(crate) fn extend_from_generators(
    group: &FiniteGroup,
    gens: &[ExactMatrix],
) -> Result<Vec<ExactMatrix>, SymplecticError> {
    let k = group.generators().len();
    if gens.len() != k {
        return Err(SymplecticError::MatrixCount { expected: k, got: gens.len() });
    }
    let dim = gens.first().map_or(0, ExactMatrix::rows);
    for (i, m) in gens.iter().enumerate() {
        if m.rows() != dim || m.cols() != dim {
            return Err(SymplecticError::MatrixShape { element: group.generator_names()[i].clone() });
        }
    }
    let mut out: Vec<Option<ExactMatrix>> = vec![None; group.order()];
    out[0] = Some(ExactMatrix::identity(dim));
    let mut by_length: Vec<usize> = group.elements().collect();
    by_length.sort_by_key(|&g| group.word(g).len());
    for g in by_length.into_iter().skip(1) {
        let word = group.word(g);
        let (&last, prefix) = word.split_last().expect("non-identity has a word");
        let p = prefix.iter().fold(0, |acc, &x| group.mul(acc, group.generators()[x]));
        let prev = out[p].as_ref().expect("prefixes come first");
        out[g] = Some(prev.try_mul(&gens[last])?);
    }
    Ok(out.into_iter().map(|m| m.expect("every element reached")).collect())
}

/// Validates `ρ` given by generator images: shapes, `ρ(g)ᵀΩρ(g) = Ω` for
/// every element and `ρ(g)ρ(t) = ρ(gt)` for every element `g` and generator
/// `t`, which determines the homomorphism property.
pub fn validate_symplectic_action(
    group: Arc<FiniteGroup>,
    space: SymplecticSpace,
    generator_matrices: &[ExactMatrix],
) -> Result<SymplecticAction, SymplecticError> {
    let dim = space.dimension();
    for (i, m) in generator_matrices.iter().enumerate() {
        if m.rows() != dim || m.cols() != dim {
            return Err(SymplecticError::MatrixShape {
                element: group.generator_names().get(i).cloned().unwrap_or_default(),
            });
        }
    }
    let matrices = extend_from_generators(&group, generator_matrices)?;
    action_from_elements(group, space, matrices)
}

/// As [`validate_symplectic_action`], from one matrix per element.
pub fn action_from_elements(
    group: Arc<FiniteGroup>,
    space: SymplecticSpace,
    matrices: Vec<ExactMatrix>,
) -> Result<SymplecticAction, SymplecticError> {
    let dim = space.dimension();
    if matrices.len() != group.order() {
        return Err(SymplecticError::MatrixCount { expected: group.order(), got: matrices.len() });
    }
    for g in group.elements() {
        let m = &matrices[g];
        if m.rows() != dim || m.cols() != dim {
            return Err(SymplecticError::MatrixShape { element: group.label(g).into() });
        }
        if m.transpose().try_mul(space.gram())?.try_mul(m)? != *space.gram() {
            return Err(SymplecticError::NotSymplectic { element: group.label(g).into() });
        }
    }
    if !matrices[0].is_identity() {
        return Err(SymplecticError::NotHomomorphism { g: "e".into(), h: "e".into() });
    }
    for g in group.elements() {
        for &t in group.generators() {
            if matrices[g].try_mul(&matrices[t])? != matrices[group.mul(g, t)] {
                return Err(SymplecticError::NotHomomorphism {
                    g: group.label(g).into(),
                    h: group.label(t).into(),
                });
            }
        }
    }
    let kernel = group.elements().filter(|&g| matrices[g].is_identity()).collect();
    Ok(SymplecticAction { group, space, matrices, kernel })
}

/// `U = h ⊕ h*` with `g ↦ diag(ρ_h(g), ρ_h(g)^{−ᵀ})`.
pub fn doubled_cherednik_space(
    group: Arc<FiniteGroup>,
    h_generators: &[ExactMatrix],
) -> Result<SymplecticAction, SymplecticError> {
    let h = extend_from_generators(&group, h_generators)?;
    let n = h.first().map_or(0, ExactMatrix::rows);
    let mut matrices = Vec::with_capacity(group.order());
    for (g, a) in h.iter().enumerate() {
        let dual = a
            .inverse()
            .map_err(|_| SymplecticError::SingularInput { element: group.label(g).into() })?
            .transpose();
        let mut m = ExactMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = a[(i, j)].clone();
                m[(n + i, n + j)] = dual[(i, j)].clone();
            }
        }
        matrices.push(m);
    }
    action_from_elements(group, SymplecticSpace::cherednik(n), matrices)
}

/// A symplectic reflection `s` with its projector and form `ω_s`.
#[derive(Debug, Clone, Serialize)]
pub struct ReflectionData {
    pub element: usize,
    /// Projector onto `Im(Id − s)` along `Ker(Id − s)`.
    pub projector: ExactMatrix,
    /// Gram matrix of `ω_s(x,y) = ω(P_s x, P_s y)`.
    pub omega_s: ExactMatrix,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReflectionClass {
    pub class: usize,
    pub representative: usize,
    pub label: String,
    pub size: usize,
    pub members: Vec<ReflectionData>,
}

/// `S_ψ(G,U)` grouped into conjugacy classes, plus the reflection classes
/// dropped for not being ψ-regular.
#[derive(Debug, Clone, Serialize)]
pub struct Reflections {
    pub classes: Vec<ReflectionClass>,
    pub non_regular: Vec<usize>,
}

impl Reflections {
    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn data(&self) -> impl Iterator<Item = &ReflectionData> {
        self.classes.iter().flat_map(|c| c.members.iter())
    }

    pub fn find(&self, element: usize) -> Option<&ReflectionData> {
        self.data().find(|d| d.element == element)
    }
}

fn column_space(m: &ExactMatrix) -> Result<Vec<Vec<Cyclotomic>>, ExactError> {
    let mut basis: Vec<Vec<Cyclotomic>> = Vec::new();
    for j in 0..m.cols() {
        let col = m.column(j);
        let mut trial = basis.clone();
        trial.push(col);
        if ExactMatrix::from_columns(&trial)?.rank()? == trial.len() {
            basis = trial;
        }
    }
    Ok(basis)
}

/// Projector and `ω_s` for one element with `rank(Id − ρ(s)) = 2`, with the
/// invariants of the ω-orthogonal splitting checked exactly.
pub fn reflection_data(action: &SymplecticAction, s: usize) -> Result<ReflectionData, SymplecticError> {
    let dim = action.dimension();
    let label = || action.group.label(s).to_string();
    let fail = |reason: &str| SymplecticError::ReflectionInvariant { element: label(), reason: reason.into() };
    let d = ExactMatrix::identity(dim).sub(&action.matrices[s]);
    let image = column_space(&d)?;
    let kernel = d.nullspace()?;
    if image.len() != 2 || image.len() + kernel.len() != dim {
        return Err(fail("rank(Id − s) is not 2"));
    }
    let omega = action.space.gram();
    for u in &image {
        for k in &kernel {
            if !bilinear(omega, u, k).is_zero() {
                return Err(fail("image and kernel are not ω-orthogonal"));
            }
        }
    }
    let mut cols = image.clone();
    cols.extend(kernel.iter().cloned());
    let b = ExactMatrix::from_columns(&cols)?;
    let mut keep = ExactMatrix::zeros(dim, dim);
    keep[(0, 0)] = Cyclotomic::one();
    keep[(1, 1)] = Cyclotomic::one();
    let projector = b.try_mul(&keep)?.try_mul(&b.inverse()?)?;
    let omega_s = projector.transpose().try_mul(omega)?.try_mul(&projector)?;
    if !omega_s.transpose().add(&omega_s).is_zero() {
        return Err(fail("ω_s is not skew"));
    }
    if omega_s.rank()? != 2 || kernel.iter().any(|k| !omega_s.mul_vec(k).iter().all(Cyclotomic::is_zero)) {
        return Err(fail("radical of ω_s is not Ker(Id − s)"));
    }
    for u in &image {
        for v in &image {
            if bilinear(&omega_s, u, v) != bilinear(omega, u, v) {
                return Err(fail("ω_s differs from ω on Im(Id − s)"));
            }
        }
    }
    Ok(ReflectionData { element: s, projector, omega_s })
}

/// Symplectic reflections among the ψ-regular elements, by exact rank.
pub fn symplectic_reflections(action: &SymplecticAction, psi: &Cocycle) -> Result<Reflections, SymplecticError> {
    if !psi.same_group(&action.group) {
        return Err(SymplecticError::GroupMismatch);
    }
    let g = &action.group;
    let report = regular_classes(psi)?;
    let dim = action.dimension();
    let mut classes = Vec::new();
    let mut non_regular = Vec::new();
    for (c, members) in g.classes().classes.iter().enumerate() {
        let rep = members[0];
        let rank = ExactMatrix::identity(dim).sub(&action.matrices[rep]).rank()?;
        if rank != 2 {
            continue;
        }
        if !report.regular_classes.contains(&c) {
            non_regular.push(c);
            continue;
        }
        let data = members.iter().map(|&s| reflection_data(action, s)).collect::<Result<Vec<_>, _>>()?;
        classes.push(ReflectionClass {
            class: c,
            representative: rep,
            label: g.label(rep).into(),
            size: members.len(),
            members: data,
        });
    }
    Ok(Reflections { classes, non_regular })
}

/// The function `c` on `S_ψ(G,U)`, stored per element; absent elements are 0.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ReflectionParameter {
    values: BTreeMap<usize, Cyclotomic>,
}

impl ReflectionParameter {
    pub fn zero() -> Self {
        ReflectionParameter::default()
    }

    /// Constant on each listed conjugacy class.
    pub fn from_classes(group: &FiniteGroup, classes: &[(usize, Cyclotomic)]) -> Self {
        let mut values = BTreeMap::new();
        for (c, v) in classes {
            for &g in &group.classes().classes[*c] {
                values.insert(g, v.clone());
            }
        }
        ReflectionParameter { values }
    }

    /// Constant on the class of each labelled representative.
    pub fn from_labels(group: &FiniteGroup, entries: &[(String, Cyclotomic)]) -> Result<Self, SymplecticError> {
        let mut classes = Vec::with_capacity(entries.len());
        for (label, v) in entries {
            classes.push((group.class_of(group.parse_word(label)?), v.clone()));
        }
        Ok(ReflectionParameter::from_classes(group, &classes))
    }

    /// Arbitrary values per element; used for negative controls.
    pub fn from_elements(values: BTreeMap<usize, Cyclotomic>) -> Self {
        ReflectionParameter { values }
    }

    pub fn set(&mut self, g: usize, v: Cyclotomic) {
        self.values.insert(g, v);
    }

    pub fn value(&self, g: usize) -> Cyclotomic {
        self.values.get(&g).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &Cyclotomic)> {
        self.values.iter().filter(|(_, v)| !v.is_zero()).map(|(&g, v)| (g, v))
    }

    pub fn is_zero(&self) -> bool {
        self.support().next().is_none()
    }

    pub fn is_class_constant(&self, group: &FiniteGroup) -> bool {
        group.elements().all(|g| self.value(g) == self.value(group.classes().representatives[group.class_of(g)]))
    }

    /// Value on each conjugacy class, read at its representative.
    pub fn class_values(&self, group: &FiniteGroup) -> Vec<Cyclotomic> {
        group.classes().representatives.iter().map(|&r| self.value(r)).collect()
    }

    /// Every nonzero value sits on a ψ-regular reflection.
    pub fn check_support(&self, group: &FiniteGroup, reflections: &Reflections) -> Result<(), SymplecticError> {
        for (g, _) in self.support() {
            if reflections.find(g).is_none() {
                return Err(SymplecticError::UnsupportedParameter { element: group.label(g).into() });
            }
        }
        Ok(())
    }
}

/// `[y,x] = ω(x,y)·1 + Σ_s c(s)·ω_s(x,y)·s̃`.
pub fn sra_commutator_rhs(
    action: &SymplecticAction,
    reflections: &Reflections,
    c: &ReflectionParameter,
    x: &[Cyclotomic],
    y: &[Cyclotomic],
) -> Result<AlgebraElement, SymplecticError> {
    let dim = action.dimension();
    for v in [x, y] {
        if v.len() != dim {
            return Err(SymplecticError::VectorLength { expected: dim, got: v.len() });
        }
    }
    c.check_support(&action.group, reflections)?;
    let mut out = AlgebraElement::zero();
    out.add_term(0, &action.space.form(x, y));
    for (s, value) in c.support() {
        let data = reflections.find(s).expect("support checked");
        out.add_term(s, &(value * &bilinear(&data.omega_s, x, y)));
    }
    Ok(out)
}

/// `Λ_τ(c) = Σ_s c(s)·χ_τ(s)/d_τ`, the scalar by which `Σ c(s) s̃` acts on
/// `τ`; for class-constant `c` this is `Σ_C c(C)|C|χ_τ(C)/d_τ`.
pub fn lambda_scalar(table: &TwistedCharacterTable, tau: usize, c: &ReflectionParameter) -> Result<Cyclotomic, ExactError> {
    let d = table.degrees[tau] as i64;
    let mut sum = Cyclotomic::zero();
    for (s, value) in c.support() {
        sum = sum.try_add(&value.try_mul(&character_at(table, tau, s))?)?;
    }
    Ok(sum.scale(&crate::exact::Rational::new(1, d)))
}

pub(crate) fn unit_vector(dim: usize, i: usize) -> Vec<Cyclotomic> {
    let mut v = vec![Cyclotomic::zero(); dim];
    v[i] = Cyclotomic::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{catalog_group, GroupKind};
    use crate::twisted_algebra::{central_idempotent_for, character_table, multiply};

    fn group(kind: GroupKind) -> Arc<FiniteGroup> {
        Arc::new(catalog_group(&kind).unwrap())
    }

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_ints(rows)
    }

    fn s3_standard() -> Vec<ExactMatrix> {
        vec![m(&[&[-1, 1], &[0, 1]]), m(&[&[1, 0], &[1, -1]])]
    }

    #[test]
    fn identity_action_has_full_kernel() {
        let g = group(GroupKind::Cyclic { n: 3 });
        let a = validate_symplectic_action(g.clone(), SymplecticSpace::standard(1), &[ExactMatrix::identity(2)]).unwrap();
        assert_eq!(a.kernel().len(), 3);
    }

    #[test]
    fn minus_identity_on_the_plane() {
        let g = group(GroupKind::Cyclic { n: 4 });
        let a = validate_symplectic_action(g.clone(), SymplecticSpace::standard(1), &[m(&[&[-1, 0], &[0, -1]])]).unwrap();
        assert_eq!(a.kernel(), &[0, g.parse_word("g^2").unwrap()]);
        let refl = symplectic_reflections(&a, &Cocycle::trivial(g.clone())).unwrap();
        assert_eq!(refl.classes.len(), 2);
        for d in refl.data() {
            assert_eq!(&d.omega_s, a.space().gram());
        }
    }

    #[test]
    fn non_symplectic_generator_rejected() {
        let g = group(GroupKind::Cyclic { n: 2 });
        let err = validate_symplectic_action(g, SymplecticSpace::standard(1), &[m(&[&[1, 0], &[0, -1]])]);
        assert!(matches!(err, Err(SymplecticError::NotSymplectic { .. })));
    }

    #[test]
    fn wrong_relations_rejected() {
        // a generator of order 2 sent to an element of order 4
        let g = group(GroupKind::Cyclic { n: 2 });
        let err = validate_symplectic_action(g, SymplecticSpace::standard(1), &[m(&[&[0, 1], &[-1, 0]])]);
        assert!(matches!(err, Err(SymplecticError::NotHomomorphism { .. })));
    }

    #[test]
    fn s3_double_reflections_are_transpositions() {
        let g = group(GroupKind::Symmetric { n: 3 });
        let a = doubled_cherednik_space(g.clone(), &s3_standard()).unwrap();
        assert!(a.kernel() == [0]);
        let refl = symplectic_reflections(&a, &Cocycle::trivial(g.clone())).unwrap();
        assert_eq!(refl.classes.len(), 1);
        assert_eq!(refl.classes[0].size, 3);
        assert_eq!(g.element_order(refl.classes[0].representative), 2);
    }

    #[test]
    fn sign_rep_double_is_minus_identity() {
        let g = group(GroupKind::Cyclic { n: 2 });
        let a = doubled_cherednik_space(g, &[m(&[&[-1]])]).unwrap();
        assert_eq!(a.matrix(1), &m(&[&[-1, 0], &[0, -1]]));
    }

    #[test]
    fn trivial_h_has_no_reflections() {
        let g = group(GroupKind::Symmetric { n: 3 });
        let one = ExactMatrix::identity(1);
        let a = doubled_cherednik_space(g.clone(), &[one.clone(), one]).unwrap();
        assert!(symplectic_reflections(&a, &Cocycle::trivial(g)).unwrap().is_empty());
    }

    #[test]
    fn commutator_rhs_on_cyclic_four() {
        let g = group(GroupKind::Cyclic { n: 4 });
        let a = validate_symplectic_action(g.clone(), SymplecticSpace::standard(1), &[m(&[&[-1, 0], &[0, -1]])]).unwrap();
        let psi = Cocycle::trivial(g.clone());
        let refl = symplectic_reflections(&a, &psi).unwrap();
        let (s1, s3) = (g.parse_word("g").unwrap(), g.parse_word("g^3").unwrap());
        let c = ReflectionParameter::from_elements(BTreeMap::from([
            (s1, Cyclotomic::from_int(5)),
            (s3, Cyclotomic::from_int(7)),
        ]));
        let x = unit_vector(2, 0);
        let y = unit_vector(2, 1);
        let rhs = sra_commutator_rhs(&a, &refl, &c, &x, &y).unwrap();
        let want = AlgebraElement::from_terms([
            (0, Cyclotomic::one()),
            (s1, Cyclotomic::from_int(5)),
            (s3, Cyclotomic::from_int(7)),
        ]);
        assert_eq!(rhs, want);
        assert!(sra_commutator_rhs(&a, &refl, &c, &x, &x).unwrap().is_zero());
        let zero = sra_commutator_rhs(&a, &refl, &ReflectionParameter::zero(), &x, &y).unwrap();
        assert_eq!(zero, AlgebraElement::one());
    }

    #[test]
    fn parameter_off_reflections_rejected() {
        let g = group(GroupKind::Cyclic { n: 4 });
        let a = validate_symplectic_action(g.clone(), SymplecticSpace::standard(1), &[m(&[&[-1, 0], &[0, -1]])]).unwrap();
        let refl = symplectic_reflections(&a, &Cocycle::trivial(g.clone())).unwrap();
        let c = ReflectionParameter::from_elements(BTreeMap::from([(g.parse_word("g^2").unwrap(), Cyclotomic::one())]));
        let x = unit_vector(2, 0);
        assert!(matches!(
            sra_commutator_rhs(&a, &refl, &c, &x, &x),
            Err(SymplecticError::UnsupportedParameter { .. })
        ));
    }

    #[test]
    fn lambda_matches_central_action() {
        let g = group(GroupKind::Symmetric { n: 3 });
        let psi = Cocycle::trivial(g.clone());
        let a = doubled_cherednik_space(g.clone(), &s3_standard()).unwrap();
        let refl = symplectic_reflections(&a, &psi).unwrap();
        let c = ReflectionParameter::from_classes(&g, &[(refl.classes[0].class, Cyclotomic::from_int(3))]);
        let table = character_table(&psi).unwrap();
        let z = AlgebraElement::from_terms(c.support().map(|(s, v)| (s, v.clone())));
        for tau in 0..table.len() {
            let e = central_idempotent_for(&table, &[tau]).unwrap();
            let lambda = lambda_scalar(&table, tau, &c).unwrap();
            assert_eq!(multiply(&z, &e, &psi).unwrap(), e.scale(&lambda));
        }
        assert_eq!(lambda_scalar(&table, 0, &c).unwrap(), Cyclotomic::from_int(9));
    }
}
