use std::collections::BTreeMap;

use serde::Serialize;

use crate::cocycles::Cocycle;
use crate::exact::Cyclotomic;
use crate::twisted_algebra::{multiply, AlgebraElement};

use super::{
    sra_commutator_rhs, symplectic_reflections, unit_vector, ReflectionParameter, SymplecticAction, SymplecticError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Letter {
    X(usize),
    G(usize),
}

type Word = Vec<Letter>;
type Combination = BTreeMap<Word, Cyclotomic>;

/// One term `c · x_{i₁}⋯x_{i_k} · g̃` of a normal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalTerm {
    pub monomial: Vec<usize>,
    pub element: String,
    pub coefficient: Cyclotomic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PbwCertificate {
    /// `g̃·R(x,y) − R(gx,gy)·g̃ ≠ 0` for basis vectors `x`, `y`.
    Equivariance { element: String, x: usize, y: usize, residual: AlgebraElement },
    /// The two reductions of `z·y·x` disagree; `residual` is their difference.
    Overlap { triple: [usize; 3], residual: Vec<NormalTerm> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PbwOutcome {
    pub passed: bool,
    pub basis_order: Vec<usize>,
    pub equivariance_checks: usize,
    pub overlaps_checked: usize,
    pub certificate: Option<PbwCertificate>,
}

struct Rewriter<'a> {
    action: &'a SymplecticAction,
    psi: &'a Cocycle,
    roots: Vec<Cyclotomic>,
    rank: Vec<usize>,
    /// `rhs[i][j]` for `rank[i] < rank[j]`: `x_j x_i = x_i x_j + rhs[i][j]`.
    rhs: Vec<Vec<AlgebraElement>>,
}

fn add_to(comb: &mut Combination, word: Word, c: &Cyclotomic) {
    if c.is_zero() {
        return;
    }
    let word: Word = word.into_iter().filter(|l| *l != Letter::G(0)).collect();
    let sum = match comb.get(&word) {
        Some(old) => old + c,
        None => c.clone(),
    };
    if sum.is_zero() {
        comb.remove(&word);
    } else {
        comb.insert(word, sum);
    }
}

impl Rewriter<'_> {
    fn reducible_at(&self, w: &[Letter], i: usize) -> bool {
        match (w[i], w[i + 1]) {
            (Letter::G(_), _) => true,
            (Letter::X(a), Letter::X(b)) => self.rank[a] > self.rank[b],
            (Letter::X(_), Letter::G(_)) => false,
        }
    }

    /// One rewriting step at position `i`, scaled by `coeff`.
    fn step(&self, w: &[Letter], i: usize, coeff: &Cyclotomic, out: &mut Combination) {
        let (pre, post) = (&w[..i], &w[i + 2..]);
        let splice = |mid: &[Letter]| -> Word { pre.iter().chain(mid).chain(post).copied().collect() };
        let group = self.action.group();
        match (w[i], w[i + 1]) {
            (Letter::G(g), Letter::G(h)) => {
                let c = coeff * &self.roots[self.psi.exponent(g, h) as usize];
                add_to(out, splice(&[Letter::G(group.mul(g, h))]), &c);
            }
            (Letter::G(g), Letter::X(a)) => {
                let m = self.action.matrix(g);
                for k in 0..self.action.dimension() {
                    let entry = &m[(k, a)];
                    if !entry.is_zero() {
                        add_to(out, splice(&[Letter::X(k), Letter::G(g)]), &(coeff * entry));
                    }
                }
            }
            (Letter::X(a), Letter::X(b)) => {
                add_to(out, splice(&[Letter::X(b), Letter::X(a)]), coeff);
                for (s, c) in self.rhs[b][a].terms() {
                    add_to(out, splice(&[Letter::G(s)]), &(coeff * c));
                }
            }
            (Letter::X(_), Letter::G(_)) => unreachable!("normal pair"),
        }
    }

    fn normal_form(&self, mut pending: Combination) -> Combination {
        let mut done = Combination::new();
        while let Some((w, c)) = pending.pop_first() {
            match (0..w.len().saturating_sub(1)).find(|&i| self.reducible_at(&w, i)) {
                None => add_to(&mut done, w, &c),
                Some(i) => {
                    let mut next = Combination::new();
                    self.step(&w, i, &c, &mut next);
                    for (w2, c2) in next {
                        add_to(&mut pending, w2, &c2);
                    }
                }
            }
        }
        done
    }

    fn terms(&self, comb: &Combination) -> Vec<NormalTerm> {
        let group = self.action.group();
        comb.iter()
            .map(|(w, c)| {
                let mut monomial = Vec::new();
                let mut element = 0;
                for l in w {
                    match *l {
                        Letter::X(a) => monomial.push(a),
                        Letter::G(g) => element = g,
                    }
                }
                NormalTerm { monomial, element: group.label(element).into(), coefficient: c.clone() }
            })
            .collect()
    }
}

/// Checks flatness of `H_c(G,U,ψ)` by the diamond lemma.
///
/// With the rules `y·x → x·y + R(x,y)` for basis vectors out of order and
/// `g̃·x → (ρ(g)x)·g̃`, the overlaps `g̃·y·x` resolve iff the relation set is
/// equivariant (checked directly for every `g`) and the overlaps `z·y·x`
/// for `z > y > x` are resolved by reducing both ways. Group overlaps
/// resolve by the cocycle identity.
pub fn pbw_diamond_check(
    action: &SymplecticAction,
    psi: &Cocycle,
    c: &ReflectionParameter,
    basis_order: Option<&[usize]>,
) -> Result<PbwOutcome, SymplecticError> {
    let dim = action.dimension();
    let order: Vec<usize> = basis_order.map_or_else(|| (0..dim).collect(), <[usize]>::to_vec);
    let mut sorted = order.clone();
    sorted.sort_unstable();
    if sorted != (0..dim).collect::<Vec<_>>() {
        return Err(SymplecticError::BasisOrder(dim));
    }
    let mut rank = vec![0; dim];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let reflections = symplectic_reflections(action, psi)?;
    c.check_support(action.group(), &reflections)?;
    let basis: Vec<Vec<Cyclotomic>> = (0..dim).map(|i| unit_vector(dim, i)).collect();
    let mut outcome =
        PbwOutcome { passed: true, basis_order: order.clone(), equivariance_checks: 0, overlaps_checked: 0, certificate: None };

    let group = action.group();
    for g in group.elements() {
        let gt = AlgebraElement::basis(g);
        for i in 0..dim {
            for j in i + 1..dim {
                let r = sra_commutator_rhs(action, &reflections, c, &basis[i], &basis[j])?;
                let moved = sra_commutator_rhs(action, &reflections, c, &action.apply(g, &basis[i]), &action.apply(g, &basis[j]))?;
                let residual = multiply(&gt, &r, psi)?.sub(&multiply(&moved, &gt, psi)?);
                outcome.equivariance_checks += 1;
                if !residual.is_zero() {
                    outcome.passed = false;
                    outcome.certificate =
                        Some(PbwCertificate::Equivariance { element: group.label(g).into(), x: i, y: j, residual });
                    return Ok(outcome);
                }
            }
        }
    }

    let mut rhs = vec![vec![AlgebraElement::zero(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            if rank[i] < rank[j] {
                rhs[i][j] = sra_commutator_rhs(action, &reflections, c, &basis[i], &basis[j])?;
            }
        }
    }
    let rewriter = Rewriter { action, psi, roots: crate::twisted_algebra::root_table(psi.order()), rank, rhs };
    for zr in 0..dim {
        for yr in 0..zr {
            for xr in 0..yr {
                let (z, y, x) = (order[zr], order[yr], order[xr]);
                let word = vec![Letter::X(z), Letter::X(y), Letter::X(x)];
                let one = Cyclotomic::one();
                let mut left = Combination::new();
                rewriter.step(&word, 0, &one, &mut left);
                let mut right = Combination::new();
                rewriter.step(&word, 1, &one, &mut right);
                let left = rewriter.normal_form(left);
                let mut diff = rewriter.normal_form(right);
                for (w, c) in left {
                    add_to(&mut diff, w, &-c);
                }
                outcome.overlaps_checked += 1;
                if !diff.is_empty() {
                    outcome.passed = false;
                    outcome.certificate =
                        Some(PbwCertificate::Overlap { triple: [z, y, x], residual: rewriter.terms(&diff) });
                    return Ok(outcome);
                }
            }
        }
    }
    Ok(outcome)
}
