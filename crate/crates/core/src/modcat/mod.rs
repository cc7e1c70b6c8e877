//! Blocks of `Rep(G,ψ)` as a module category over `Rep(W)` for a surjection
//! `π: G → W`, their matching to pairs `(H,ζ)`, and the parameter transfer.

mod matching;
mod transfer;

use serde::Serialize;

use crate::cocycles::CocycleError;
use crate::exact::{Cyclotomic, ExactError};
use crate::groups::{GroupError, GroupHom};
use crate::symplectic::{SymplecticAction, SymplecticError};
use crate::twisted_algebra::{
    central_idempotent_for, character_at, tensor_multiplicity, AlgebraElement, AlgebraError, TwistedCharacterTable,
};

pub use matching::{
    compute_alpha, default_candidates, dihedral_candidate, match_block, AlphaEntry, AlphaTable, Candidate, HClassRef,
    MatchResult,
};
pub use transfer::{
    descend_action, restrict_action, transfer_parameters, verify_morita, MoritaEntry, MoritaReport,
    TransferredParameter, TransferredValue,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModcatError {
    #[error("the quotient map is not surjective")]
    NotSurjective,
    #[error("character table does not belong to the {0} group")]
    TableMismatch(&'static str),
    #[error("fusion matrix for the trivial representation is not the identity")]
    TrivialFusion,
    #[error("no candidate (H,ζ) matches block {block}: {diagnostics}")]
    NoMatch { block: usize, diagnostics: String },
    #[error("α-system is inconsistent over {w_class} at {g_class}")]
    AlphaInconsistent { w_class: String, g_class: String },
    #[error("α-system over {w_class} has no unique solution")]
    AlphaNotUnique { w_class: String },
    #[error("dimension ratio is not constant over the block")]
    DimensionRatio,
    #[error("character of block member {member} is nonzero at {element}, which lies over no matched class")]
    VanishingFails { member: usize, element: String },
    #[error("parameter is not constant on conjugacy classes")]
    ParameterNotClassConstant,
    #[error("transferred parameter is nonzero on {0}, which is not a ζ-regular reflection of H")]
    UnsupportedTransfer(String),
    #[error("the kernel of π does not act trivially on U (at {0})")]
    ActionDoesNotDescend(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
}

/// `Ξ_V` for each irreducible `V` of `W`: `(Ξ_V)[j][r]` is the multiplicity of
/// the `r`-th simple in `π*V ⊗ (j-th simple)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FusionAction {
    pub matrices: Vec<Vec<Vec<u64>>>,
}

impl FusionAction {
    pub fn simples(&self) -> usize {
        self.matrices.first().map_or(0, Vec::len)
    }
}

/// Character of each irreducible of `W` read on the conjugacy classes of the
/// group mapped by `map` (class representative to element of `W`).
pub(crate) fn pulled_back(w_table: &TwistedCharacterTable, reps: &[usize], map: impl Fn(usize) -> usize) -> Vec<Vec<Cyclotomic>> {
    (0..w_table.len())
        .map(|v| reps.iter().map(|&r| character_at(w_table, v, map(r))).collect())
        .collect()
}

pub(crate) fn fusion_from(
    table: &TwistedCharacterTable,
    characters: &[Vec<Cyclotomic>],
) -> Result<FusionAction, ModcatError> {
    let t = table.len();
    let mut matrices = Vec::with_capacity(characters.len());
    for v in characters {
        let mut m = vec![vec![0u64; t]; t];
        for (j, row) in m.iter_mut().enumerate() {
            for (r, entry) in row.iter_mut().enumerate() {
                *entry = tensor_multiplicity(table, v, j, r)?;
            }
        }
        matrices.push(m);
    }
    Ok(FusionAction { matrices })
}

pub(crate) fn check_tables(
    g_table: &TwistedCharacterTable,
    pi: &GroupHom,
    w_table: &TwistedCharacterTable,
) -> Result<(), ModcatError> {
    if !g_table.cocycle().same_group(pi.source()) {
        return Err(ModcatError::TableMismatch("source"));
    }
    if !w_table.cocycle().same_group(pi.target()) || !w_table.cocycle().is_trivial() {
        return Err(ModcatError::TableMismatch("target"));
    }
    if !pi.is_surjective() {
        return Err(ModcatError::NotSurjective);
    }
    Ok(())
}

pub fn fusion_action(
    g_table: &TwistedCharacterTable,
    pi: &GroupHom,
    w_table: &TwistedCharacterTable,
) -> Result<FusionAction, ModcatError> {
    check_tables(g_table, pi, w_table)?;
    let g = pi.source();
    let chars = pulled_back(w_table, &g.classes().representatives, |x| pi.apply(x));
    let fusion = fusion_from(g_table, &chars)?;
    let triv = w_table.trivial_index().ok_or(ModcatError::TrivialFusion)?;
    let t = fusion.simples();
    for j in 0..t {
        for r in 0..t {
            if fusion.matrices[triv][j][r] != (j == r) as u64 {
                return Err(ModcatError::TrivialFusion);
            }
        }
    }
    Ok(fusion)
}

/// One summand of `Rep(G,ψ)` over `Rep(W)`.
#[derive(Debug, Clone, Serialize)]
pub struct Block {
    pub index: usize,
    /// Indices of irreducibles in the G-table.
    pub members: Vec<usize>,
    pub idempotent: AlgebraElement,
    /// `Ξ_V` restricted to the members, in member order.
    pub fusion: Vec<Vec<Vec<u64>>>,
}

/// Coordinates of a central element in the class sums of the table.
pub(crate) fn central_coordinates(table: &TwistedCharacterTable, e: &AlgebraElement) -> Vec<Cyclotomic> {
    table.classes.iter().map(|c| e.coefficient(c.representative)).collect()
}

pub(crate) fn central_product(
    table: &TwistedCharacterTable,
    x: &[Cyclotomic],
    y: &[Cyclotomic],
) -> Result<Vec<Cyclotomic>, ExactError> {
    let sc = table.structure_constants();
    let t = x.len();
    let mut out = vec![Cyclotomic::zero(); t];
    for i in (0..t).filter(|&i| !x[i].is_zero()) {
        for j in (0..t).filter(|&j| !y[j].is_zero()) {
            let xy = x[i].try_mul(&y[j])?;
            for (l, o) in out.iter_mut().enumerate() {
                let a = sc.get(i, j, l);
                if !a.is_zero() {
                    *o = o.try_add(&xy.try_mul(a)?)?;
                }
            }
        }
    }
    Ok(out)
}

/// Connected components of the graph joining `τ` and `σ` when some `π*V ⊗ τ`
/// contains `σ`, with their central idempotents.
pub fn decompose_blocks(
    g_table: &TwistedCharacterTable,
    pi: &GroupHom,
    w_table: &TwistedCharacterTable,
) -> Result<Vec<Block>, ModcatError> {
    let fusion = fusion_action(g_table, pi, w_table)?;
    let t = g_table.len();
    let mut component: Vec<usize> = (0..t).collect();
    fn root(c: &mut [usize], mut x: usize) -> usize {
        while c[x] != x {
            c[x] = c[c[x]];
            x = c[x];
        }
        x
    }
    for m in &fusion.matrices {
        for (j, row) in m.iter().enumerate() {
            for (r, &mult) in row.iter().enumerate() {
                if mult > 0 {
                    let (a, b) = (root(&mut component, j), root(&mut component, r));
                    component[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut seen = std::collections::BTreeMap::new();
    for tau in 0..t {
        let r = root(&mut component, tau);
        let idx = *seen.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[idx].push(tau);
    }

    let mut blocks = Vec::with_capacity(groups.len());
    let mut coords = Vec::with_capacity(groups.len());
    for (index, members) in groups.into_iter().enumerate() {
        let idempotent = central_idempotent_for(g_table, &members)?;
        coords.push(central_coordinates(g_table, &idempotent));
        let restricted = fusion
            .matrices
            .iter()
            .map(|m| members.iter().map(|&j| members.iter().map(|&r| m[j][r]).collect()).collect())
            .collect();
        blocks.push(Block { index, members, idempotent, fusion: restricted });
    }

    // Σ e_i = 1 and e_i e_j = 0.
    let mut total = AlgebraElement::zero();
    for b in &blocks {
        total = total.add(&b.idempotent);
    }
    if total != AlgebraElement::one() {
        return Err(ModcatError::Verification("block idempotents do not sum to 1".into()));
    }
    for i in 0..coords.len() {
        for j in i + 1..coords.len() {
            if central_product(g_table, &coords[i], &coords[j])?.iter().any(|c| !c.is_zero()) {
                return Err(ModcatError::Verification(format!("block idempotents {i} and {j} are not orthogonal")));
            }
        }
    }
    Ok(blocks)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub stable: bool,
    /// `U ⊗ τ` has no constituent outside the block.
    pub tensor_closed: bool,
    /// `e·x = x·e` in `H_c` for every basis vector `x`.
    pub idempotent_commutes: bool,
}

/// Whether the block is closed under `U ⊗ –` and its idempotent commutes with
/// `U` inside `H_c`: `e·x − x·e = Σ_g a_g (ρ(g)x − x) ⊗ g̃`.
pub fn block_is_u_stable(
    block: &Block,
    g_table: &TwistedCharacterTable,
    action: &SymplecticAction,
) -> Result<StabilityReport, ModcatError> {
    if !g_table.cocycle().same_group(action.group()) {
        return Err(ModcatError::TableMismatch("acting"));
    }
    let u = action.character_on_classes();
    let mut tensor_closed = true;
    'outer: for &tau in &block.members {
        for sigma in (0..g_table.len()).filter(|s| !block.members.contains(s)) {
            if tensor_multiplicity(g_table, &u, tau, sigma)? > 0 {
                tensor_closed = false;
                break 'outer;
            }
        }
    }
    let dim = action.dimension();
    let mut idempotent_commutes = true;
    'basis: for i in 0..dim {
        let x = crate::symplectic::unit_vector(dim, i);
        for (g, a) in block.idempotent.terms() {
            let moved = action.apply(g, &x);
            if moved.iter().zip(&x).any(|(p, q)| !(a * &(p - q)).is_zero()) {
                idempotent_commutes = false;
                break 'basis;
            }
        }
    }
    Ok(StabilityReport { stable: tensor_closed && idempotent_commutes, tensor_closed, idempotent_commutes })
}
