use std::sync::Arc;

use serde::Serialize;

use crate::cocycles::{catalog_cocycle, dihedral_class_function_coboundary, Cocycle, CocycleKind};
use crate::exact::{Cyclotomic, ExactMatrix, Rational, Solution};
use crate::groups::{catalog_group, subgroups, FiniteGroup, GroupHom, GroupKind};
use crate::twisted_algebra::{character_at, character_table, TwistedCharacterTable};

use super::{check_tables, fusion_action, fusion_from, pulled_back, Block, ModcatError};

/// A pair `(H,ζ)` with `H ⊆ W`.
#[derive(Debug, Clone)]
pub struct Candidate {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    /// `embedding[h]` is the element of `W` for the local element `h`.
    pub embedding: Vec<usize>,
    pub zeta: Cocycle,
}

impl Candidate {
    pub fn trivial(w: &FiniteGroup, elements: &[usize], name: impl Into<String>) -> Result<Self, ModcatError> {
        let (h, embedding) = w.subgroup_as_group(elements)?;
        let group = Arc::new(h);
        Ok(Candidate { name: name.into(), zeta: Cocycle::trivial(group.clone()), group, embedding })
    }

    /// A candidate whose cocycle is built on the subgroup as a group in its own right.
    pub fn with_cocycle(
        w: &FiniteGroup,
        elements: &[usize],
        name: impl Into<String>,
        zeta: impl FnOnce(&Arc<FiniteGroup>) -> Result<Cocycle, ModcatError>,
    ) -> Result<Self, ModcatError> {
        let (h, embedding) = w.subgroup_as_group(elements)?;
        let group = Arc::new(h);
        let zeta = zeta(&group)?;
        if !zeta.same_group(&group) {
            return Err(ModcatError::TableMismatch("candidate"));
        }
        Ok(Candidate { name: name.into(), group, embedding, zeta })
    }
}

fn subgroup_name(w: &FiniteGroup, elements: &[usize]) -> String {
    let labels: Vec<&str> = elements.iter().map(|&x| w.label(x)).collect();
    format!("<{}>", labels.join(","))
}

/// The nontrivial catalog cocycle, made class-function compatible, if `H` is
/// dihedral of order `4m`. The isomorphism sends the catalog generators
/// `s1, s2` to involutions `a, b` with `ab` of order `2m`.
pub fn dihedral_candidate(w: &FiniteGroup, elements: &[usize]) -> Result<Option<Candidate>, ModcatError> {
    let (h, embedding) = w.subgroup_as_group(elements)?;
    let n = h.order();
    if n % 4 != 0 {
        return Ok(None);
    }
    let m = n / 4;
    let d = catalog_group(&GroupKind::Dihedral { k: 2 * m })?;
    let involutions: Vec<usize> = h.elements().filter(|&x| x != 0 && h.element_order(x) == 2).collect();
    for &a in &involutions {
        for &b in &involutions {
            if a == b || h.element_order(h.mul(a, b)) != 2 * m || h.generated_subgroup(&[a, b]).len() != n {
                continue;
            }
            let images = [a, b];
            let iso: Vec<usize> = d
                .elements()
                .map(|x| d.word(x).iter().fold(0, |acc, &l| h.mul(acc, images[l])))
                .collect();
            let mut hit = vec![false; n];
            iso.iter().for_each(|&y| hit[y] = true);
            if !hit.iter().all(|&x| x) {
                continue;
            }
            let d = Arc::new(d);
            let psi = catalog_cocycle(d.clone(), &CocycleKind::DihedralNontrivial { m })?;
            let psi = psi.twist(&dihedral_class_function_coboundary(&d, m)?)?;
            let mut inverse = vec![0; n];
            for (x, &y) in iso.iter().enumerate() {
                inverse[y] = x;
            }
            let h = Arc::new(h);
            let exps = (0..n * n).map(|k| psi.exponent(inverse[k / n], inverse[k % n])).collect();
            let zeta = Cocycle::from_exponents(h.clone(), psi.order(), exps)?;
            // The transport is a cocycle only if iso is a homomorphism.
            if zeta.validate().is_err() || (0..n).any(|x| (0..n).any(|y| iso[d.mul(x, y)] != h.mul(iso[x], iso[y]))) {
                return Ok(None);
            }
            let name = format!("{} dihedral_nontrivial(m={m})", subgroup_name(w, &embedding));
            return Ok(Some(Candidate { name, group: h, embedding, zeta }));
        }
    }
    Ok(None)
}

/// Subgroup conjugacy representatives of `W`, each with the trivial cocycle
/// and, when dihedral of order divisible by 4, the class-function form of the
/// nontrivial catalog cocycle. Ordered by subgroup order.
pub fn default_candidates(w: &FiniteGroup) -> Result<Vec<Candidate>, ModcatError> {
    let mut out = Vec::new();
    for s in subgroups(w)?.into_iter().filter(|s| s.is_representative) {
        out.push(Candidate::trivial(w, &s.elements, format!("{} trivial", subgroup_name(w, &s.elements)))?);
        if let Some(c) = dihedral_candidate(w, &s.elements)? {
            out.push(c);
        }
    }
    Ok(out)
}

/// An H-class inside a matched W-class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HClassRef {
    /// Index among the ζ-regular classes of the H-table.
    pub index: usize,
    pub label: String,
    pub size: usize,
}

/// `α_{C̃}(C_i^j)` for one G-class `C̃` over the W-class `C_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaEntry {
    pub w_class: usize,
    pub w_label: String,
    pub g_class: usize,
    pub g_label: String,
    pub g_size: usize,
    pub h_classes: Vec<HClassRef>,
    pub alpha: Vec<Cyclotomic>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaTable {
    /// `dim M / dim F(M)`, common to the block.
    pub alpha_e: Rational,
    pub entries: Vec<AlphaEntry>,
    /// W-classes meeting `H` in ζ-regular elements.
    pub matched_w_classes: Vec<usize>,
    /// Some `C_i` has G-classes over it with different α.
    pub varies_across_classes: bool,
}

impl AlphaTable {
    pub fn entry(&self, g_class: usize) -> Option<&AlphaEntry> {
        self.entries.iter().find(|e| e.g_class == g_class)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MatchResult {
    pub block: usize,
    pub candidate: String,
    #[serde(skip)]
    pub h_group: Arc<FiniteGroup>,
    #[serde(skip)]
    pub embedding: Vec<usize>,
    #[serde(skip)]
    pub zeta: Cocycle,
    #[serde(skip)]
    pub h_table: TwistedCharacterTable,
    #[serde(skip)]
    pub pi: GroupHom,
    pub h_elements: Vec<String>,
    /// Block members, in order.
    pub members: Vec<usize>,
    /// `bijection[a]` is the H-simple matched with `members[a]`.
    pub bijection: Vec<usize>,
    /// Every permutation intertwining the fusion matrices, lexicographic.
    pub all_bijections: Vec<Vec<usize>>,
    pub alpha: AlphaTable,
}

impl MatchResult {
    /// The same match under another intertwining bijection, with α recomputed.
    pub fn with_bijection(&self, g_table: &TwistedCharacterTable, f: &[usize]) -> Result<MatchResult, ModcatError> {
        if !self.all_bijections.iter().any(|b| b == f) {
            return Err(ModcatError::Verification(format!("{f:?} does not intertwine the fusion matrices")));
        }
        let alpha = compute_alpha(g_table, &self.pi, &self.members, &self.h_table, &self.embedding, f)?;
        Ok(MatchResult { bijection: f.to_vec(), alpha, ..self.clone() })
    }
}

fn intertwiners(g_fusion: &[Vec<Vec<u64>>], h_fusion: &[Vec<Vec<u64>>]) -> Vec<Vec<usize>> {
    let k = g_fusion.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut f = Vec::with_capacity(k);
    let mut used = vec![false; k];
    fn extend(
        g: &[Vec<Vec<u64>>],
        h: &[Vec<Vec<u64>>],
        f: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let a = f.len();
        if a == used.len() {
            out.push(f.clone());
            return;
        }
        for cand in 0..used.len() {
            if used[cand] {
                continue;
            }
            f.push(cand);
            let ok = g.iter().zip(h).all(|(gv, hv)| {
                (0..=a).all(|b| gv[a][b] == hv[f[a]][f[b]] && gv[b][a] == hv[f[b]][f[a]])
            });
            if ok {
                used[cand] = true;
                extend(g, h, f, used, out);
                used[cand] = false;
            }
            f.pop();
        }
    }
    extend(g_fusion, h_fusion, &mut f, &mut used, &mut out);
    out
}

/// Solves the α-systems of one block against `(H,ζ)` under the bijection
/// `f`, and checks that block characters vanish over unmatched W-classes.
pub fn compute_alpha(
    g_table: &TwistedCharacterTable,
    pi: &GroupHom,
    members: &[usize],
    h_table: &TwistedCharacterTable,
    embedding: &[usize],
    f: &[usize],
) -> Result<AlphaTable, ModcatError> {
    let g = pi.source();
    let w = pi.target();
    let h = h_table.cocycle().group();

    let ratio = |a: usize| Rational::new(g_table.degrees[members[a]] as i64, h_table.degrees[f[a]] as i64);
    let alpha_e = ratio(0);
    if (1..members.len()).any(|a| ratio(a) != alpha_e) {
        return Err(ModcatError::DimensionRatio);
    }

    let mut matched: Vec<(usize, Vec<HClassRef>)> = Vec::new();
    for (index, rc) in h_table.classes.iter().enumerate() {
        let wc = w.class_of(embedding[rc.representative]);
        let entry = HClassRef { index, label: h.label(rc.representative).into(), size: rc.size };
        match matched.iter_mut().find(|(c, _)| *c == wc) {
            Some((_, list)) => list.push(entry),
            None => matched.push((wc, vec![entry])),
        }
    }
    matched.sort_by_key(|(c, _)| *c);

    let mut entries = Vec::new();
    let mut varies = false;
    for (wc, h_classes) in &matched {
        let w_label = w.label(w.classes().representatives[*wc]).to_string();
        let cols: Vec<Vec<Cyclotomic>> = h_classes
            .iter()
            .map(|hc| f.iter().map(|&fa| h_table.values[fa][hc.index].clone()).collect())
            .collect();
        let v = ExactMatrix::from_columns(&cols)?;
        let mut first: Option<Vec<Cyclotomic>> = None;
        for (gc, gmembers) in g.classes().classes.iter().enumerate() {
            let rep = gmembers[0];
            if w.class_of(pi.apply(rep)) != *wc {
                continue;
            }
            let u: Vec<Cyclotomic> = members.iter().map(|&m| character_at(g_table, m, rep)).collect();
            let alpha = match v.solve(&u)? {
                Solution::Unique(x) => x,
                Solution::Family { .. } => return Err(ModcatError::AlphaNotUnique { w_class: w_label }),
                Solution::Inconsistent => {
                    return Err(ModcatError::AlphaInconsistent { w_class: w_label, g_class: g.label(rep).into() })
                }
            };
            match &first {
                Some(prev) if *prev != alpha && u.iter().any(|x| !x.is_zero()) => varies = true,
                None if u.iter().any(|x| !x.is_zero()) => first = Some(alpha.clone()),
                _ => {}
            }
            entries.push(AlphaEntry {
                w_class: *wc,
                w_label: w_label.clone(),
                g_class: gc,
                g_label: g.label(rep).into(),
                g_size: gmembers.len(),
                h_classes: h_classes.clone(),
                alpha,
            });
        }
    }

    let matched_w_classes: Vec<usize> = matched.iter().map(|(c, _)| *c).collect();
    for x in g.elements() {
        if matched_w_classes.contains(&w.class_of(pi.apply(x))) {
            continue;
        }
        if let Some(&m) = members.iter().find(|&&m| !character_at(g_table, m, x).is_zero()) {
            return Err(ModcatError::VanishingFails { member: m, element: g.label(x).into() });
        }
    }
    Ok(AlphaTable { alpha_e, entries, matched_w_classes, varies_across_classes: varies })
}

/// Finds the first candidate whose fusion data matches the block under some
/// bijection and whose α-systems are consistent; candidates are tried in the
/// given order and bijections in lexicographic order.
pub fn match_block(
    block: &Block,
    g_table: &TwistedCharacterTable,
    pi: &GroupHom,
    w_table: &TwistedCharacterTable,
    candidates: &[Candidate],
) -> Result<MatchResult, ModcatError> {
    check_tables(g_table, pi, w_table)?;
    let w = pi.target();
    let g_fusion = fusion_action(g_table, pi, w_table)?;
    let block_fusion: Vec<Vec<Vec<u64>>> = g_fusion
        .matrices
        .iter()
        .map(|m| block.members.iter().map(|&j| block.members.iter().map(|&r| m[j][r]).collect()).collect())
        .collect();
    let mut diagnostics = Vec::new();
    for cand in candidates {
        if cand.embedding.iter().any(|&x| x >= w.order()) {
            return Err(ModcatError::TableMismatch("candidate"));
        }
        let h_table = match character_table(&cand.zeta) {
            Ok(t) => t,
            Err(e) => {
                diagnostics.push(format!("{}: {e}", cand.name));
                continue;
            }
        };
        if h_table.len() != block.members.len() {
            diagnostics.push(format!("{}: {} simples", cand.name, h_table.len()));
            continue;
        }
        let reps = &cand.group.classes().representatives;
        let chars = pulled_back(w_table, reps, |x| cand.embedding[x]);
        let h_fusion = fusion_from(&h_table, &chars)?;
        let all = intertwiners(&block_fusion, &h_fusion.matrices);
        if all.is_empty() {
            diagnostics.push(format!("{}: fusion matrices do not intertwine", cand.name));
            continue;
        }
        for f in &all {
            match compute_alpha(g_table, pi, &block.members, &h_table, &cand.embedding, f) {
                Ok(alpha) => {
                    return Ok(MatchResult {
                        block: block.index,
                        candidate: cand.name.clone(),
                        h_group: cand.group.clone(),
                        embedding: cand.embedding.clone(),
                        zeta: cand.zeta.clone(),
                        h_table,
                        pi: pi.clone(),
                        h_elements: cand.embedding.iter().map(|&x| w.label(x).to_string()).collect(),
                        members: block.members.clone(),
                        bijection: f.clone(),
                        all_bijections: all.clone(),
                        alpha,
                    })
                }
                Err(e) => diagnostics.push(format!("{} with F={f:?}: {e}", cand.name)),
            }
        }
    }
    Err(ModcatError::NoMatch {
        block: block.index,
        diagnostics: format!("{} simples; {}", block.members.len(), diagnostics.join("; ")),
    })
}
