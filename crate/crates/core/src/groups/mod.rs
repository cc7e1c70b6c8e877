//! Finite groups materialised as Cayley tables.
//!
//! Element `0` is always the identity. Elements carry a word in the group's
//! generators and a printable label; [`FiniteGroup::parse_word`] accepts
//! either a label or any `*`-separated word such as `s1*s2^2`.

mod build;
mod catalog;
mod hom;
mod subgroups;

use std::collections::HashMap;

use serde::Serialize;

pub use build::{build_group, GroupElement, Monomial, Permutation};
pub use catalog::{
    catalog_group, catalog_group_with_cap, direct_product, generalized_symmetric, GeneralizedSymmetricForm, GroupKind,
};
pub use hom::{quotient_hom, GroupHom};
pub use subgroups::{subgroups, Subgroup};

/// Default closure cap for generated groups.
pub const DEFAULT_ORDER_CAP: usize = 5000;
/// Largest group for which subgroup enumeration is attempted.
pub const SUBGROUP_ENUMERATION_BOUND: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("group closure exceeds the order cap of {cap}")]
    CapExceeded { cap: usize },
    #[error("generator {index} is not invertible: {reason}")]
    NonInvertibleGenerator { index: usize, reason: String },
    #[error("generators disagree on their domain: {0}")]
    InconsistentGenerators(String),
    #[error("table is not a group law: {0}")]
    NotAGroup(String),
    #[error("element set is not a subgroup")]
    NotSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group of order {order} exceeds the enumeration bound {bound}")]
    OrderBound { order: usize, bound: usize },
    #[error("unknown element or generator label {0:?}")]
    UnknownLabel(String),
    #[error("invalid catalog parameters: {0}")]
    InvalidParameters(String),
}

/// Partition of a group into conjugacy classes, ordered by representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClasses {
    /// Members of each class, ascending.
    pub classes: Vec<Vec<usize>>,
    /// Least element of each class.
    pub representatives: Vec<usize>,
    /// Class index of every element.
    pub class_of: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn size(&self, class: usize) -> usize {
        self.classes[class].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    labels: Vec<String>,
    words: Vec<Vec<usize>>,
    generators: Vec<usize>,
    generator_names: Vec<String>,
    label_index: HashMap<String, usize>,
    classes: ConjugacyClasses,
}

impl FiniteGroup {
    /// Assembles a group from a multiplication table already known to be a
    /// group law with identity at index 0.
    pub(crate) fn from_parts(
        table: Vec<u32>,
        labels: Vec<String>,
        words: Vec<Vec<usize>>,
        generators: Vec<usize>,
        generator_names: Vec<String>,
    ) -> FiniteGroup {
        let order = labels.len();
        assert_eq!(table.len(), order * order);
        let mut inverse = vec![0u32; order];
        for a in 0..order {
            let b = (0..order)
                .find(|&b| table[a * order + b] == 0)
                .expect("every element has an inverse");
            inverse[a] = b as u32;
        }
        let label_index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        let mut g = FiniteGroup {
            order,
            table,
            inverse,
            labels,
            words,
            generators,
            generator_names,
            label_index,
            classes: ConjugacyClasses { classes: vec![], representatives: vec![], class_of: vec![] },
        };
        g.classes = conjugacy_classes(&g);
        g
    }

    /// Imports an explicit Cayley table, checking the group axioms. Associativity
    /// is checked on every triple for order ≤ 512 and on a deterministic sample
    /// above that.
    pub fn from_table(rows: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<FiniteGroup, GroupError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(GroupError::NotAGroup("table must be square and nonempty".into()));
        }
        if rows.iter().flatten().any(|&x| x >= n) {
            return Err(GroupError::NotAGroup("entry out of range".into()));
        }
        if (0..n).any(|a| rows[0][a] != a || rows[a][0] != a) {
            return Err(GroupError::NotAGroup("element 0 is not the identity".into()));
        }
        let table: Vec<u32> = rows.iter().flatten().map(|&x| x as u32).collect();
        for a in 0..n {
            let mut seen = vec![false; n];
            for b in 0..n {
                let c = table[a * n + b] as usize;
                if seen[c] {
                    return Err(GroupError::NotAGroup(format!("row {a} is not a permutation")));
                }
                seen[c] = true;
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(_) => return Err(GroupError::NotAGroup("label count differs from order".into())),
            None => (0..n).map(|i| if i == 0 { "e".to_string() } else { format!("g{i}") }).collect(),
        };
        let words = (0..n).map(|i| if i == 0 { vec![] } else { vec![i - 1] }).collect();
        let generators: Vec<usize> = (1..n).collect();
        let names = generators.iter().map(|&i| labels[i].clone()).collect();
        let g = FiniteGroup::from_parts(table, labels, words, generators, names);
        g.verify_group_law()?;
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `h g h^{-1}`.
    #[inline]
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(h, g), self.inv(h))
    }

    pub fn pow(&self, g: usize, e: usize) -> usize {
        (0..e).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|g| self.element_order(g))
            .fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Word in the generators (indices into [`Self::generators`]).
    pub fn word(&self, g: usize) -> &[usize] {
        &self.words[g]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.classes.class_of[g]
    }

    /// Resolves a label or a `*`-separated word in generator names, each
    /// factor optionally raised to a non-negative power (`s1^2`).
    pub fn parse_word(&self, text: &str) -> Result<usize, GroupError> {
        let text = text.trim();
        if let Some(&i) = self.label_index.get(text) {
            return Ok(i);
        }
        if text == "e" || text == "1" || text.is_empty() {
            return Ok(0);
        }
        let mut acc = 0;
        for factor in text.split('*') {
            let factor = factor.trim();
            let (name, power) = match factor.split_once('^') {
                Some((n, p)) => {
                    let p: usize = p.trim().parse().map_err(|_| GroupError::UnknownLabel(text.to_string()))?;
                    (n.trim(), p)
                }
                None => (factor, 1),
            };
            let g = match self.generator_names.iter().position(|n| n == name) {
                Some(i) => self.generators[i],
                None => *self.label_index.get(name).ok_or_else(|| GroupError::UnknownLabel(text.to_string()))?,
            };
            acc = self.mul(acc, self.pow(g, power));
        }
        Ok(acc)
    }

    pub fn verify_group_law(&self) -> Result<(), GroupError> {
        let n = self.order;
        for a in 0..n {
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return Err(GroupError::NotAGroup(format!("inverse table wrong at {a}")));
            }
        }
        let check = |a: usize, b: usize, c: usize| -> Result<(), GroupError> {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                Err(GroupError::NotAGroup(format!("associativity fails at ({a}, {b}, {c})")))
            } else {
                Ok(())
            }
        };
        if n <= 512 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            // Deterministic LCG sample of 2^20 triples.
            let mut s: u64 = 0x9E37_79B9_7F4A_7C15;
            for _ in 0..(1 << 20) {
                let mut next = || {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    (s >> 33) as usize % n
                };
                let (a, b, c) = (next(), next(), next());
                check(a, b, c)?;
            }
        }
        Ok(())
    }

    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        centralizer(self, g)
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &x in set {
            if x >= self.order {
                return false;
            }
            member[x] = true;
        }
        member[0] && set.iter().all(|&a| set.iter().all(|&b| member[self.mul(a, self.inv(b))]))
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &x in set {
            member[x] = true;
        }
        set.iter().all(|&k| self.elements().all(|g| member[self.conjugate(k, g)]))
    }

    /// The subgroup on `elements` as a group in its own right, together with
    /// the embedding of its elements into `self`.
    pub fn subgroup_as_group(&self, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        if !self.is_subgroup(elements) {
            return Err(GroupError::NotSubgroup);
        }
        let mut sorted = elements.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        // Greedy generating set in index order.
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for &x in &sorted {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.generated_subgroup(&gens);
            }
        }
        // Breadth-first enumeration by the chosen generators.
        let mut embed = vec![0usize];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut local: HashMap<usize, usize> = HashMap::from([(0, 0)]);
        let mut i = 0;
        while i < embed.len() {
            for (gi, &g) in gens.iter().enumerate() {
                let y = self.mul(embed[i], g);
                if let std::collections::hash_map::Entry::Vacant(e) = local.entry(y) {
                    e.insert(embed.len());
                    let mut w = words[i].clone();
                    w.push(gi);
                    embed.push(y);
                    words.push(w);
                }
            }
            i += 1;
        }
        let n = embed.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = local[&self.mul(embed[a], embed[b])] as u32;
            }
        }
        let labels = embed.iter().map(|&x| self.labels[x].clone()).collect();
        let gen_local = gens.iter().map(|g| local[g]).collect();
        let names = gens.iter().map(|&g| self.labels[g].clone()).collect();
        Ok((FiniteGroup::from_parts(table, labels, words, gen_local, names), embed))
    }

    /// Cayley table rows, for export.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }
}

/// Orbits of the conjugation action; each class is represented by its least index.
pub fn conjugacy_classes(g: &FiniteGroup) -> ConjugacyClasses {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    let mut representatives = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let idx = classes.len();
        let mut members: Vec<usize> = Vec::new();
        for h in 0..n {
            let y = g.conjugate(x, h);
            if class_of[y] == usize::MAX {
                class_of[y] = idx;
                members.push(y);
            }
        }
        members.sort_unstable();
        representatives.push(x);
        classes.push(members);
    }
    ConjugacyClasses { classes, representatives, class_of }
}

/// `{h : hg = gh}`, ascending.
pub fn centralizer(group: &FiniteGroup, g: usize) -> Vec<usize> {
    group.elements().filter(|&h| group.mul(h, g) == group.mul(g, h)).collect()
}

/// Human-readable label for a generator word, compressing runs into powers.
pub(crate) fn word_label(word: &[usize], names: &[String]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < word.len() {
        let mut j = i;
        while j < word.len() && word[j] == word[i] {
            j += 1;
        }
        let run = j - i;
        let name = &names[word[i]];
        parts.push(if run == 1 { name.clone() } else { format!("{name}^{run}") });
        i = j;
    }
    parts.join("*")
}
