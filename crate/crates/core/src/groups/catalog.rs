use serde::{Deserialize, Serialize};

use crate::exact::{ExactMatrix, RootOfUnity};

use super::build::{build_group, GroupElement, Monomial, Permutation};
use super::{word_label, FiniteGroup, GroupError, DEFAULT_ORDER_CAP};

/// Group constructors understood by scenario files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GroupKind {
    Cyclic { n: usize },
    /// Symmetries of the `k`-gon, order `2k`, generated by reflections `s1`, `s2`.
    Dihedral { k: usize },
    Symmetric { n: usize },
    /// `S_n ⋉ (Z/m)^n` with generators `s1..s{n-1}`, `w1..wn`.
    GeneralizedSymmetric { m: usize, n: usize },
    Product { factors: Vec<GroupKind> },
    /// Permutations in 1-based cycle notation on `degree` points.
    Generators {
        degree: usize,
        permutations: Vec<String>,
        #[serde(default)]
        names: Option<Vec<String>>,
    },
    /// Invertible matrices of finite order (monomial ones are closed faster).
    Matrices {
        matrices: Vec<ExactMatrix>,
        #[serde(default)]
        names: Option<Vec<String>>,
    },
    Table {
        rows: Vec<Vec<usize>>,
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
}

fn order_of(kind: &GroupKind) -> Option<u128> {
    match kind {
        GroupKind::Cyclic { n } => Some(*n as u128),
        GroupKind::Dihedral { k } => Some(2 * *k as u128),
        GroupKind::Symmetric { n } => (1..=*n as u128).try_fold(1u128, |a, b| a.checked_mul(b)),
        GroupKind::GeneralizedSymmetric { m, n } => {
            let fact = (1..=*n as u128).try_fold(1u128, |a, b| a.checked_mul(b))?;
            fact.checked_mul((*m as u128).checked_pow(*n as u32)?)
        }
        GroupKind::Product { factors } => factors.iter().try_fold(1u128, |a, f| a.checked_mul(order_of(f)?)),
        _ => None,
    }
}

/// Builds a group from its catalog description.
pub fn catalog_group(kind: &GroupKind) -> Result<FiniteGroup, GroupError> {
    catalog_group_with_cap(kind, DEFAULT_ORDER_CAP)
}

pub fn catalog_group_with_cap(kind: &GroupKind, cap: usize) -> Result<FiniteGroup, GroupError> {
    if let Some(order) = order_of(kind) {
        if order > cap as u128 {
            return Err(GroupError::CapExceeded { cap });
        }
    }
    match kind {
        GroupKind::Cyclic { n } => cyclic(*n, cap),
        GroupKind::Dihedral { k } => dihedral(*k, cap),
        GroupKind::Symmetric { n } => symmetric(*n, cap),
        GroupKind::GeneralizedSymmetric { m, n } => Ok(generalized_symmetric(*m, *n, cap)?.0),
        GroupKind::Product { factors } => {
            let mut acc = cyclic(1, cap)?;
            for f in factors {
                let g = catalog_group_with_cap(f, cap)?;
                acc = if acc.order() == 1 && acc.generators().is_empty() { g } else { direct_product(&acc, &g, cap)? };
            }
            Ok(acc)
        }
        GroupKind::Generators { degree, permutations, names } => {
            let perms = permutations
                .iter()
                .map(|p| Permutation::from_cycles(p, *degree))
                .collect::<Result<Vec<_>, _>>()?;
            FiniteGroup::from_permutations(&perms, names.clone(), cap)
        }
        GroupKind::Matrices { matrices, names } => {
            let monomial = matrices.iter().all(|m| Monomial::from_matrix(m).is_ok());
            if monomial {
                FiniteGroup::from_monomial_matrices(matrices, names.clone(), cap)
            } else {
                FiniteGroup::from_matrices(matrices, names.clone(), cap)
            }
        }
        GroupKind::Table { rows, labels } => FiniteGroup::from_table(rows.clone(), labels.clone()),
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Mod(usize, usize);

impl GroupElement for Mod {
    fn compose(&self, other: &Self) -> Self {
        Mod((self.0 + other.0) % self.1, self.1)
    }
}

fn cyclic(n: usize, cap: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameters("cyclic group of order 0".into()));
    }
    let gens = if n == 1 { vec![] } else { vec![Mod(1, n)] };
    let names: Vec<String> = gens.iter().map(|_| "g".to_string()).collect();
    Ok(build_group(Mod(0, n), &gens, &names, cap)?.0)
}

/// `r^i s^f` in the dihedral group of order `2k`.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Dih {
    i: usize,
    flip: bool,
    k: usize,
}

impl GroupElement for Dih {
    fn compose(&self, other: &Self) -> Self {
        let j = if self.flip { (self.k - other.i) % self.k } else { other.i };
        Dih { i: (self.i + j) % self.k, flip: self.flip ^ other.flip, k: self.k }
    }
}

fn dihedral(k: usize, cap: usize) -> Result<FiniteGroup, GroupError> {
    if k == 0 {
        return Err(GroupError::InvalidParameters("dihedral group of the 0-gon".into()));
    }
    // s1 = s, s2 = s·r so that s1·s2 = r.
    let s1 = Dih { i: 0, flip: true, k };
    let s2 = Dih { i: (k - 1) % k, flip: true, k };
    let names = vec!["s1".to_string(), "s2".to_string()];
    Ok(build_group(Dih { i: 0, flip: false, k }, &[s1, s2], &names, cap)?.0)
}

fn adjacent_transpositions(n: usize) -> Vec<Permutation> {
    (0..n.saturating_sub(1))
        .map(|i| {
            let mut p: Vec<u32> = (0..n as u32).collect();
            p.swap(i, i + 1);
            Permutation(p)
        })
        .collect()
}

fn symmetric(n: usize, cap: usize) -> Result<FiniteGroup, GroupError> {
    let gens = adjacent_transpositions(n);
    let names: Vec<String> = (1..n).map(|i| format!("s{i}")).collect();
    Ok(build_group(Permutation::identity(n), &gens, &names, cap)?.0)
}

/// Normal form of an element of `G(m,1,n)`: `w1^a1 ⋯ wn^an · σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedSymmetricForm {
    pub exponents: Vec<usize>,
    /// Index of `σ` in `S_n` built with adjacent transpositions `s1..s{n-1}`.
    pub sigma: usize,
}

/// `G(m,1,n)` as monomial matrices `D_a P_σ`, together with the normal form of
/// every element and the group `S_n` that indexes the `σ` parts.
pub fn generalized_symmetric(
    m: usize,
    n: usize,
    cap: usize,
) -> Result<(FiniteGroup, Vec<GeneralizedSymmetricForm>, FiniteGroup), GroupError> {
    if m == 0 || n == 0 {
        return Err(GroupError::InvalidParameters(format!("G({m},1,{n}) needs m, n >= 1")));
    }
    let (sn, perms) = build_group(Permutation::identity(n), &adjacent_transpositions(n), &names_s(n), cap)?;
    let mut gens = Vec::new();
    for p in adjacent_transpositions(n) {
        gens.push(Monomial { perm: p.0, scalars: vec![RootOfUnity::ONE; n] });
    }
    for j in 0..n {
        let mut w = Monomial::identity(n);
        w.scalars[j] = RootOfUnity::new(1, m as u64);
        gens.push(w);
    }
    let mut names = names_s(n);
    names.extend((1..=n).map(|j| format!("w{j}")));
    let (group, elements) = build_group(Monomial::identity(n), &gens, &names, cap)?;
    let mut forms = Vec::with_capacity(elements.len());
    let mut labels = Vec::with_capacity(elements.len());
    for e in &elements {
        // Column j of D_a P_σ is ζ^{a_σ(j)} e_σ(j).
        let mut exponents = vec![0usize; n];
        for j in 0..n {
            exponents[e.perm[j] as usize] = e.scalars[j].exponent_at(m as u64) as usize;
        }
        let sigma = perms.iter().position(|p| p.0 == e.perm).expect("σ lies in S_n");
        let mut parts: Vec<String> = exponents
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(j, &a)| if a == 1 { format!("w{}", j + 1) } else { format!("w{}^{a}", j + 1) })
            .collect();
        if sigma != 0 {
            parts.push(word_label(sn.word(sigma), &names_s(n)));
        }
        labels.push(if parts.is_empty() { "e".to_string() } else { parts.join("*") });
        forms.push(GeneralizedSymmetricForm { exponents, sigma });
    }
    Ok((group.with_labels(labels), forms, sn))
}

fn names_s(n: usize) -> Vec<String> {
    (1..n).map(|i| format!("s{i}")).collect()
}

/// `G1 × G2` with element `(a, b)` at index `a·|G2| + b`.
pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup, cap: usize) -> Result<FiniteGroup, GroupError> {
    let (n1, n2) = (g1.order(), g2.order());
    let n = n1 * n2;
    if n > cap {
        return Err(GroupError::CapExceeded { cap });
    }
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = (g1.mul(a / n2, b / n2) * n2 + g2.mul(a % n2, b % n2)) as u32;
        }
    }
    let clash = g1.generator_names().iter().any(|x| g2.generator_names().contains(x));
    let rename = |names: &[String], suffix: &str| -> Vec<String> {
        names.iter().map(|x| if clash { format!("{x}_{suffix}") } else { x.clone() }).collect()
    };
    let mut names = rename(g1.generator_names(), "1");
    names.extend(rename(g2.generator_names(), "2"));
    let k1 = g1.generators().len();
    let mut generators: Vec<usize> = g1.generators().iter().map(|&x| x * n2).collect();
    generators.extend(g2.generators().iter().copied());
    let words: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            let mut w = g1.word(x / n2).to_vec();
            w.extend(g2.word(x % n2).iter().map(|&i| i + k1));
            w
        })
        .collect();
    let labels = words.iter().map(|w| word_label(w, &names)).collect();
    Ok(FiniteGroup::from_parts(table, labels, words, generators, names))
}

impl FiniteGroup {
    pub(crate) fn with_labels(mut self, labels: Vec<String>) -> FiniteGroup {
        assert_eq!(labels.len(), self.order);
        self.label_index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        self.labels = labels;
        self
    }
}
