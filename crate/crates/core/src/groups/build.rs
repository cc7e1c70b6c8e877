use std::collections::HashMap;
use std::hash::Hash;

use crate::exact::{ExactMatrix, RootOfUnity};

use super::{word_label, FiniteGroup, GroupError};

/// Anything with an associative product that can be closed under generators.
pub trait GroupElement: Clone + Eq + Hash {
    fn compose(&self, other: &Self) -> Self;
}

/// A permutation of `0..n`, stored as its image list. The product `a·b`
/// applies `b` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(pub Vec<u32>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(GroupError::NonInvertibleGenerator {
                    index: 0,
                    reason: format!("{images:?} is not a bijection of 0..{n}"),
                });
            }
            seen[x] = true;
        }
        Ok(Permutation(images.into_iter().map(|x| x as u32).collect()))
    }

    /// Parses 1-based cycle notation such as `(1 2)(3 4 5)` on `degree` points.
    pub fn from_cycles(text: &str, degree: usize) -> Result<Self, GroupError> {
        let bad = || GroupError::InconsistentGenerators(format!("bad cycle notation {text:?}"));
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = body.find(')').ok_or_else(bad)?;
            let points: Vec<usize> = body[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            for &p in &points {
                if p == 0 || p > degree || seen[p - 1] {
                    return Err(bad());
                }
                seen[p - 1] = true;
            }
            for (i, &p) in points.iter().enumerate() {
                images[p - 1] = points[(i + 1) % points.len()] - 1;
            }
            rest = body[close + 1..].trim_start();
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }
}

impl GroupElement for Permutation {
    fn compose(&self, other: &Self) -> Self {
        Permutation(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }
}

/// A monomial matrix with root-of-unity entries: column `j` has the single
/// nonzero entry `scalars[j]` in row `perm[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub perm: Vec<u32>,
    pub scalars: Vec<RootOfUnity>,
}

impl Monomial {
    pub fn identity(n: usize) -> Self {
        Monomial { perm: (0..n as u32).collect(), scalars: vec![RootOfUnity::ONE; n] }
    }

    pub fn from_matrix(m: &ExactMatrix) -> Result<Self, String> {
        if !m.is_square() {
            return Err("matrix is not square".into());
        }
        let n = m.rows();
        let mut perm = Vec::with_capacity(n);
        let mut scalars = Vec::with_capacity(n);
        let mut row_used = vec![false; n];
        for j in 0..n {
            let nz: Vec<usize> = (0..n).filter(|&i| !m[(i, j)].is_zero()).collect();
            if nz.len() != 1 {
                return Err(format!("column {j} has {} nonzero entries", nz.len()));
            }
            let i = nz[0];
            if row_used[i] {
                return Err(format!("row {i} has more than one nonzero entry"));
            }
            row_used[i] = true;
            let r = m[(i, j)]
                .as_root_of_unity()
                .ok_or_else(|| format!("entry ({i}, {j}) is not a root of unity"))?;
            perm.push(i as u32);
            scalars.push(r);
        }
        Ok(Monomial { perm, scalars })
    }

    pub fn to_matrix(&self) -> ExactMatrix {
        let n = self.perm.len();
        let mut m = ExactMatrix::zeros(n, n);
        for j in 0..n {
            m[(self.perm[j] as usize, j)] = self.scalars[j].to_cyclotomic();
        }
        m
    }
}

impl GroupElement for Monomial {
    fn compose(&self, other: &Self) -> Self {
        let n = self.perm.len();
        let mut perm = Vec::with_capacity(n);
        let mut scalars = Vec::with_capacity(n);
        for j in 0..n {
            let p = other.perm[j] as usize;
            perm.push(self.perm[p]);
            scalars.push(other.scalars[j].mul(&self.scalars[p]));
        }
        Monomial { perm, scalars }
    }
}

/// Matrices with arbitrary cyclotomic entries, for generic matrix groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct MatrixElement(pub ExactMatrix);

impl Hash for MatrixElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for row in self.0.to_rows() {
            for x in row {
                x.reduce_conductor().to_string().hash(state);
            }
        }
    }
}

impl GroupElement for MatrixElement {
    fn compose(&self, other: &Self) -> Self {
        MatrixElement(&self.0 * &other.0)
    }
}

/// Breadth-first closure of `generators` starting from `identity`. Elements
/// are numbered in discovery order with generators tried in the given order,
/// so the word attached to each element is its shortlex-least word.
pub fn build_group<E: GroupElement>(
    identity: E,
    generators: &[E],
    names: &[String],
    cap: usize,
) -> Result<(FiniteGroup, Vec<E>), GroupError> {
    assert_eq!(generators.len(), names.len());
    let ngen = generators.len();
    let mut elements = vec![identity];
    let mut index: HashMap<E, usize> = HashMap::from([(elements[0].clone(), 0)]);
    let mut parent = vec![usize::MAX];
    let mut last = vec![usize::MAX];
    // right[gi][x] = x · generator gi
    let mut right: Vec<Vec<u32>> = vec![Vec::new(); ngen];
    let mut i = 0;
    while i < elements.len() {
        for (gi, g) in generators.iter().enumerate() {
            let y = elements[i].compose(g);
            let j = match index.get(&y) {
                Some(&j) => j,
                None => {
                    let j = elements.len();
                    if j >= cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    index.insert(y.clone(), j);
                    elements.push(y);
                    parent.push(i);
                    last.push(gi);
                    j
                }
            };
            right[gi].push(j as u32);
        }
        i += 1;
    }
    let n = elements.len();
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        let row = &mut table[a * n..(a + 1) * n];
        row[0] = a as u32;
        for b in 1..n {
            row[b] = right[last[b]][row[parent[b]] as usize];
        }
    }
    let mut words: Vec<Vec<usize>> = vec![Vec::new(); n];
    for b in 1..n {
        let mut w = words[parent[b]].clone();
        w.push(last[b]);
        words[b] = w;
    }
    let labels = words.iter().map(|w| word_label(w, names)).collect();
    let gens: Vec<usize> = generators.iter().map(|g| index[g]).collect();
    let group = FiniteGroup::from_parts(table, labels, words, gens, names.to_vec());
    Ok((group, elements))
}

fn default_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl FiniteGroup {
    /// Group generated by permutations of a common degree.
    pub fn from_permutations(
        generators: &[Permutation],
        names: Option<Vec<String>>,
        cap: usize,
    ) -> Result<FiniteGroup, GroupError> {
        let degree = generators.first().map_or(0, Permutation::degree);
        if let Some(i) = generators.iter().position(|p| p.degree() != degree) {
            return Err(GroupError::InconsistentGenerators(format!("permutation {i} has a different degree")));
        }
        let names = names.unwrap_or_else(|| default_names("g", generators.len()));
        if names.len() != generators.len() {
            return Err(GroupError::InconsistentGenerators("name count differs from generator count".into()));
        }
        Ok(build_group(Permutation::identity(degree), generators, &names, cap)?.0)
    }

    /// Group generated by invertible monomial matrices with root-of-unity entries.
    pub fn from_monomial_matrices(
        generators: &[ExactMatrix],
        names: Option<Vec<String>>,
        cap: usize,
    ) -> Result<FiniteGroup, GroupError> {
        let dim = generators.first().map_or(0, ExactMatrix::rows);
        let mut monos = Vec::with_capacity(generators.len());
        for (index, m) in generators.iter().enumerate() {
            if m.rows() != dim {
                return Err(GroupError::InconsistentGenerators(format!("matrix {index} has a different size")));
            }
            monos.push(Monomial::from_matrix(m).map_err(|reason| GroupError::NonInvertibleGenerator { index, reason })?);
        }
        let names = names.unwrap_or_else(|| default_names("g", generators.len()));
        if names.len() != generators.len() {
            return Err(GroupError::InconsistentGenerators("name count differs from generator count".into()));
        }
        Ok(build_group(Monomial::identity(dim), &monos, &names, cap)?.0)
    }

    /// Group generated by arbitrary invertible cyclotomic matrices of finite order.
    pub fn from_matrices(
        generators: &[ExactMatrix],
        names: Option<Vec<String>>,
        cap: usize,
    ) -> Result<FiniteGroup, GroupError> {
        let dim = generators.first().map_or(0, ExactMatrix::rows);
        for (index, m) in generators.iter().enumerate() {
            if !m.is_square() || m.rows() != dim {
                return Err(GroupError::InconsistentGenerators(format!("matrix {index} has a different size")));
            }
            if m.inverse().is_err() {
                return Err(GroupError::NonInvertibleGenerator { index, reason: "singular matrix".into() });
            }
        }
        let names = names.unwrap_or_else(|| default_names("g", generators.len()));
        if names.len() != generators.len() {
            return Err(GroupError::InconsistentGenerators("name count differs from generator count".into()));
        }
        let elems: Vec<MatrixElement> = generators.iter().cloned().map(MatrixElement).collect();
        Ok(build_group(MatrixElement(ExactMatrix::identity(dim)), &elems, &names, cap)?.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Cyclotomic;
    use crate::groups::DEFAULT_ORDER_CAP;

    #[test]
    fn s3_from_cycles() {
        let a = Permutation::from_cycles("(1 2)", 3).unwrap();
        let b = Permutation::from_cycles("(1 2 3)", 3).unwrap();
        let g = FiniteGroup::from_permutations(&[a, b], None, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        g.verify_group_law().unwrap();
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = FiniteGroup::from_permutations(&[], None, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn monomial_closures() {
        let z = Cyclotomic::root_of_unity(1, 3);
        let zi = Cyclotomic::root_of_unity(2, 3);
        let diag = |a: Cyclotomic, b: Cyclotomic| {
            ExactMatrix::from_rows(vec![vec![a, Cyclotomic::zero()], vec![Cyclotomic::zero(), b]]).unwrap()
        };
        let swap = ExactMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        // The swap inverts diag(ζ, ζ^-1), so these two generate S3.
        let d = diag(z.clone(), zi);
        let g = FiniteGroup::from_monomial_matrices(&[d.clone(), swap.clone()], None, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        // diag(ζ, 1) and the swap give G(3,1,2) of order 2!·3².
        let d1 = diag(z, Cyclotomic::one());
        let g = FiniteGroup::from_monomial_matrices(&[d1.clone(), swap.clone()], None, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 18);
        g.verify_group_law().unwrap();
        // Independent closure with full matrix multiplication.
        for gens in [vec![d, swap.clone()], vec![d1, swap]] {
            let m = FiniteGroup::from_monomial_matrices(&gens, None, DEFAULT_ORDER_CAP).unwrap();
            let h = FiniteGroup::from_matrices(&gens, None, DEFAULT_ORDER_CAP).unwrap();
            assert_eq!(m.order(), h.order());
            assert_eq!(m.classes().sizes(), h.classes().sizes());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let a = Permutation::from_cycles("(1 2)", 5).unwrap();
        let b = Permutation::from_cycles("(1 2 3 4 5)", 5).unwrap();
        assert_eq!(
            FiniteGroup::from_permutations(&[a, b], None, 100).unwrap_err(),
            GroupError::CapExceeded { cap: 100 }
        );
    }

    #[test]
    fn singular_generator_rejected() {
        let m = ExactMatrix::from_ints(&[&[1, 0], &[0, 0]]);
        assert!(matches!(
            FiniteGroup::from_monomial_matrices(&[m], None, DEFAULT_ORDER_CAP),
            Err(GroupError::NonInvertibleGenerator { .. })
        ));
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }
}
