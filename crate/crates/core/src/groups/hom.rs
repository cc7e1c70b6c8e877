use std::sync::Arc;

use super::{word_label, FiniteGroup, GroupError};

/// A homomorphism between two materialised groups.
#[derive(Debug, Clone)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl GroupHom {
    /// Checks the homomorphism law on every pair.
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<usize>) -> Result<Self, GroupError> {
        if map.len() != source.order() || map.iter().any(|&x| x >= target.order()) {
            return Err(GroupError::NotAGroup("image table has the wrong shape".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(GroupError::NotAGroup(format!(
                        "φ({}·{}) ≠ φ({})·φ({})",
                        source.label(a),
                        source.label(b),
                        source.label(a),
                        source.label(b)
                    )));
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let map = group.elements().collect();
        GroupHom { source: group.clone(), target: group, map }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.source.elements().filter(|&g| self.map[g] == 0).collect()
    }

    pub fn image(&self) -> Vec<usize> {
        let mut im = self.map.clone();
        im.sort_unstable();
        im.dedup();
        im
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.order()
    }

    /// Preimage of a set of target elements, ascending.
    pub fn preimage(&self, set: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.target.order()];
        for &x in set {
            member[x] = true;
        }
        self.source.elements().filter(|&g| member[self.map[g]]).collect()
    }
}

/// The projection `G → G/K`. Cosets are numbered by their least element, so
/// the identity coset is index 0; each coset is labelled by that least element.
pub fn quotient_hom(group: Arc<FiniteGroup>, kernel: &[usize]) -> Result<GroupHom, GroupError> {
    if !group.is_subgroup(kernel) {
        return Err(GroupError::NotSubgroup);
    }
    if !group.is_normal(kernel) {
        return Err(GroupError::NotNormal);
    }
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for g in group.elements() {
        if coset_of[g] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(g);
        for &k in kernel {
            coset_of[group.mul(g, k)] = idx;
        }
    }
    let q = reps.len();
    let mut table = vec![0u32; q * q];
    for a in 0..q {
        for b in 0..q {
            table[a * q + b] = coset_of[group.mul(reps[a], reps[b])] as u32;
        }
    }
    // Generators of W are the images of the generators of G.
    let gens: Vec<usize> = group.generators().iter().map(|&g| coset_of[g]).collect();
    let names = group.generator_names().to_vec();
    let words: Vec<Vec<usize>> = reps.iter().map(|&r| group.word(r).to_vec()).collect();
    let labels: Vec<String> = words.iter().map(|w| word_label(w, &names)).collect();
    let target = FiniteGroup::from_parts(table, labels, words, gens, names);
    Ok(GroupHom { source: group, target: Arc::new(target), map: coset_of })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{catalog_group, GroupKind};

    #[test]
    fn trivial_kernel_is_isomorphism() {
        let g = Arc::new(catalog_group(&GroupKind::Symmetric { n: 3 }).unwrap());
        let pi = quotient_hom(g.clone(), &[0]).unwrap();
        assert_eq!(pi.target().order(), 6);
        assert_eq!(pi.kernel(), vec![0]);
        assert!(pi.is_surjective());
    }

    #[test]
    fn z4_mod_z2() {
        let g = Arc::new(catalog_group(&GroupKind::Cyclic { n: 4 }).unwrap());
        let two = g.parse_word("g^2").unwrap();
        let pi = quotient_hom(g.clone(), &[0, two]).unwrap();
        assert_eq!(pi.target().order(), 2);
        assert_eq!(pi.kernel(), vec![0, two]);
        GroupHom::new(g, pi.target().clone(), pi.images().to_vec()).unwrap();
    }

    #[test]
    fn s4_mod_klein_is_s3() {
        let g = Arc::new(catalog_group(&GroupKind::Symmetric { n: 4 }).unwrap());
        let v4: Vec<usize> = g
            .elements()
            .filter(|&x| g.element_order(x) <= 2 && g.classes().size(g.class_of(x)) != 6)
            .collect();
        assert_eq!(v4.len(), 4);
        let pi = quotient_hom(g.clone(), &v4).unwrap();
        let w = pi.target();
        assert_eq!(w.order(), 6);
        assert!(!w.is_abelian());
        assert_eq!(g.order(), v4.len() * w.order());
        assert_eq!(pi.kernel(), v4);
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(pi.apply(g.mul(a, b)), w.mul(pi.apply(a), pi.apply(b)));
            }
        }
    }

    #[test]
    fn non_normal_kernel_rejected() {
        let g = Arc::new(catalog_group(&GroupKind::Symmetric { n: 3 }).unwrap());
        let s1 = g.parse_word("s1").unwrap();
        assert_eq!(quotient_hom(g.clone(), &[0, s1]).unwrap_err(), GroupError::NotNormal);
        assert_eq!(quotient_hom(g, &[s1]).unwrap_err(), GroupError::NotSubgroup);
    }
}
