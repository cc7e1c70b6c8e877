use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::{FiniteGroup, GroupError, SUBGROUP_ENUMERATION_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subgroup {
    /// Members, ascending.
    pub elements: Vec<usize>,
    /// Index (into the returned list) of the first subgroup conjugate to this one.
    pub conjugacy_class: usize,
    pub is_representative: bool,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Every subgroup of `group` exactly once, found by joining cyclic subgroups
/// until no new closure appears. Sorted by order, then lexicographically.
pub fn subgroups(group: &FiniteGroup) -> Result<Vec<Subgroup>, GroupError> {
    if group.order() > SUBGROUP_ENUMERATION_BOUND {
        return Err(GroupError::OrderBound { order: group.order(), bound: SUBGROUP_ENUMERATION_BOUND });
    }
    let mut cyclic: Vec<Vec<usize>> = group
        .elements()
        .map(|g| group.generated_subgroup(&[g]))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    cyclic.sort_by_key(Vec::len);
    let cyclic_gens: Vec<usize> = cyclic
        .iter()
        .map(|c| *c.iter().find(|&&g| group.generated_subgroup(&[g]) == *c).expect("cyclic generator"))
        .collect();

    let mut seen: HashSet<Vec<usize>> = cyclic.iter().cloned().collect();
    let mut found: Vec<Vec<usize>> = cyclic.clone();
    let mut i = 0;
    while i < found.len() {
        let h = found[i].clone();
        for (c, &gen) in cyclic.iter().zip(&cyclic_gens) {
            if h.binary_search(&gen).is_ok() || c.len() == 1 {
                continue;
            }
            let mut gens = h.clone();
            gens.push(gen);
            let joined = group.generated_subgroup(&gens);
            if seen.insert(joined.clone()) {
                found.push(joined);
            }
        }
        i += 1;
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    let mut class_index = vec![usize::MAX; found.len()];
    let position = |set: &Vec<usize>| found.binary_search_by(|x| x.len().cmp(&set.len()).then_with(|| x.cmp(set)));
    for i in 0..found.len() {
        if class_index[i] != usize::MAX {
            continue;
        }
        class_index[i] = i;
        for g in group.elements() {
            let mut conj: Vec<usize> = found[i].iter().map(|&x| group.conjugate(x, g)).collect();
            conj.sort_unstable();
            let j = position(&conj).expect("conjugate of a subgroup is a subgroup");
            class_index[j] = i;
        }
    }
    Ok(found
        .into_iter()
        .enumerate()
        .map(|(i, elements)| Subgroup { elements, conjugacy_class: class_index[i], is_representative: class_index[i] == i })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{catalog_group, GroupKind};

    fn count(kind: GroupKind) -> (usize, usize) {
        let g = catalog_group(&kind).unwrap();
        let subs = subgroups(&g).unwrap();
        for s in &subs {
            assert_eq!(g.order() % s.order(), 0);
            assert!(g.is_subgroup(&s.elements));
            assert_eq!(g.generated_subgroup(&s.elements), s.elements);
        }
        (subs.len(), subs.iter().filter(|s| s.is_representative).count())
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(GroupKind::Cyclic { n: 2 }), (2, 2));
        assert_eq!(count(GroupKind::Cyclic { n: 4 }), (3, 3));
        assert_eq!(count(GroupKind::Symmetric { n: 3 }), (6, 4));
        // S4: 30 subgroups in 11 conjugacy classes.
        assert_eq!(count(GroupKind::Symmetric { n: 4 }), (30, 11));
        // D8 (order 8): 10 subgroups in 8 classes.
        assert_eq!(count(GroupKind::Dihedral { k: 4 }), (10, 8));
    }

    #[test]
    fn bound_enforced() {
        let g = catalog_group(&GroupKind::Symmetric { n: 6 }).unwrap();
        assert!(matches!(subgroups(&g), Err(GroupError::OrderBound { .. })));
    }
}
