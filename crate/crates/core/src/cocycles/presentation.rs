use std::sync::Arc;

use num_integer::Integer;

use crate::exact::RootOfUnity;
use crate::groups::FiniteGroup;

use super::{Cocycle, CocycleError};

/// A relator `word = scalar` holding among the lifted generators in `C_ψG`.
/// Letters index into [`FiniteGroup::generators`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub word: Vec<usize>,
    pub scalar: RootOfUnity,
}

/// Extracts the cocycle of a twisted presentation.
///
/// Each element `g` gets the basis vector `g̃` equal to the product of the
/// lifted generators along `normal_words[g]`; the set of words must be
/// prefix-closed. Writing `g̃·x̃ = c(g,x)·(gx)~` for generators `x`, the tree
/// edges of the normal-form words carry `c = 1` and every relator read at
/// every vertex constrains the remaining edges. Unknowns are solved by
/// propagation; an inconsistency means the scalars do not define an algebra
/// of dimension `|G|`.
pub fn cocycle_from_presentation(
    group: Arc<FiniteGroup>,
    normal_words: &[Vec<usize>],
    relations: &[Relation],
) -> Result<Cocycle, CocycleError> {
    let n = group.order();
    let ngen = group.generators().len();
    let gens = group.generators().to_vec();
    if normal_words.len() != n {
        return Err(CocycleError::Presentation("one normal word per element is required".into()));
    }
    let order = relations.iter().fold(1u64, |a, r| a.lcm(&r.scalar.order()));
    let eval = |w: &[usize]| w.iter().fold(0, |acc, &x| group.mul(acc, gens[x]));

    // Parent links of the normal-form tree.
    let mut by_word = std::collections::HashMap::new();
    for (g, w) in normal_words.iter().enumerate() {
        if w.iter().any(|&x| x >= ngen) {
            return Err(CocycleError::Presentation(format!("word for {} uses an unknown generator", group.label(g))));
        }
        if eval(w) != g {
            return Err(CocycleError::Presentation(format!("normal word does not evaluate to {}", group.label(g))));
        }
        by_word.insert(w.clone(), g);
    }
    let mut parent = vec![(usize::MAX, usize::MAX); n];
    let mut c: Vec<Option<u64>> = vec![None; n * ngen];
    for (g, w) in normal_words.iter().enumerate() {
        if let Some((&last, prefix)) = w.split_last() {
            let p = *by_word
                .get(prefix)
                .ok_or_else(|| CocycleError::Presentation("normal words are not prefix-closed".into()))?;
            parent[g] = (p, last);
            c[p * ngen + last] = Some(0);
        } else if g != 0 {
            return Err(CocycleError::Presentation("only the identity may have the empty word".into()));
        }
    }

    for r in relations {
        if eval(&r.word) != 0 {
            return Err(CocycleError::Presentation(format!("relator {:?} is not trivial in the group", r.word)));
        }
    }

    // Propagate until every edge is known.
    loop {
        let mut progress = false;
        let mut unresolved = 0usize;
        for v in 0..n {
            for r in relations {
                let target = r.scalar.exponent_at(order);
                let mut sum = 0u64;
                let mut unknown = None;
                let mut count = 0;
                let mut x = v;
                for &letter in &r.word {
                    match c[x * ngen + letter] {
                        Some(k) => sum += k,
                        None => {
                            count += 1;
                            unknown = Some(x * ngen + letter);
                        }
                    }
                    x = group.mul(x, gens[letter]);
                }
                match count {
                    0 => {
                        if sum % order != target {
                            return Err(CocycleError::Presentation(format!(
                                "relator {:?} fails at {}",
                                r.word,
                                group.label(v)
                            )));
                        }
                    }
                    1 => {
                        let k = (target + order - sum % order) % order;
                        c[unknown.expect("one unknown")] = Some(k);
                        progress = true;
                    }
                    _ => unresolved += 1,
                }
            }
        }
        if unresolved == 0 && c.iter().all(Option::is_some) {
            if !progress {
                break;
            }
            continue;
        }
        if !progress {
            return Err(CocycleError::Presentation("relator propagation stalled".into()));
        }
    }
    let c: Vec<u64> = c.into_iter().map(|k| k.expect("all edges solved")).collect();

    // ψ(g,h) accumulates c along the normal word of h starting from g.
    let mut by_length: Vec<usize> = (0..n).collect();
    by_length.sort_by_key(|&h| normal_words[h].len());
    let mut exps = vec![0u64; n * n];
    for g in 0..n {
        for &h in &by_length[1..] {
            let (p, x) = parent[h];
            let at = group.mul(g, p);
            exps[g * n + h] = (exps[g * n + p] + c[at * ngen + x]) % order;
        }
    }
    Cocycle::from_exponents(group, order, exps)
}
