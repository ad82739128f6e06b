//! Glue codes: isotropic subgroups of `discr(⊕ R_k)` defining the
//! unimodular Niemeier extensions. Words are digit vectors, one digit per
//! irreducible component, with component-specific digit arithmetic.
//!
//! Apart from the two Golay codes (handled in `golay`), glue generator
//! words ship as frozen data found once by `search_glue`: since the
//! Niemeier lattice with a given root system is unique up to isomorphism,
//! any subgroup of the right order whose nonzero words all have even
//! integral minimal norm ≥ 4 yields the right lattice. (Evenness of every
//! word forces integral pairings by polarization, minimal norm ≥ 4 keeps
//! the root system unchanged, and the order makes the extension
//! unimodular.)

use crate::root::RootKind;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeSet;

pub type GlueWord = Vec<u8>;

pub fn word_add(kinds: &[RootKind], a: &[u8], b: &[u8]) -> GlueWord {
    kinds.iter().zip(a.iter().zip(b.iter())).map(|(k, (&x, &y))| k.class_add(x, y)).collect()
}

pub fn word_neg(kinds: &[RootKind], a: &[u8]) -> GlueWord {
    kinds.iter().zip(a.iter()).map(|(k, &x)| k.class_neg(x)).collect()
}

/// Minimal norm of the coset named by the word: the sum of per-component
/// class minima.
pub fn word_min_norm(kinds: &[RootKind], w: &[u8]) -> BigRational {
    kinds
        .iter()
        .zip(w.iter())
        .map(|(k, &d)| k.class_min_norm(d))
        .fold(BigRational::zero(), |acc, x| acc + x)
}

/// A nonzero word is usable in a glue group iff its minimal coset norm is
/// an even integer ≥ 4.
pub fn word_is_glue(kinds: &[RootKind], w: &[u8]) -> bool {
    let norm = word_min_norm(kinds, w);
    if !norm.is_integer() {
        return false;
    }
    let n = norm.to_integer();
    n >= BigInt::from(4) && (&n % 2u8) == BigInt::zero()
}

/// Closure of the given generator words under digit addition.
pub fn span_words(kinds: &[RootKind], gens: &[GlueWord]) -> Vec<GlueWord> {
    let zero: GlueWord = vec![0; kinds.len()];
    let mut seen: BTreeSet<GlueWord> = BTreeSet::new();
    seen.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(w) = frontier.pop() {
        for g in gens {
            let s = word_add(kinds, &w, g);
            if seen.insert(s.clone()) {
                frontier.push(s);
            }
        }
    }
    seen.into_iter().collect()
}

/// Deterministic backtracking search for a glue group of the target order
/// in which every nonzero word has even integral minimal norm ≥ 4.
pub fn search_glue(kinds: &[RootKind], target_order: u64) -> Option<Vec<GlueWord>> {
    // Candidate elements, in lexicographic order.
    let mut candidates: Vec<GlueWord> = Vec::new();
    let mut stack: Vec<GlueWord> = vec![vec![]];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == kinds.len() {
            if prefix.iter().any(|&d| d != 0) && word_is_glue(kinds, &prefix) {
                candidates.push(prefix);
            }
            continue;
        }
        let k = kinds[prefix.len()];
        for d in (0..k.num_classes()).rev() {
            let mut next = prefix.clone();
            next.push(d);
            stack.push(next);
        }
    }
    candidates.sort();

    struct Search<'a> {
        kinds: &'a [RootKind],
        candidates: &'a [GlueWord],
        target: u64,
    }

    impl Search<'_> {
        fn extend(
            &self,
            start: usize,
            group: &mut BTreeSet<GlueWord>,
            gens: &mut Vec<GlueWord>,
        ) -> bool {
            if group.len() as u64 == self.target {
                return true;
            }
            for (idx, cand) in self.candidates.iter().enumerate().skip(start) {
                if group.contains(cand) {
                    continue;
                }
                // Close the group under the new generator.
                let mut new_words: BTreeSet<GlueWord> = BTreeSet::new();
                let mut power = cand.clone();
                while power.iter().any(|&d| d != 0) {
                    for g in group.iter() {
                        let s = word_add(self.kinds, g, &power);
                        if !group.contains(&s) {
                            new_words.insert(s);
                        }
                    }
                    power = word_add(self.kinds, &power, cand);
                }
                if (group.len() + new_words.len()) as u64 > self.target {
                    continue;
                }
                if !new_words.iter().all(|w| word_is_glue(self.kinds, w)) {
                    continue;
                }
                group.extend(new_words.iter().cloned());
                gens.push(cand.clone());
                if self.extend(idx + 1, group, gens) {
                    return true;
                }
                gens.pop();
                for w in &new_words {
                    group.remove(w);
                }
            }
            false
        }
    }

    let search = Search { kinds, candidates: &candidates, target: target_order };
    let mut group: BTreeSet<GlueWord> = BTreeSet::new();
    group.insert(vec![0; kinds.len()]);
    let mut gens: Vec<GlueWord> = Vec::new();
    if search.extend(0, &mut group, &mut gens) {
        Some(gens)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn d24_glue_is_a_spinor() {
        let kinds = [RootKind::D(24)];
        let gens = search_glue(&kinds, 2).unwrap();
        let words = span_words(&kinds, &gens);
        assert_eq!(words.len(), 2);
        let nz = words.iter().find(|w| w[0] != 0).unwrap();
        assert_eq!(word_min_norm(&kinds, nz), BigRational::from(BigInt::from(6)));
    }

    #[test]
    fn e8_cubed_needs_no_glue() {
        let kinds = [RootKind::E(8), RootKind::E(8), RootKind::E(8)];
        let gens = search_glue(&kinds, 1).unwrap();
        assert!(gens.is_empty());
    }

    #[test]
    fn a24_glue_is_index_five() {
        let kinds = [RootKind::A(24)];
        let gens = search_glue(&kinds, 5).unwrap();
        let words = span_words(&kinds, &gens);
        assert_eq!(words.len(), 5);
        for w in &words {
            assert_eq!(w[0] % 5, 0, "A24 glue must be the subgroup 5Z/25Z");
        }
    }
}
