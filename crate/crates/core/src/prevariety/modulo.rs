use std::collections::HashMap;

use super::Relation;
use crate::bitset::BitSet;
use crate::monoid::Morphism;

/// The sequence `T_n = α(A^n)`, which is eventually periodic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stability {
    /// `T_0, …, T_{i0+p-1}`.
    sets: Vec<BitSet>,
    /// Index where the cycle starts.
    pub i0: usize,
    /// Period of the cycle.
    pub p: usize,
    /// Least `d ≥ 1` with `T_d = T_{2d}`.
    pub d: usize,
}

impl Stability {
    /// `T_n` for any `n`.
    pub fn at(&self, n: usize) -> &BitSet {
        if n < self.sets.len() {
            &self.sets[n]
        } else {
            &self.sets[self.i0 + (n - self.i0) % self.p]
        }
    }

    pub fn elements_at(&self, n: usize) -> Vec<usize> {
        self.at(n).iter().collect()
    }

    /// `α(A^d)`, the stable semigroup.
    pub fn stable_semigroup(&self) -> Vec<usize> {
        self.elements_at(self.d)
    }
}

pub fn stability(alpha: &Morphism) -> Stability {
    let m = alpha.monoid();
    let n = m.size();
    let mut sets = vec![BitSet::from_iter_len(n, [m.unit()])];
    let mut index: HashMap<BitSet, usize> = HashMap::from([(sets[0].clone(), 0)]);
    let (i0, p) = loop {
        let last = sets.last().expect("nonempty");
        let mut next = BitSet::new(n);
        for s in last.iter() {
            for &x in alpha.letter_images() {
                next.insert(m.mul(s, x));
            }
        }
        if let Some(&i) = index.get(&next) {
            break (i, sets.len() - i);
        }
        index.insert(next.clone(), sets.len());
        sets.push(next);
    };
    let mut st = Stability { sets, i0, p, d: 0 };
    st.d = (1..).find(|&d| st.at(d) == st.at(2 * d)).expect("stability index exists");
    st
}

/// MOD pairs from the eventually periodic length sets: `(s, t)` is a pair
/// iff `s ∈ T_m`, `t ∈ T_n` for some `m, n ≤ i0 + p` with `m = n`, or with
/// `m ≡ n (mod p)` and `max(m, n) ≥ i0`.
pub fn pairs_mod(alpha: &Morphism) -> Relation {
    let st = stability(alpha);
    let bound = st.i0 + st.p;
    let mut rel = Relation::empty(alpha.size());
    for m in 0..=bound {
        for n in 0..=bound {
            let ok = m == n || ((m % st.p == n % st.p) && m.max(n) >= st.i0);
            if !ok {
                continue;
            }
            for s in st.at(m).iter() {
                for t in st.at(n).iter() {
                    rel.insert(s, t);
                }
            }
        }
    }
    rel
}

/// MOD kernel: the stable monoid `{1} ∪ α(A^d)`.
pub fn kernel_mod(alpha: &Morphism) -> Vec<usize> {
    let st = stability(alpha);
    let mut k = st.stable_semigroup();
    k.push(alpha.monoid().unit());
    k.sort_unstable();
    k.dedup();
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::Alphabet;
    use crate::monoid::syntactic_of_regex;

    fn ab() -> Alphabet {
        Alphabet::new(['a', 'b']).unwrap()
    }

    #[test]
    fn even_length() {
        let alpha = syntactic_of_regex("(AA)*", &ab()).unwrap();
        let st = stability(&alpha);
        assert_eq!((st.i0, st.p, st.d), (0, 2, 2));
        assert_eq!(st.stable_semigroup(), vec![alpha.monoid().unit()]);
        let pairs = pairs_mod(&alpha);
        let (zero, one) = (alpha.element_of("").unwrap(), alpha.element_of("a").unwrap());
        assert!(!pairs.contains(zero, one));
        assert!(pairs.contains(one, one));
    }

    #[test]
    fn contains_a() {
        let alpha = syntactic_of_regex("A*aA*", &ab()).unwrap();
        let st = stability(&alpha);
        assert_eq!((st.i0, st.p), (1, 1));
        assert_eq!(pairs_mod(&alpha).count(), 4);
    }
}
