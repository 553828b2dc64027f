use crate::bitset::BitSet;

use super::FiniteMonoid;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GreenKind {
    R,
    L,
    J,
    H,
}

/// Green preorders of a finite monoid, stored as ideal bitsets:
/// `r_ideal[t]` holds every `s` with `s ≤_R t`, and similarly for L and J.
#[derive(Clone, Debug)]
pub struct Green {
    r_ideal: Vec<BitSet>,
    l_ideal: Vec<BitSet>,
    j_ideal: Vec<BitSet>,
}

impl Green {
    pub fn new(m: &FiniteMonoid) -> Self {
        let n = m.size();
        let r_ideal: Vec<BitSet> =
            m.elements().map(|t| BitSet::from_iter_len(n, m.elements().map(|y| m.mul(t, y)))).collect();
        let l_ideal: Vec<BitSet> =
            m.elements().map(|t| BitSet::from_iter_len(n, m.elements().map(|x| m.mul(x, t)))).collect();
        let j_ideal = m
            .elements()
            .map(|t| {
                let mut acc = BitSet::new(n);
                for u in r_ideal[t].iter() {
                    acc.union_with(&l_ideal[u]);
                }
                acc
            })
            .collect();
        Green { r_ideal, l_ideal, j_ideal }
    }

    pub fn r_leq(&self, s: usize, t: usize) -> bool {
        self.r_ideal[t].contains(s)
    }

    pub fn l_leq(&self, s: usize, t: usize) -> bool {
        self.l_ideal[t].contains(s)
    }

    pub fn j_leq(&self, s: usize, t: usize) -> bool {
        self.j_ideal[t].contains(s)
    }

    pub fn leq(&self, kind: GreenKind, s: usize, t: usize) -> bool {
        match kind {
            GreenKind::R => self.r_leq(s, t),
            GreenKind::L => self.l_leq(s, t),
            GreenKind::J => self.j_leq(s, t),
            GreenKind::H => self.r_leq(s, t) && self.l_leq(s, t),
        }
    }

    pub fn equiv(&self, kind: GreenKind, s: usize, t: usize) -> bool {
        self.leq(kind, s, t) && self.leq(kind, t, s)
    }

    pub fn strictly_below(&self, kind: GreenKind, s: usize, t: usize) -> bool {
        self.leq(kind, s, t) && !self.leq(kind, t, s)
    }

    /// Number of elements `t'` with `s ≤_J t'`.
    pub fn j_rank(&self, s: usize) -> usize {
        self.j_ideal.iter().filter(|ideal| ideal.contains(s)).count()
    }

    /// Equivalence classes, each sorted, ordered by least member.
    pub fn classes(&self, kind: GreenKind) -> Vec<Vec<usize>> {
        let n = self.r_ideal.len();
        let mut assigned = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if assigned[s] {
                continue;
            }
            let class: Vec<usize> = (s..n).filter(|&t| !assigned[t] && self.equiv(kind, s, t)).collect();
            for &t in &class {
                assigned[t] = true;
            }
            out.push(class);
        }
        out
    }
}
