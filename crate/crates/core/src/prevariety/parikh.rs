//! Parikh images of regular languages as semilinear sets.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::lattice::Lattice;
use super::PrevarietyError;
use crate::lang::Dfa;

/// `base + N·periods`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearSet {
    pub base: Vec<u32>,
    pub periods: Vec<Vec<u32>>,
}

/// Finite union of linear sets of a fixed dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearSet {
    pub dim: usize,
    pub components: Vec<LinearSet>,
}

impl LinearSet {
    /// Membership by bounded search over period coefficients.
    pub fn contains(&self, v: &[u32]) -> bool {
        if self.base.iter().zip(v).any(|(b, x)| b > x) {
            return false;
        }
        let rest: Vec<u32> = v.iter().zip(&self.base).map(|(x, b)| x - b).collect();
        Self::decompose(&rest, &self.periods)
    }

    fn decompose(v: &[u32], periods: &[Vec<u32>]) -> bool {
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        let Some((p, tail)) = periods.split_first() else { return false };
        if p.iter().all(|&x| x == 0) {
            return Self::decompose(v, tail);
        }
        let mut cur = v.to_vec();
        loop {
            if Self::decompose(&cur, tail) {
                return true;
            }
            if cur.iter().zip(p).any(|(x, y)| y > x) {
                return false;
            }
            for (x, y) in cur.iter_mut().zip(p) {
                *x -= y;
            }
        }
    }

    /// True when the base lies in the integer span of the periods.
    pub fn base_in_span(&self) -> bool {
        let lat = Lattice::span(self.base.len(), self.periods.iter().map(|p| to_i128(p)));
        lat.contains(&to_i128(&self.base))
    }
}

impl SemilinearSet {
    pub fn contains(&self, v: &[u32]) -> bool {
        self.components.iter().any(|c| c.contains(v))
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

pub(crate) fn to_i128(v: &[u32]) -> Vec<i128> {
    v.iter().map(|&x| x as i128).collect()
}

/// Parikh image of `L(d)`.
///
/// Every accepting run decomposes into a short run visiting some state set
/// `V` plus simple cycles inside `V`, and any such combination is again an
/// accepting run. Short runs are enumerated up to length `(n+1)²`.
pub fn parikh(d: &Dfa) -> Result<SemilinearSet, PrevarietyError> {
    let graph = Graph::from_dfa(d);
    let per_state = parikh_by_final_state(&graph, size_guard())?;
    let mut comps = BTreeSet::new();
    for (q, state_comps) in per_state.into_iter().enumerate() {
        if d.is_accepting(q) {
            comps.extend(state_comps.into_iter().map(|c| c.to_linear()));
        }
    }
    Ok(SemilinearSet { dim: d.alphabet().len(), components: comps.into_iter().collect() })
}

pub(crate) fn size_guard() -> usize {
    crate::size_guard().max(1 << 20)
}

/// Edge-labelled complete graph (states × letters).
pub(crate) struct Graph {
    pub initial: usize,
    pub delta: Vec<Vec<usize>>,
    pub letters: usize,
}

impl Graph {
    pub fn from_dfa(d: &Dfa) -> Graph {
        Graph {
            initial: d.initial(),
            delta: (0..d.num_states()).map(|q| (0..d.alphabet().len()).map(|a| d.step(q, a)).collect()).collect(),
            letters: d.alphabet().len(),
        }
    }
}

/// Component grouped by visited state set, kept symbolic for lattice tests.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct RunComponent {
    pub visited: u64,
    pub base: Vec<u32>,
    pub periods: Vec<Vec<u32>>,
}

impl RunComponent {
    fn to_linear(&self) -> LinearSet {
        LinearSet { base: self.base.clone(), periods: self.periods.clone() }
    }
}

/// For each end state, the components `(base, cycles(V))` of runs from the
/// initial state ending there.
pub(crate) fn parikh_by_final_state(g: &Graph, guard: usize) -> Result<Vec<Vec<RunComponent>>, PrevarietyError> {
    let n = g.delta.len();
    if n > 63 {
        return Err(PrevarietyError::SizeGuard(format!("{n} states exceed the Parikh construction limit")));
    }
    let cycles = simple_cycles(g, guard)?;
    let bound = (n + 1) * (n + 1);
    let mut seen: HashSet<(usize, u64, Vec<u32>)> = HashSet::new();
    let start = (g.initial, 1u64 << g.initial, vec![0u32; g.letters]);
    seen.insert(start.clone());
    let mut layer = vec![start];
    for _ in 0..bound {
        let mut next = Vec::new();
        for (q, v, vec) in &layer {
            for a in 0..g.letters {
                let p = g.delta[*q][a];
                let mut w = vec.clone();
                w[a] += 1;
                let key = (p, v | (1 << p), w);
                if !seen.contains(&key) {
                    seen.insert(key.clone());
                    next.push(key);
                }
            }
        }
        if seen.len() > guard {
            return Err(PrevarietyError::SizeGuard(format!("Parikh enumeration exceeded {guard} states")));
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    let mut period_cache: HashMap<u64, Vec<Vec<u32>>> = HashMap::new();
    let mut out: Vec<BTreeSet<RunComponent>> = vec![BTreeSet::new(); n];
    for (q, v, base) in seen {
        let periods = period_cache
            .entry(v)
            .or_insert_with(|| {
                let set: BTreeSet<Vec<u32>> =
                    cycles.iter().filter(|(mask, _)| mask & !v == 0).map(|(_, p)| p.clone()).collect();
                set.into_iter().collect()
            })
            .clone();
        out[q].insert(RunComponent { visited: v, base, periods });
    }
    Ok(out.into_iter().map(|s| s.into_iter().collect()).collect())
}

/// Simple cycles as (state mask, Parikh vector), deduplicated.
fn simple_cycles(g: &Graph, guard: usize) -> Result<Vec<(u64, Vec<u32>)>, PrevarietyError> {
    let n = g.delta.len();
    let mut found: HashSet<(u64, Vec<u32>)> = HashSet::new();
    let mut steps = 0usize;
    for s in 0..n {
        // Cycles whose least state is `s`.
        let mut stack: Vec<(usize, u64, Vec<u32>)> = vec![(s, 1 << s, vec![0; g.letters])];
        while let Some((q, mask, vec)) = stack.pop() {
            steps += 1;
            if steps > guard {
                return Err(PrevarietyError::SizeGuard("simple cycle enumeration too large".into()));
            }
            for a in 0..g.letters {
                let p = g.delta[q][a];
                let mut w = vec.clone();
                w[a] += 1;
                if p == s {
                    found.insert((mask, w));
                } else if p > s && mask & (1 << p) == 0 {
                    stack.push((p, mask | (1 << p), w));
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}
