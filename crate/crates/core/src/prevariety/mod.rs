//! Base classes: pairs, kernels and canonical morphisms.
//!
//! A pair `(s, t)` for a morphism `α` and a class `C` means that `α⁻¹(s)`
//! is not `C`-separable from `α⁻¹(t)`. The kernel of `α` is the set of `s`
//! such that `{ε}` is not separable from `α⁻¹(s)`; the strict kernel
//! intersects it with `α(A⁺)`.

mod lattice;
mod modulo;
mod parikh;

pub use lattice::{lattice_contains, Lattice};
pub use modulo::{kernel_mod, pairs_mod, stability, Stability};
pub use parikh::{parikh, LinearSet, SemilinearSet};

use std::collections::HashSet;

use thiserror::Error;

use crate::lang::{Alphabet, Dfa};
use crate::monoid::{generate, MonoidError, Morphism};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrevarietyError {
    #[error("unsupported class: {0}")]
    Unsupported(String),
    #[error("morphism is not surjective")]
    NotSurjective,
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

/// A binary relation on the elements of a finite monoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    bits: Vec<Vec<bool>>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation { bits: vec![vec![false; n]; n] }
    }

    pub fn full(n: usize) -> Self {
        Relation { bits: vec![vec![true; n]; n] }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        Relation { bits: (0..n).map(|s| (0..n).map(|t| f(s, t)).collect()).collect() }
    }

    pub fn size(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, s: usize, t: usize) -> bool {
        self.bits[s][t]
    }

    pub fn insert(&mut self, s: usize, t: usize) {
        self.bits[s][t] = true;
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size();
        (0..n).flat_map(move |s| (0..n).filter(move |&t| self.bits[s][t]).map(move |t| (s, t)))
    }

    pub fn count(&self) -> usize {
        self.pairs().count()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size()).all(|s| self.bits[s][s])
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(s, t)| self.bits[t][s])
    }

    pub fn is_transitive(&self) -> bool {
        self.pairs().all(|(s, t)| (0..self.size()).all(|u| !self.bits[t][u] || self.bits[s][u]))
    }
}

/// Reflexive-transitive closure of a pair relation.
pub fn canonical_preorder(pairs: &Relation) -> Relation {
    let n = pairs.size();
    let mut r = pairs.clone();
    for s in 0..n {
        r.bits[s][s] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if r.bits[i][k] {
                for j in 0..n {
                    if r.bits[k][j] {
                        r.bits[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

/// Equivalence induced by [`canonical_preorder`].
pub fn canonical_equiv(pairs: &Relation) -> Relation {
    let p = canonical_preorder(pairs);
    Relation::from_fn(p.size(), |s, t| p.contains(s, t) && p.contains(t, s))
}

/// Base classes for which the deciders have the required data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Oracle {
    /// `{∅, A*}`.
    St,
    /// Well-suited extension of `St`: `{∅, {ε}, A⁺, A*}`.
    StPlus,
    /// Boolean combinations of `A*aA*`.
    At,
    /// Well-suited extension of `At`.
    AtPlus,
    /// Length modulo languages.
    Mod,
    /// Letter-count modulo languages.
    Amt,
    /// Languages recognized by a given surjective morphism.
    Finite(Morphism),
    /// Well-suited extension of a finite class.
    FinitePlus(Morphism),
}

impl Oracle {
    /// Parses `st`, `st+`, `at`, `at+`, `mod`, `amt`, `finite:<path>` and
    /// `finite+:<path>`, where the path names a monoid JSON file.
    pub fn parse(spec: &str) -> Result<Oracle, PrevarietyError> {
        let load = |path: &str| -> Result<Morphism, PrevarietyError> {
            let text = std::fs::read_to_string(path)
                .map_err(|e| PrevarietyError::Io { path: path.into(), message: e.to_string() })?;
            let m = Morphism::from_json(&text)?;
            m.require_surjective()?;
            Ok(m)
        };
        match spec.trim() {
            "st" => Ok(Oracle::St),
            "st+" => Ok(Oracle::StPlus),
            "at" => Ok(Oracle::At),
            "at+" => Ok(Oracle::AtPlus),
            "mod" => Ok(Oracle::Mod),
            "amt" => Ok(Oracle::Amt),
            s => {
                if let Some(path) = s.strip_prefix("finite+:") {
                    Ok(Oracle::FinitePlus(load(path)?))
                } else if let Some(path) = s.strip_prefix("finite:") {
                    Ok(Oracle::Finite(load(path)?))
                } else {
                    Err(PrevarietyError::Unsupported(s.into()))
                }
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Oracle::St => "st",
            Oracle::StPlus => "st+",
            Oracle::At => "at",
            Oracle::AtPlus => "at+",
            Oracle::Mod => "mod",
            Oracle::Amt => "amt",
            Oracle::Finite(_) => "finite",
            Oracle::FinitePlus(_) => "finite+",
        }
    }

    /// True for classes consisting of group languages.
    pub fn is_group_class(&self) -> bool {
        match self {
            Oracle::St | Oracle::Mod | Oracle::Amt => true,
            Oracle::Finite(m) => m.monoid().is_group(),
            _ => false,
        }
    }

    /// Canonical morphism, for finite classes.
    pub fn canonical_morphism(&self, alphabet: &Alphabet) -> Result<Morphism, PrevarietyError> {
        let check = |m: &Morphism| {
            if m.alphabet() == alphabet {
                Ok(())
            } else {
                Err(PrevarietyError::AlphabetMismatch)
            }
        };
        match self {
            Oracle::St => Ok(canonical_morphism_st(alphabet)),
            Oracle::StPlus => Ok(plus_lift(&canonical_morphism_st(alphabet))),
            Oracle::At => Ok(canonical_morphism_at(alphabet)),
            Oracle::AtPlus => Ok(plus_lift(&canonical_morphism_at(alphabet))),
            Oracle::Finite(m) => check(m).map(|_| m.clone()),
            Oracle::FinitePlus(m) => check(m).map(|_| plus_lift(m)),
            Oracle::Mod | Oracle::Amt => Err(PrevarietyError::Unsupported(format!("{} is not finite", self.name()))),
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, Oracle::Mod | Oracle::Amt)
    }

    /// Pairs of `α` for this class.
    pub fn pairs(&self, alpha: &Morphism) -> Result<Relation, PrevarietyError> {
        match self {
            Oracle::St => {
                require_surjective(alpha)?;
                Ok(pairs_st(alpha))
            }
            Oracle::Mod => {
                require_surjective(alpha)?;
                Ok(pairs_mod(alpha))
            }
            Oracle::Amt => pairs_amt(alpha),
            _ => pairs_finite(&self.canonical_morphism(alpha.alphabet())?, alpha),
        }
    }

    /// Kernel of `α` for this class.
    pub fn kernel(&self, alpha: &Morphism) -> Result<Vec<usize>, PrevarietyError> {
        require_surjective(alpha)?;
        match self {
            Oracle::St => Ok(alpha.monoid().elements().collect()),
            Oracle::Mod => Ok(kernel_mod(alpha)),
            Oracle::Amt => kernel_amt(alpha),
            _ => kernel_finite(&self.canonical_morphism(alpha.alphabet())?, alpha),
        }
    }

    /// Strict kernel: kernel intersected with `α(A⁺)`.
    pub fn strict_kernel(&self, alpha: &Morphism) -> Result<Vec<usize>, PrevarietyError> {
        Ok(strict_kernel(alpha, &self.kernel(alpha)?))
    }

    /// Membership of a language in the class itself.
    pub fn contains(&self, d: &Dfa) -> Result<bool, PrevarietyError> {
        match self {
            Oracle::Mod => {
                let m = crate::monoid::syntactic_morphism(d);
                let imgs = m.letter_images();
                Ok(m.monoid().is_group() && imgs.iter().all(|&x| x == imgs[0]))
            }
            Oracle::Amt => {
                let m = crate::monoid::syntactic_morphism(d);
                Ok(m.monoid().is_group() && m.monoid().is_commutative())
            }
            _ => Ok(self.canonical_morphism(d.alphabet())?.recognizes(d)),
        }
    }
}

fn require_surjective(alpha: &Morphism) -> Result<(), PrevarietyError> {
    if alpha.is_surjective() {
        Ok(())
    } else {
        Err(PrevarietyError::NotSurjective)
    }
}

/// Morphism onto the trivial monoid.
pub fn canonical_morphism_st(alphabet: &Alphabet) -> Morphism {
    generate(alphabet, (), &vec![(); alphabet.len()], |_, _| ()).0
}

/// Morphism `w ↦ alph(w)` into `(2^A, ∪)`.
pub fn canonical_morphism_at(alphabet: &Alphabet) -> Morphism {
    let letters: Vec<u64> = (0..alphabet.len()).map(|a| 1u64 << a).collect();
    generate(alphabet, 0u64, &letters, |x, y| x | y).0
}

/// Lift of `η` recognizing the well-suited extension of its class: it also
/// tracks whether the word is empty.
pub fn plus_lift(eta: &Morphism) -> Morphism {
    let m = eta.monoid();
    let letters: Vec<(usize, bool)> = eta.letter_images().iter().map(|&x| (x, true)).collect();
    generate(eta.alphabet(), (m.unit(), false), &letters, |&(x, b), &(y, c)| (m.mul(x, y), b || c)).0
}

/// All pairs: nothing but `∅` and `A*` separates anything.
pub fn pairs_st(alpha: &Morphism) -> Relation {
    Relation::full(alpha.size())
}

/// Reachable set `{(η(w), α(w))}`.
pub fn joint_image(eta: &Morphism, alpha: &Morphism) -> Result<HashSet<(usize, usize)>, PrevarietyError> {
    if eta.alphabet() != alpha.alphabet() {
        return Err(PrevarietyError::AlphabetMismatch);
    }
    let start = (eta.monoid().unit(), alpha.monoid().unit());
    let mut seen = HashSet::from([start]);
    let mut stack = vec![start];
    while let Some((x, s)) = stack.pop() {
        for a in 0..alpha.alphabet().len() {
            let next = (eta.monoid().mul(x, eta.letter_image(a)), alpha.monoid().mul(s, alpha.letter_image(a)));
            if seen.insert(next) {
                stack.push(next);
            }
        }
    }
    Ok(seen)
}

/// Pairs for the class of languages recognized by `η`: `(s, t)` is a pair
/// iff some `u, v` have `η(u) = η(v)`, `α(u) = s` and `α(v) = t`.
pub fn pairs_finite(eta: &Morphism, alpha: &Morphism) -> Result<Relation, PrevarietyError> {
    require_surjective(alpha)?;
    let joint = joint_image(eta, alpha)?;
    let mut by_eta: Vec<Vec<usize>> = vec![Vec::new(); eta.size()];
    for &(x, s) in &joint {
        by_eta[x].push(s);
    }
    let mut rel = Relation::empty(alpha.size());
    for group in by_eta {
        for &s in &group {
            for &t in &group {
                rel.insert(s, t);
            }
        }
    }
    Ok(rel)
}

/// Kernel for a finite class: elements `s` with `(η(ε), s)` reachable.
pub fn kernel_finite(eta: &Morphism, alpha: &Morphism) -> Result<Vec<usize>, PrevarietyError> {
    require_surjective(alpha)?;
    let joint = joint_image(eta, alpha)?;
    let unit = eta.monoid().unit();
    let mut out: Vec<usize> = joint.iter().filter(|(x, _)| *x == unit).map(|&(_, s)| s).collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Kernel intersected with `α(A⁺)`.
pub fn strict_kernel(alpha: &Morphism, kernel: &[usize]) -> Vec<usize> {
    let plus = alpha.nonempty_image();
    kernel.iter().copied().filter(|s| plus.contains(s)).collect()
}

/// AMT kernel: `s` is in it iff some component `(b, P)` of the Parikh image
/// of `α⁻¹(s)` has `b` in the integer span of `P`.
pub fn kernel_amt(alpha: &Morphism) -> Result<Vec<usize>, PrevarietyError> {
    require_surjective(alpha)?;
    let comps = amt_components(alpha)?;
    Ok((0..alpha.size())
        .filter(|&s| {
            comps[s].iter().any(|c| {
                let lat = Lattice::span(c.base.len(), c.periods.iter().map(|p| parikh::to_i128(p)));
                lat.contains(&parikh::to_i128(&c.base))
            })
        })
        .collect())
}

/// AMT pairs: `(s, t)` is a pair iff components `(b, P)` of `s` and
/// `(b', P')` of `t` have `b − b'` in the integer span of `P ∪ P'`.
pub fn pairs_amt(alpha: &Morphism) -> Result<Relation, PrevarietyError> {
    require_surjective(alpha)?;
    let comps = amt_components(alpha)?;
    let n = alpha.size();
    let dim = alpha.alphabet().len();
    // Group bases by visited set so each lattice is built once per pair of sets.
    type Groups = std::collections::BTreeMap<u64, (Vec<Vec<u32>>, Vec<Vec<i128>>)>;
    let groups: Vec<Groups> = comps
        .iter()
        .map(|cs| {
            let mut g: Groups = Default::default();
            for c in cs {
                let e = g.entry(c.visited).or_insert_with(|| (c.periods.clone(), Vec::new()));
                e.1.push(parikh::to_i128(&c.base));
            }
            g
        })
        .collect();
    let mut rel = Relation::empty(n);
    for s in 0..n {
        for t in s..n {
            let hit = groups[s].values().any(|(ps, bs)| {
                groups[t].values().any(|(pt, bt)| {
                    let lat = Lattice::span(dim, ps.iter().chain(pt.iter()).map(|p| parikh::to_i128(p)));
                    let left: HashSet<Vec<i128>> = bs.iter().map(|b| lat.reduce(b)).collect();
                    bt.iter().any(|b| left.contains(&lat.reduce(b)))
                })
            });
            if hit {
                rel.insert(s, t);
                rel.insert(t, s);
            }
        }
    }
    Ok(rel)
}

fn amt_components(alpha: &Morphism) -> Result<Vec<Vec<parikh::RunComponent>>, PrevarietyError> {
    let m = alpha.monoid();
    let graph = parikh::Graph {
        initial: m.unit(),
        delta: m.elements().map(|s| alpha.letter_images().iter().map(|&x| m.mul(s, x)).collect()).collect(),
        letters: alpha.alphabet().len(),
    };
    parikh::parikh_by_final_state(&graph, parikh::size_guard())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::compile_str;
    use crate::monoid::{syntactic_of_regex, FiniteMonoid};

    fn ab() -> Alphabet {
        Alphabet::new(['a', 'b']).unwrap()
    }

    fn syn(s: &str) -> Morphism {
        syntactic_of_regex(s, &ab()).unwrap()
    }

    #[test]
    fn at_canonical_morphism() {
        let m = canonical_morphism_at(&ab());
        assert_eq!(m.size(), 4);
        assert!(m.monoid().is_commutative());
        assert!(m.monoid().elements().all(|s| m.monoid().is_idempotent(s)));
        let plus = plus_lift(&canonical_morphism_st(&ab()));
        assert_eq!(plus.size(), 2);
    }

    #[test]
    fn at_pairs_of_even_a() {
        let alpha = syntactic_of_regex("(aa)*", &Alphabet::new(['a']).unwrap()).unwrap();
        let pairs = Oracle::At.pairs(&alpha).unwrap();
        let (zero, one) = (alpha.element_of("").unwrap(), alpha.element_of("a").unwrap());
        assert!(pairs.contains(one, zero));
        assert!(pairs.contains(zero, zero));
    }

    #[test]
    fn st_pairs_full_and_match_finite_trivial() {
        let alpha = syn("(ab)*");
        let st = Oracle::St.pairs(&alpha).unwrap();
        assert_eq!(st.count(), 36);
        assert_eq!(st, pairs_finite(&canonical_morphism_st(&ab()), &alpha).unwrap());
    }

    /// The monoid {1, a, b, 0} with every product of letters equal to 0.
    fn null_monoid() -> Morphism {
        let t = vec![vec![0, 1, 2, 3], vec![1, 3, 3, 3], vec![2, 3, 3, 3], vec![3, 3, 3, 3]];
        Morphism::new(ab(), FiniteMonoid::new(t, 0, None).unwrap(), vec![1, 2]).unwrap()
    }

    #[test]
    fn pairs_are_not_transitive() {
        let alpha = null_monoid();
        let p = Oracle::At.pairs(&alpha).unwrap();
        let (a, b, z) = (1, 2, 3);
        assert!(p.contains(a, z) && p.contains(z, b));
        assert!(!p.contains(a, b));
        assert!(p.is_reflexive() && p.is_symmetric() && !p.is_transitive());
        let pre = canonical_preorder(&p);
        assert!(pre.contains(a, b));
        assert!(pre.is_transitive());
        assert_eq!(canonical_equiv(&p), pre);
    }

    #[test]
    fn pairs_compatible_with_multiplication() {
        for r in ["(ab)*", "A*aA*", "b*", "ab*", "(AA)*"] {
            let alpha = syn(r);
            let m = alpha.monoid();
            for oracle in [Oracle::St, Oracle::At, Oracle::AtPlus, Oracle::StPlus, Oracle::Mod] {
                let p = oracle.pairs(&alpha).unwrap();
                for (s1, t1) in p.pairs() {
                    for (s2, t2) in p.pairs() {
                        assert!(p.contains(m.mul(s1, s2), m.mul(t1, t2)), "{r} {}", oracle.name());
                    }
                }
            }
        }
    }

    #[test]
    fn non_surjective_rejected() {
        let t = vec![vec![0, 1], vec![1, 1]];
        let m = Morphism::new(ab(), FiniteMonoid::new(t, 0, None).unwrap(), vec![0, 0]).unwrap();
        assert_eq!(pairs_finite(&canonical_morphism_at(&ab()), &m), Err(PrevarietyError::NotSurjective));
    }

    #[test]
    fn kernels() {
        let f1 = syn("A*aA*");
        assert_eq!(Oracle::Mod.kernel(&f1).unwrap(), vec![0, 1]);
        let f4 = syn("(AA)*");
        assert_eq!(Oracle::Mod.kernel(&f4).unwrap(), vec![f4.monoid().unit()]);
        let parity_a = syn("(b*ab*a)*b*");
        assert_eq!(Oracle::Amt.kernel(&parity_a).unwrap(), vec![parity_a.element_of("").unwrap()]);
        assert_eq!(Oracle::Amt.kernel(&f1).unwrap(), vec![0, 1]);
        let eps = syn("eps");
        let strict = Oracle::St.strict_kernel(&eps).unwrap();
        assert!(!strict.contains(&eps.monoid().unit()));
        let f3 = syn("(ab)*");
        let strict = Oracle::St.strict_kernel(&f3).unwrap();
        assert_eq!(strict.len(), 5);
    }

    #[test]
    fn kernel_is_submonoid() {
        for r in ["(ab)*", "A*aA*", "b*", "ab*", "(AA)*", "(b*ab*a)*b*", "(aab)*"] {
            let alpha = syn(r);
            for oracle in [Oracle::St, Oracle::Mod, Oracle::Amt, Oracle::At] {
                let k = oracle.kernel(&alpha).unwrap();
                assert!(alpha.monoid().is_submonoid(&k), "{r} {}", oracle.name());
                let sk = oracle.strict_kernel(&alpha).unwrap();
                assert!(sk.is_empty() || alpha.monoid().is_subsemigroup(&sk));
            }
            let k = Oracle::Mod.kernel(&alpha).unwrap();
            for e in alpha.monoid().idempotents() {
                assert!(k.contains(&e), "group kernels contain idempotents: {r}");
            }
        }
    }

    #[test]
    fn class_membership() {
        let d = |r: &str| compile_str(r, &ab()).unwrap();
        assert!(Oracle::Mod.contains(&d("(AA)*")).unwrap());
        assert!(!Oracle::Mod.contains(&d("(b*ab*a)*b*")).unwrap());
        assert!(Oracle::Amt.contains(&d("(b*ab*a)*b*")).unwrap());
        assert!(Oracle::At.contains(&d("b*")).unwrap());
        assert!(!Oracle::At.contains(&d("ab*")).unwrap());
        assert!(Oracle::St.contains(&d("A*")).unwrap());
        assert!(!Oracle::St.contains(&d("eps")).unwrap());
        assert!(Oracle::StPlus.contains(&d("eps")).unwrap());
        assert!(Oracle::AtPlus.contains(&d("AA*")).unwrap());
    }

    #[test]
    fn unsupported_class() {
        assert!(matches!(Oracle::parse("gr"), Err(PrevarietyError::Unsupported(_))));
    }
}
