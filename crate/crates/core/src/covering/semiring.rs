//! Idempotent semirings and multiplicative rating maps.

use std::collections::{HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use super::CoverError;
use crate::bitset::BitSet;
use crate::lang::{Alphabet, Dfa};
use crate::monoid::{FiniteMonoid, Morphism};

/// An idempotent semiring: `+` is commutative, associative and idempotent
/// with unit `0`; `·` is associative with unit `1`, distributes over `+`,
/// and `0` is absorbing. Its canonical order is `r ≤ s` iff `r + s = s`.
pub trait Semiring {
    type Elem: Clone + Eq + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        &self.add(a, b) == b
    }

    /// Every element below `a` in the canonical order, if enumerable.
    fn below(&self, a: &Self::Elem) -> Vec<Self::Elem>;

    /// Length of [`Semiring::below`], or `None` when it overflows.
    fn below_count(&self, a: &Self::Elem) -> Option<usize> {
        Some(self.below(a).len())
    }
}

/// Powerset `2^M` of a finite monoid with union and pointwise product.
#[derive(Clone, Debug)]
pub struct Powerset {
    monoid: FiniteMonoid,
}

/// Largest monoid accepted by [`powerset_semiring`].
pub const POWERSET_LIMIT: usize = 64;

/// Largest joint morphism used in place of a product of powersets.
pub const JOINT_LIMIT: usize = 16;

pub fn powerset_semiring(monoid: &FiniteMonoid) -> Result<Powerset, CoverError> {
    if monoid.size() > POWERSET_LIMIT {
        return Err(CoverError::SizeGuard(format!(
            "powerset of a monoid with {} > {POWERSET_LIMIT} elements",
            monoid.size()
        )));
    }
    Ok(Powerset { monoid: monoid.clone() })
}

impl Powerset {
    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn singleton(&self, s: usize) -> BitSet {
        BitSet::from_iter_len(self.monoid.size(), [s])
    }
}

impl Semiring for Powerset {
    type Elem = BitSet;

    fn zero(&self) -> BitSet {
        BitSet::new(self.monoid.size())
    }

    fn one(&self) -> BitSet {
        self.singleton(self.monoid.unit())
    }

    fn add(&self, a: &BitSet, b: &BitSet) -> BitSet {
        let mut c = a.clone();
        c.union_with(b);
        c
    }

    fn mul(&self, a: &BitSet, b: &BitSet) -> BitSet {
        let mut c = self.zero();
        for x in a.iter() {
            for y in b.iter() {
                c.insert(self.monoid.mul(x, y));
            }
        }
        c
    }

    fn leq(&self, a: &BitSet, b: &BitSet) -> bool {
        a.is_subset(b)
    }

    fn below(&self, a: &BitSet) -> Vec<BitSet> {
        let items: Vec<usize> = a.iter().collect();
        (0u64..1 << items.len())
            .map(|mask| {
                BitSet::from_iter_len(
                    self.monoid.size(),
                    items.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x),
                )
            })
            .collect()
    }

    fn below_count(&self, a: &BitSet) -> Option<usize> {
        1usize.checked_shl(a.count() as u32).filter(|&n| n > 0)
    }
}

/// Componentwise product of semirings of the same type.
#[derive(Clone, Debug)]
pub struct Product<S> {
    parts: Vec<S>,
}

/// Product semiring; rejects products whose size bound exceeds the guard.
pub fn product_semiring(parts: Vec<Powerset>) -> Result<Product<Powerset>, CoverError> {
    let bits: usize = parts.iter().map(|p| p.monoid.size()).sum();
    if bits > 4 * POWERSET_LIMIT {
        return Err(CoverError::SizeGuard(format!("product semiring of 2^{bits} elements")));
    }
    Ok(Product { parts })
}

impl<S> Product<S> {
    pub fn parts(&self) -> &[S] {
        &self.parts
    }
}

impl<S: Semiring> Semiring for Product<S> {
    type Elem = Vec<S::Elem>;

    fn zero(&self) -> Self::Elem {
        self.parts.iter().map(S::zero).collect()
    }

    fn one(&self) -> Self::Elem {
        self.parts.iter().map(S::one).collect()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.parts.iter().zip(a.iter().zip(b)).map(|(s, (x, y))| s.add(x, y)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.parts.iter().zip(a.iter().zip(b)).map(|(s, (x, y))| s.mul(x, y)).collect()
    }

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.parts.iter().zip(a.iter().zip(b)).all(|(s, (x, y))| s.leq(x, y))
    }

    fn below(&self, a: &Self::Elem) -> Vec<Self::Elem> {
        let mut out: Vec<Self::Elem> = vec![Vec::new()];
        for (s, x) in self.parts.iter().zip(a) {
            let opts = s.below(x);
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    opts.iter().map(move |o| {
                        let mut p = prefix.clone();
                        p.push(o.clone());
                        p
                    })
                })
                .collect();
        }
        out
    }

    fn below_count(&self, a: &Self::Elem) -> Option<usize> {
        self.parts.iter().zip(a).try_fold(1usize, |acc, (s, x)| acc.checked_mul(s.below_count(x)?))
    }
}

/// Explicit semiring given by addition and multiplication tables over
/// interned elements `0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdemSemiring {
    pub size: usize,
    pub zero: usize,
    pub one: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

impl IdemSemiring {
    /// Interns the sub-semiring generated by `generators` (plus `0` and `1`).
    pub fn materialize<S: Semiring>(
        s: &S,
        generators: &[S::Elem],
        limit: usize,
    ) -> Result<(Self, Vec<S::Elem>), CoverError> {
        let mut elems = vec![s.zero(), s.one()];
        let mut ids: HashMap<S::Elem, usize> = HashMap::new();
        ids.insert(elems[0].clone(), 0);
        if !ids.contains_key(&elems[1]) {
            ids.insert(elems[1].clone(), 1);
        } else {
            elems.pop();
        }
        for g in generators {
            if !ids.contains_key(g) {
                ids.insert(g.clone(), elems.len());
                elems.push(g.clone());
            }
        }
        let mut changed = true;
        while changed {
            changed = false;
            let n = elems.len();
            for i in 0..n {
                for j in 0..n {
                    for c in [s.add(&elems[i], &elems[j]), s.mul(&elems[i], &elems[j])] {
                        if !ids.contains_key(&c) {
                            if elems.len() >= limit {
                                return Err(CoverError::SizeGuard(format!("semiring exceeds {limit} elements")));
                            }
                            ids.insert(c.clone(), elems.len());
                            elems.push(c);
                            changed = true;
                        }
                    }
                }
            }
        }
        let n = elems.len();
        let add = (0..n).map(|i| (0..n).map(|j| ids[&s.add(&elems[i], &elems[j])]).collect()).collect();
        let mul = (0..n).map(|i| (0..n).map(|j| ids[&s.mul(&elems[i], &elems[j])]).collect()).collect();
        let table = IdemSemiring { size: n, zero: ids[&s.zero()], one: ids[&s.one()], add, mul };
        Ok((table, elems))
    }

    /// Checks every idempotent semiring axiom; returns the first failure.
    pub fn check_axioms(&self) -> Result<(), String> {
        let n = self.size;
        let (a, m) = (&self.add, &self.mul);
        for x in 0..n {
            if a[x][x] != x {
                return Err(format!("{x}+{x} != {x}"));
            }
            if a[x][self.zero] != x || m[x][self.one] != x || m[self.one][x] != x {
                return Err(format!("units fail at {x}"));
            }
            if m[x][self.zero] != self.zero || m[self.zero][x] != self.zero {
                return Err(format!("zero not absorbing at {x}"));
            }
            for y in 0..n {
                if a[x][y] != a[y][x] {
                    return Err(format!("+ not commutative at {x},{y}"));
                }
                for z in 0..n {
                    if a[a[x][y]][z] != a[x][a[y][z]] || m[m[x][y]][z] != m[x][m[y][z]] {
                        return Err(format!("associativity fails at {x},{y},{z}"));
                    }
                    if m[x][a[y][z]] != a[m[x][y]][m[x][z]] || m[a[x][y]][z] != a[m[x][z]][m[y][z]] {
                        return Err(format!("distributivity fails at {x},{y},{z}"));
                    }
                }
            }
        }
        Ok(())
    }
}

impl Semiring for IdemSemiring {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.zero
    }

    fn one(&self) -> usize {
        self.one
    }

    fn add(&self, a: &usize, b: &usize) -> usize {
        self.add[*a][*b]
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.mul[*a][*b]
    }

    fn below(&self, a: &usize) -> Vec<usize> {
        (0..self.size).filter(|x| self.leq(x, a)).collect()
    }
}

/// Multiplicative rating map determined by the ratings of single letters.
#[derive(Clone, Debug)]
pub struct RatingMap<S: Semiring> {
    pub semiring: S,
    pub alphabet: Alphabet,
    pub letters: Vec<S::Elem>,
}

impl<S: Semiring> RatingMap<S> {
    pub fn rate_word(&self, w: &[usize]) -> S::Elem {
        w.iter().fold(self.semiring.one(), |acc, &a| self.semiring.mul(&acc, &self.letters[a]))
    }

    /// `ρ(L)`: the sum of `ρ(w)` over `w ∈ L`.
    pub fn rate_dfa(&self, d: &Dfa) -> S::Elem {
        let mut seen = std::collections::HashSet::new();
        let start = (d.initial(), self.semiring.one());
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start]);
        let mut total = self.semiring.zero();
        while let Some((q, r)) = queue.pop_front() {
            if d.is_accepting(q) {
                total = self.semiring.add(&total, &r);
            }
            for a in 0..self.alphabet.len() {
                let next = (d.step(q, a), self.semiring.mul(&r, &self.letters[a]));
                if !seen.contains(&next) {
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        total
    }

    /// Reachable pairs `(η(w), ρ(w))`.
    pub fn joint_image(&self, eta: &Morphism) -> Vec<(usize, S::Elem)> {
        let m = eta.monoid();
        let start = (m.unit(), self.semiring.one());
        let mut seen = std::collections::HashSet::from([start.clone()]);
        let mut out = vec![start];
        let mut i = 0;
        while i < out.len() {
            let (x, r) = out[i].clone();
            for a in 0..self.alphabet.len() {
                let next = (m.mul(x, eta.letter_image(a)), self.semiring.mul(&r, &self.letters[a]));
                if !seen.contains(&next) {
                    seen.insert(next.clone());
                    out.push(next);
                }
            }
            i += 1;
        }
        out
    }
}

/// `ρ_α(K) = α(K)` in `2^M`.
pub fn canonical_rating_map(alpha: &Morphism) -> Result<RatingMap<Powerset>, CoverError> {
    let semiring = powerset_semiring(alpha.monoid())?;
    let letters = alpha.letter_images().iter().map(|&x| semiring.singleton(x)).collect();
    Ok(RatingMap { semiring, alphabet: alpha.alphabet().clone(), letters })
}

/// Componentwise product of rating maps.
pub fn product_rating_map(maps: Vec<RatingMap<Powerset>>) -> Result<RatingMap<Product<Powerset>>, CoverError> {
    let alphabet = maps.first().map(|m| m.alphabet.clone()).ok_or(CoverError::EmptyProduct)?;
    if maps.iter().any(|m| m.alphabet != alphabet) {
        return Err(CoverError::AlphabetMismatch);
    }
    let letters = (0..alphabet.len()).map(|a| maps.iter().map(|m| m.letters[a].clone()).collect()).collect();
    let semiring = product_semiring(maps.into_iter().map(|m| m.semiring).collect())?;
    Ok(RatingMap { semiring, alphabet, letters })
}

/// `ρ(η⁻¹(s))`.
pub fn rho_of_preimage<S: Semiring>(rating: &RatingMap<S>, eta: &Morphism, s: usize) -> S::Elem {
    rating
        .joint_image(eta)
        .into_iter()
        .filter(|(x, _)| *x == s)
        .fold(rating.semiring.zero(), |acc, (_, r)| rating.semiring.add(&acc, &r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::compile_str;
    use crate::monoid::syntactic_of_regex;
    use crate::prevariety::canonical_morphism_at;

    #[test]
    fn powerset_of_u1_has_four_elements() {
        let u1 = syntactic_of_regex("A*aA*", &Alphabet::new(['a', 'b']).unwrap()).unwrap();
        let p = powerset_semiring(u1.monoid()).unwrap();
        let all = BitSet::full(2);
        assert_eq!(p.below(&all).len(), 4);
        let (table, _) = IdemSemiring::materialize(&p, &p.below(&all), 64).unwrap();
        assert_eq!(table.size, 4);
        table.check_axioms().unwrap();
    }

    #[test]
    fn product_axioms() {
        let a = Alphabet::new(['a', 'b']).unwrap();
        let m1 = syntactic_of_regex("(AA)*", &a).unwrap();
        let m2 = syntactic_of_regex("A*aA*", &a).unwrap();
        let prod =
            product_semiring(vec![powerset_semiring(m1.monoid()).unwrap(), powerset_semiring(m2.monoid()).unwrap()])
                .unwrap();
        let top = vec![BitSet::full(2), BitSet::full(2)];
        let gens = prod.below(&top);
        assert_eq!(gens.len(), 16);
        let (table, _) = IdemSemiring::materialize(&prod, &gens, 64).unwrap();
        assert_eq!(table.size, 16);
        table.check_axioms().unwrap();
    }

    #[test]
    fn size_guard() {
        let a = Alphabet::new(['a', 'b']).unwrap();
        let big = crate::monoid::transition_monoid(&compile_str(&format!("({})*", "a".repeat(70)), &a).unwrap());
        assert!(big.size() > POWERSET_LIMIT);
        assert!(matches!(powerset_semiring(big.monoid()), Err(CoverError::SizeGuard(_))));
    }

    #[test]
    fn rating_of_preimage() {
        let a = Alphabet::new(['a']).unwrap();
        let alpha = syntactic_of_regex("(aa)*", &a).unwrap();
        let rho = canonical_rating_map(&alpha).unwrap();
        let eta = canonical_morphism_at(&a);
        let full = eta.element_of("a").unwrap();
        assert_eq!(rho_of_preimage(&rho, &eta, full), BitSet::full(2));
        let empty = eta.element_of("").unwrap();
        assert_eq!(rho_of_preimage(&rho, &eta, empty), BitSet::from_iter_len(2, [alpha.monoid().unit()]));
        let d = compile_str("a(aa)*", &a).unwrap();
        assert_eq!(rho.rate_dfa(&d), BitSet::from_iter_len(2, [alpha.element_of("a").unwrap()]));
    }
}
