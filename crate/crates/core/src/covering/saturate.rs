//! Least UPol-saturated subset of `N × R`.
//!
//! The set is downward closed in its second component, so it is stored as
//! the maximal elements of each slice `S(t)`. Products of maximal elements
//! dominate all products, and the closure rule only needs to be applied to
//! ω-powers of maximal elements whose first component is idempotent.

use std::collections::{HashMap, HashSet, VecDeque};

use super::semiring::{rho_of_preimage, RatingMap, Semiring};
use super::CoverError;
use crate::monoid::{Green, Morphism};

/// Result of [`saturate_upol`].
#[derive(Clone, Debug)]
pub struct Saturated<S: Semiring> {
    pub eta: Morphism,
    pub rating: RatingMap<S>,
    /// Maximal elements of each slice.
    maxima: Vec<Vec<S::Elem>>,
    /// `ρ(η⁻¹(s))` for every `s`.
    pub rho_pre: Vec<S::Elem>,
}

fn omega_of<S: Semiring>(s: &S, r: &S::Elem) -> S::Elem {
    let mut seen: Vec<S::Elem> = vec![r.clone()];
    loop {
        let last = seen.last().expect("nonempty");
        if &s.mul(last, last) == last {
            return last.clone();
        }
        let next = s.mul(last, r);
        if seen.contains(&next) && s.mul(&next, &next) != next {
            // Walk the cycle until the idempotent power shows up.
            let mut p = next;
            loop {
                if s.mul(&p, &p) == p {
                    return p;
                }
                p = s.mul(&p, r);
            }
        }
        seen.push(next);
    }
}

impl<S: Semiring> Saturated<S> {
    pub fn maxima(&self, t: usize) -> &[S::Elem] {
        &self.maxima[t]
    }

    /// All maximal elements `(t, r)`.
    pub fn all_maxima(&self) -> impl Iterator<Item = (usize, &S::Elem)> {
        self.maxima.iter().enumerate().flat_map(|(t, v)| v.iter().map(move |r| (t, r)))
    }

    pub fn contains(&self, t: usize, r: &S::Elem) -> bool {
        self.maxima[t].iter().any(|m| self.rating.semiring.leq(r, m))
    }

    /// Maximal elements of the optimal imprint `⋃_t S(t)`.
    pub fn opt_maxima(&self) -> Vec<S::Elem> {
        let s = &self.rating.semiring;
        let all: Vec<S::Elem> = self.maxima.iter().flatten().cloned().collect();
        let mut out: Vec<S::Elem> = Vec::new();
        for (i, r) in all.iter().enumerate() {
            let dominated = all.iter().enumerate().any(|(j, q)| j != i && s.leq(r, q) && (r != q || j < i));
            if !dominated {
                out.push(r.clone());
            }
        }
        out
    }

    /// Explicit downset, if its size stays within `limit`.
    pub fn explicit(&self, limit: usize) -> Option<Vec<(usize, S::Elem)>> {
        let mut out: HashSet<(usize, S::Elem)> = HashSet::new();
        for (t, r) in self.all_maxima() {
            if self.rating.semiring.below_count(r).is_none_or(|n| n > limit) {
                return None;
            }
            for x in self.rating.semiring.below(r) {
                out.insert((t, x));
                if out.len() > limit {
                    return None;
                }
            }
        }
        let mut v: Vec<(usize, S::Elem)> = out.into_iter().collect();
        v.sort_by_key(|(t, _)| *t);
        Some(v)
    }

    /// Post-hoc check of the saturation rules. Downward closure is checked
    /// on the explicit set when it has at most `explicit_limit` elements.
    /// Products and the closure rule are checked on maximal elements, which
    /// suffices: multiplication is monotone, and an idempotent below `g` is
    /// below `g^ω`.
    pub fn verify(&self, explicit_limit: usize) -> Result<(), String> {
        let s = &self.rating.semiring;
        let m = self.eta.monoid();
        let green = m.green();
        for (t, r) in self.rating.joint_image(&self.eta) {
            if !self.contains(t, &r) {
                return Err(format!("trivial element ({t}, {r:?}) missing"));
            }
        }
        if let Some(e) = self.explicit(explicit_limit) {
            let set: HashSet<&(usize, S::Elem)> = e.iter().collect();
            for (t, r) in &e {
                for x in s.below(r) {
                    if !set.contains(&(*t, x.clone())) {
                        return Err(format!("not downward closed below ({t}, {r:?})"));
                    }
                }
            }
        }
        let elems: Vec<(usize, S::Elem)> = self.all_maxima().map(|(t, r)| (t, r.clone())).collect();
        for (t1, r1) in &elems {
            for (t2, r2) in &elems {
                if !self.contains(m.mul(*t1, *t2), &s.mul(r1, r2)) {
                    return Err(format!("product of ({t1}, {r1:?}) and ({t2}, {r2:?}) missing"));
                }
            }
        }
        let idem: Vec<(usize, S::Elem)> = elems
            .iter()
            .filter(|(e, _)| m.is_idempotent(*e))
            .map(|(e, f)| (*e, if s.mul(f, f) == *f { f.clone() } else { omega_of(s, f) }))
            .collect();
        for (e1, f1) in &idem {
            for (e2, f2) in &idem {
                for x in m.elements() {
                    if green.r_leq(*e1, m.mul(x, *e2)) && green.l_leq(*e2, m.mul(*e1, x)) {
                        let t = m.mul(m.mul(*e1, x), *e2);
                        let r = s.mul(&s.mul(f1, &self.rho_pre[x]), f2);
                        if !self.contains(t, &r) {
                            return Err(format!("closure rule fails for e1={e1}, s={x}, e2={e2}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Computes the least UPol-saturated set for `η` and `ρ`.
pub fn saturate_upol<S: Semiring + Clone>(eta: &Morphism, rating: &RatingMap<S>) -> Result<Saturated<S>, CoverError> {
    saturate_upol_with_guard(eta, rating, crate::size_guard())
}

pub fn saturate_upol_with_guard<S: Semiring + Clone>(
    eta: &Morphism,
    rating: &RatingMap<S>,
    guard: usize,
) -> Result<Saturated<S>, CoverError> {
    if eta.alphabet() != &rating.alphabet {
        return Err(CoverError::AlphabetMismatch);
    }
    let m = eta.monoid();
    let s = &rating.semiring;
    let green: Green = m.green();
    let rho_pre: Vec<S::Elem> = m.elements().map(|x| rho_of_preimage(rating, eta, x)).collect();
    let mut maxima: Vec<Vec<S::Elem>> = vec![Vec::new(); m.size()];
    let mut queue: VecDeque<(usize, S::Elem)> = VecDeque::new();
    let mut inserted = 0usize;
    // Closure-rule candidates for each pair of idempotents, precomputed.
    let idempotents = m.idempotents();
    let mut closure_moves: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for &e1 in &idempotents {
        for &e2 in &idempotents {
            let xs: Vec<usize> =
                m.elements().filter(|&x| green.r_leq(e1, m.mul(x, e2)) && green.l_leq(e2, m.mul(e1, x))).collect();
            closure_moves.insert((e1, e2), xs);
        }
    }

    let insert = |maxima: &mut Vec<Vec<S::Elem>>,
                  queue: &mut VecDeque<(usize, S::Elem)>,
                  inserted: &mut usize,
                  t: usize,
                  r: S::Elem|
     -> Result<(), CoverError> {
        if maxima[t].iter().any(|q| s.leq(&r, q)) {
            return Ok(());
        }
        maxima[t].retain(|q| !s.leq(q, &r));
        maxima[t].push(r.clone());
        queue.push_back((t, r));
        *inserted += 1;
        if *inserted > guard {
            return Err(CoverError::SizeGuard(format!("saturation exceeded {guard} insertions")));
        }
        Ok(())
    };

    for (t, r) in rating.joint_image(eta) {
        insert(&mut maxima, &mut queue, &mut inserted, t, r)?;
    }
    while let Some((t, r)) = queue.pop_front() {
        if !maxima[t].contains(&r) {
            continue;
        }
        let current: Vec<(usize, S::Elem)> =
            maxima.iter().enumerate().flat_map(|(u, v)| v.iter().map(move |q| (u, q.clone()))).collect();
        for (u, q) in &current {
            insert(&mut maxima, &mut queue, &mut inserted, m.mul(t, *u), s.mul(&r, q))?;
            insert(&mut maxima, &mut queue, &mut inserted, m.mul(*u, t), s.mul(q, &r))?;
        }
        if m.is_idempotent(t) {
            let f1 = omega_of(s, &r);
            for (u, q) in current.iter().filter(|(u, _)| m.is_idempotent(*u)) {
                let f2 = omega_of(s, q);
                for (e1, g1, e2, g2) in [(t, &f1, *u, &f2), (*u, &f2, t, &f1)] {
                    for &x in &closure_moves[&(e1, e2)] {
                        let target = m.mul(m.mul(e1, x), e2);
                        let rating_value = s.mul(&s.mul(g1, &rho_pre[x]), g2);
                        insert(&mut maxima, &mut queue, &mut inserted, target, rating_value)?;
                    }
                }
            }
            // Pairing with itself.
            for &x in &closure_moves[&(t, t)] {
                let target = m.mul(m.mul(t, x), t);
                let rating_value = s.mul(&s.mul(&f1, &rho_pre[x]), &f1);
                insert(&mut maxima, &mut queue, &mut inserted, target, rating_value)?;
            }
        }
    }
    Ok(Saturated { eta: eta.clone(), rating: rating.clone(), maxima, rho_pre })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitset::BitSet;
    use crate::covering::semiring::canonical_rating_map;
    use crate::lang::Alphabet;
    use crate::monoid::syntactic_of_regex;
    use crate::prevariety::{canonical_morphism_st, plus_lift};

    #[test]
    fn trivial_eta_even_length_reaches_everything() {
        let a = Alphabet::new(['a', 'b']).unwrap();
        let alpha = syntactic_of_regex("(AA)*", &a).unwrap();
        let rho = canonical_rating_map(&alpha).unwrap();
        let eta = canonical_morphism_st(&a);
        let sat = saturate_upol(&eta, &rho).unwrap();
        assert_eq!(sat.maxima(0), &[BitSet::full(2)]);
        assert_eq!(sat.explicit(100).unwrap().len(), 4);
        sat.verify(1000).unwrap();
    }

    #[test]
    fn boolean_rating_over_st_plus() {
        let a = Alphabet::new(['a', 'b']).unwrap();
        let trivial = syntactic_of_regex("A*", &a).unwrap();
        let rho = canonical_rating_map(&trivial).unwrap();
        let eta = plus_lift(&canonical_morphism_st(&a));
        let sat = saturate_upol(&eta, &rho).unwrap();
        let explicit = sat.explicit(100).unwrap();
        assert_eq!(explicit.len(), 4);
        for t in 0..2 {
            assert!(sat.contains(t, &BitSet::full(1)));
            assert!(sat.contains(t, &BitSet::new(1)));
        }
        sat.verify(1000).unwrap();
    }

    #[test]
    fn verify_rejects_a_mutilated_set() {
        let a = Alphabet::new(['a', 'b']).unwrap();
        let alpha = syntactic_of_regex("(AA)*", &a).unwrap();
        let rho = canonical_rating_map(&alpha).unwrap();
        let eta = canonical_morphism_st(&a);
        let sat = saturate_upol(&eta, &rho).unwrap();
        for t in 0..sat.maxima.len() {
            for k in 0..sat.maxima[t].len() {
                let mut broken = sat.clone();
                broken.maxima[t].remove(k);
                assert!(broken.verify(1000).is_err(), "dropping a maximum of slice {t} went unnoticed");
            }
        }
    }
}
