//! Finite (ordered) monoids, morphisms from free monoids, Green's relations.

mod green;
mod json;

pub use green::{Green, GreenKind};
pub use json::MonoidJson;

use std::collections::HashMap;
use std::hash::Hash;

use thiserror::Error;

use crate::lang::{Alphabet, Dfa, LangError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} is not a two-sided unit")]
    BadUnit(usize),
    #[error("table is not square or refers to unknown elements")]
    BadTable,
    #[error("order is not a partial order compatible with multiplication")]
    BadOrder,
    #[error("morphism is not surjective")]
    NotSurjective,
    #[error(transparent)]
    Lang(#[from] LangError),
    #[error("malformed JSON: {0}")]
    Json(String),
}

/// A finite monoid given by its multiplication table, with an optional
/// partial order compatible with multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    table: Vec<Vec<usize>>,
    unit: usize,
    order: Option<Vec<Vec<bool>>>,
}

impl FiniteMonoid {
    /// Validates associativity, the unit and, if present, the order.
    pub fn new(table: Vec<Vec<usize>>, unit: usize, order: Option<Vec<Vec<bool>>>) -> Result<Self, MonoidError> {
        let n = table.len();
        if n == 0 || unit >= n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(MonoidError::BadTable);
        }
        for (s, row) in table.iter().enumerate() {
            if table[unit][s] != s || row[unit] != s {
                return Err(MonoidError::BadUnit(unit));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = table[x][y];
                for z in 0..n {
                    if table[xy][z] != table[x][table[y][z]] {
                        return Err(MonoidError::NotAssociative(x, y, z));
                    }
                }
            }
        }
        let m = FiniteMonoid { table, unit, order: None };
        match order {
            None => Ok(m),
            Some(o) => m.with_order(o),
        }
    }

    pub(crate) fn from_table_unchecked(table: Vec<Vec<usize>>, unit: usize) -> Self {
        FiniteMonoid { table, unit, order: None }
    }

    /// Attaches an order after checking reflexivity, antisymmetry,
    /// transitivity and compatibility with multiplication.
    pub fn with_order(mut self, order: Vec<Vec<bool>>) -> Result<Self, MonoidError> {
        let n = self.size();
        if order.len() != n || order.iter().any(|r| r.len() != n) {
            return Err(MonoidError::BadOrder);
        }
        for s in 0..n {
            if !order[s][s] {
                return Err(MonoidError::BadOrder);
            }
            for t in 0..n {
                if s != t && order[s][t] && order[t][s] {
                    return Err(MonoidError::BadOrder);
                }
                if !order[s][t] {
                    continue;
                }
                for u in 0..n {
                    if order[t][u] && !order[s][u] {
                        return Err(MonoidError::BadOrder);
                    }
                    if !order[self.mul(u, s)][self.mul(u, t)] || !order[self.mul(s, u)][self.mul(t, u)] {
                        return Err(MonoidError::BadOrder);
                    }
                }
            }
        }
        self.order = Some(order);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.table[s][t]
    }

    pub fn mul_all(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.unit, |acc, &x| self.table[acc][x])
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    pub fn order(&self) -> Option<&Vec<Vec<bool>>> {
        self.order.as_ref()
    }

    /// `s ≤ t` in the attached order; `None` when the monoid is unordered.
    pub fn leq(&self, s: usize, t: usize) -> Option<bool> {
        self.order.as_ref().map(|o| o[s][t])
    }

    pub fn pow(&self, s: usize, k: usize) -> usize {
        (0..k).fold(self.unit, |acc, _| self.mul(acc, s))
    }

    pub fn is_idempotent(&self, s: usize) -> bool {
        self.mul(s, s) == s
    }

    /// The unique idempotent power of `s`.
    pub fn omega(&self, s: usize) -> usize {
        let mut p = s;
        loop {
            if self.is_idempotent(p) {
                return p;
            }
            p = self.mul(p, s);
        }
    }

    /// `s^(ω+1) = s^ω · s`.
    pub fn omega_plus_one(&self, s: usize) -> usize {
        self.mul(self.omega(s), s)
    }

    /// ω-powers of every element, indexed by element.
    pub fn omega_table(&self) -> Vec<usize> {
        self.elements().map(|s| self.omega(s)).collect()
    }

    pub fn idempotents(&self) -> Vec<usize> {
        self.elements().filter(|&s| self.is_idempotent(s)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        self.elements().all(|s| self.elements().all(|t| self.mul(s, t) == self.mul(t, s)))
    }

    /// True when every element has a two-sided inverse.
    pub fn is_group(&self) -> bool {
        self.elements().all(|s| self.elements().any(|t| self.mul(s, t) == self.unit && self.mul(t, s) == self.unit))
    }

    pub fn green(&self) -> Green {
        Green::new(self)
    }

    /// The set `X·Y`.
    pub fn mul_sets(&self, xs: &[usize], ys: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.size()];
        for &x in xs {
            for &y in ys {
                seen[self.mul(x, y)] = true;
            }
        }
        (0..self.size()).filter(|&i| seen[i]).collect()
    }

    /// True when `set` contains the unit and is closed under multiplication.
    pub fn is_submonoid(&self, set: &[usize]) -> bool {
        set.contains(&self.unit) && self.is_subsemigroup(set)
    }

    pub fn is_subsemigroup(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.size()];
        for &s in set {
            member[s] = true;
        }
        set.iter().all(|&s| set.iter().all(|&t| member[self.mul(s, t)]))
    }
}

/// A morphism from the free monoid over an alphabet into a finite monoid.
///
/// When the morphism is surjective every element carries its shortlex-least
/// witness word, and element indices follow shortlex order of witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    alphabet: Alphabet,
    monoid: FiniteMonoid,
    letters: Vec<usize>,
    witness: Vec<Option<Vec<usize>>>,
    accepting: Option<Vec<bool>>,
}

impl Morphism {
    pub fn new(alphabet: Alphabet, monoid: FiniteMonoid, letters: Vec<usize>) -> Result<Self, MonoidError> {
        if letters.len() != alphabet.len() || letters.iter().any(|&x| x >= monoid.size()) {
            return Err(MonoidError::BadTable);
        }
        let witness = shortlex_witnesses(&monoid, &letters);
        Ok(Morphism { alphabet, monoid, letters, witness, accepting: None })
    }

    /// Attaches the accepting set of a recognized language.
    pub fn with_accepting(mut self, accepting: Vec<bool>) -> Self {
        assert_eq!(accepting.len(), self.monoid.size());
        self.accepting = Some(accepting);
        self
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn size(&self) -> usize {
        self.monoid.size()
    }

    pub fn letter_image(&self, a: usize) -> usize {
        self.letters[a]
    }

    pub fn letter_images(&self) -> &[usize] {
        &self.letters
    }

    pub fn accepting(&self) -> Option<&[bool]> {
        self.accepting.as_deref()
    }

    pub fn eval(&self, word: &[usize]) -> usize {
        word.iter().fold(self.monoid.unit, |acc, &a| self.monoid.mul(acc, self.letters[a]))
    }

    pub fn eval_str(&self, word: &str) -> Result<usize, LangError> {
        Ok(self.eval(&self.alphabet.encode(word)?))
    }

    pub fn is_surjective(&self) -> bool {
        self.witness.iter().all(Option::is_some)
    }

    pub fn require_surjective(&self) -> Result<(), MonoidError> {
        if self.is_surjective() {
            Ok(())
        } else {
            Err(MonoidError::NotSurjective)
        }
    }

    /// Shortlex-least word mapped to `s`, if any.
    pub fn witness(&self, s: usize) -> Option<&[usize]> {
        self.witness[s].as_deref()
    }

    /// Witness word as a string; unreachable elements print as `#s`.
    pub fn label(&self, s: usize) -> String {
        match &self.witness[s] {
            Some(w) => self.alphabet.decode(w),
            None => format!("#{s}"),
        }
    }

    /// Looks up an element by one of its words.
    pub fn element_of(&self, word: &str) -> Result<usize, LangError> {
        self.eval_str(word)
    }

    /// `α(A⁺)`.
    pub fn nonempty_image(&self) -> Vec<usize> {
        let mut seen = vec![false; self.size()];
        let mut stack: Vec<usize> = Vec::new();
        for &x in &self.letters {
            if !seen[x] {
                seen[x] = true;
                stack.push(x);
            }
        }
        while let Some(s) = stack.pop() {
            for &x in &self.letters {
                let t = self.monoid.mul(s, x);
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        (0..self.size()).filter(|&i| seen[i]).collect()
    }

    /// Automaton over the Cayley graph accepting `α⁻¹(targets)`.
    pub fn preimage_dfa(&self, targets: &[usize]) -> Dfa {
        let mut accepting = vec![false; self.size()];
        for &t in targets {
            accepting[t] = true;
        }
        let delta =
            self.monoid.elements().map(|s| self.letters.iter().map(|&x| self.monoid.mul(s, x)).collect()).collect();
        Dfa::new(self.alphabet.clone(), self.monoid.unit, accepting, delta).expect("well-formed").minimize()
    }

    /// True when this morphism recognizes the language of `d`.
    pub fn recognizes(&self, d: &Dfa) -> bool {
        if d.alphabet() != &self.alphabet {
            return false;
        }
        let mut verdict: Vec<Option<bool>> = vec![None; self.size()];
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![(self.monoid.unit, d.initial())];
        seen.insert(stack[0]);
        while let Some((s, q)) = stack.pop() {
            let acc = d.is_accepting(q);
            match verdict[s] {
                Some(v) if v != acc => return false,
                _ => verdict[s] = Some(acc),
            }
            for a in 0..self.alphabet.len() {
                let next = (self.monoid.mul(s, self.letters[a]), d.step(q, a));
                if seen.insert(next) {
                    stack.push(next);
                }
            }
        }
        true
    }
}

/// Shortlex-least witness per element, via BFS over letter steps.
fn shortlex_witnesses(m: &FiniteMonoid, letters: &[usize]) -> Vec<Option<Vec<usize>>> {
    let mut witness: Vec<Option<Vec<usize>>> = vec![None; m.size()];
    witness[m.unit] = Some(Vec::new());
    let mut queue = std::collections::VecDeque::from([m.unit]);
    while let Some(s) = queue.pop_front() {
        for (a, &x) in letters.iter().enumerate() {
            let t = m.mul(s, x);
            if witness[t].is_none() {
                let mut w = witness[s].clone().expect("visited");
                w.push(a);
                witness[t] = Some(w);
                queue.push_back(t);
            }
        }
    }
    witness
}

/// Generates the submonoid spanned by letter images in an arbitrary
/// multiplicative structure, numbering elements in shortlex order of their
/// least witnesses. Returns the morphism and the concrete elements.
pub fn generate<T, F>(alphabet: &Alphabet, unit: T, letters: &[T], mul: F) -> (Morphism, Vec<T>)
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut ids: HashMap<T, usize> = HashMap::from([(unit.clone(), 0)]);
    let mut elems = vec![unit];
    let mut i = 0;
    while i < elems.len() {
        for x in letters {
            let y = mul(&elems[i], x);
            if !ids.contains_key(&y) {
                ids.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
        i += 1;
    }
    let table: Vec<Vec<usize>> = elems.iter().map(|x| elems.iter().map(|y| ids[&mul(x, y)]).collect()).collect();
    let letter_ids = letters.iter().map(|x| ids[x]).collect();
    let monoid = FiniteMonoid::from_table_unchecked(table, 0);
    let morphism = Morphism::new(alphabet.clone(), monoid, letter_ids).expect("generated");
    (morphism, elems)
}

/// Transition monoid of an automaton: its transformations under words.
pub fn transition_monoid(d: &Dfa) -> Morphism {
    let n = d.num_states();
    let unit: Vec<usize> = (0..n).collect();
    let letters: Vec<Vec<usize>> = (0..d.alphabet().len()).map(|a| (0..n).map(|q| d.step(q, a)).collect()).collect();
    let (m, elems) = generate(d.alphabet(), unit, &letters, |f, g| f.iter().map(|&q| g[q]).collect());
    let accepting = elems.iter().map(|f| d.is_accepting(f[d.initial()])).collect();
    m.with_accepting(accepting)
}

/// Syntactic morphism of the language of `d`, with the syntactic order
/// `s ≤ t` iff every context accepting `s` also accepts `t`.
pub fn syntactic_morphism(d: &Dfa) -> Morphism {
    let min = d.minimize();
    let n = min.num_states();
    let unit: Vec<usize> = (0..n).collect();
    let letters: Vec<Vec<usize>> =
        (0..min.alphabet().len()).map(|a| (0..n).map(|q| min.step(q, a)).collect()).collect();
    let (mut m, elems) = generate(min.alphabet(), unit, &letters, |f, g| f.iter().map(|&q| g[q]).collect());
    // Contexts are pairs (state q, element r) with q·s·r accepting.
    let size = elems.len();
    let contexts: Vec<crate::bitset::BitSet> = elems
        .iter()
        .map(|f| {
            let mut set = crate::bitset::BitSet::new(n * size);
            for q in 0..n {
                for (r, g) in elems.iter().enumerate() {
                    if min.is_accepting(g[f[q]]) {
                        set.insert(q * size + r);
                    }
                }
            }
            set
        })
        .collect();
    let order = (0..size).map(|s| (0..size).map(|t| contexts[s].is_subset(&contexts[t])).collect()).collect();
    m.monoid.order = Some(order);
    let accepting = elems.iter().map(|f| min.is_accepting(f[min.initial()])).collect();
    m.with_accepting(accepting)
}

/// Syntactic morphism of a language given by a regular expression.
pub fn syntactic_of_regex(src: &str, alphabet: &Alphabet) -> Result<Morphism, LangError> {
    Ok(syntactic_morphism(&crate::lang::compile_str(src, alphabet)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::compile_str;

    fn ab() -> Alphabet {
        Alphabet::new(['a', 'b']).unwrap()
    }

    fn syn(s: &str) -> Morphism {
        syntactic_of_regex(s, &ab()).unwrap()
    }

    #[test]
    fn transition_monoid_sizes() {
        assert_eq!(transition_monoid(&compile_str("A*aA*", &ab()).unwrap()).size(), 2);
        assert_eq!(transition_monoid(&compile_str("(ab)*", &ab()).unwrap()).size(), 6);
        assert_eq!(transition_monoid(&compile_str("A*", &ab()).unwrap()).size(), 1);
    }

    #[test]
    fn contains_a_order() {
        let m = syn("A*aA*");
        let (a, b) = (m.element_of("a").unwrap(), m.element_of("b").unwrap());
        assert_eq!(m.monoid().leq(b, a), Some(true));
        assert_eq!(m.monoid().leq(a, b), Some(false));
        assert_eq!(m.label(b), "");
    }

    #[test]
    fn b_star_order() {
        let m = syn("b*");
        let (a, b) = (m.element_of("a").unwrap(), m.element_of("b").unwrap());
        assert_eq!(m.monoid().leq(a, b), Some(true));
        assert!(m.accepting().unwrap()[b]);
    }

    #[test]
    fn ab_star_relations() {
        let m = syn("(ab)*");
        assert_eq!(m.size(), 6);
        let e = |w: &str| m.element_of(w).unwrap();
        assert_eq!(e("aba"), e("a"));
        assert_eq!(e("bab"), e("b"));
        assert_eq!(e("aa"), e("bb"));
        let labels: Vec<String> = (0..6).map(|s| m.label(s)).collect();
        assert_eq!(labels, ["", "a", "b", "aa", "ab", "ba"]);
    }

    #[test]
    fn omega_and_idempotents() {
        let m = syn("(ab)*");
        let mo = m.monoid();
        let e = |w: &str| m.element_of(w).unwrap();
        assert_eq!(mo.omega(e("ab")), e("ab"));
        assert_eq!(mo.omega(e("a")), e("aa"));
        let mut ids: Vec<String> = mo.idempotents().iter().map(|&s| m.label(s)).collect();
        ids.sort();
        assert_eq!(ids, ["", "aa", "ab", "ba"]);
        let z2 = syn("(AA)*");
        assert_eq!(z2.monoid().idempotents(), vec![z2.monoid().unit()]);
        assert!(z2.monoid().is_group());
        assert!(!mo.is_group());
        assert_eq!(z2.monoid().omega(z2.element_of("a").unwrap()), z2.monoid().unit());
    }

    #[test]
    fn rejects_non_associative() {
        let t = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 2, 2]];
        assert!(FiniteMonoid::new(t, 0, None).is_err());
    }

    #[test]
    fn recognizes() {
        let m = syn("(ab)*");
        assert!(m.recognizes(&compile_str("(ab)*a", &ab()).unwrap()));
        assert!(!m.recognizes(&compile_str("A*aA*", &ab()).unwrap()));
        let pre = m.preimage_dfa(&[m.element_of("ab").unwrap()]);
        assert!(pre.equivalent(&compile_str("(ab)(ab)*", &ab()).unwrap()));
    }
}
