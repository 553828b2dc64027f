use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::regex::{Nfa, Regex};
use super::{Alphabet, LangError};

/// Complete deterministic automaton over an [`Alphabet`].
///
/// Automata produced by [`compile`], [`Dfa::minimize`] and the Boolean
/// combinators are minimal and canonical: states are numbered in BFS order
/// from the initial state, exploring letters in alphabet order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    initial: usize,
    accepting: Vec<bool>,
    delta: Vec<Vec<usize>>,
}

/// Boolean operation for [`combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    Union,
    Intersection,
    Difference,
    SymmetricDifference,
}

impl Dfa {
    /// Builds an automaton from a complete transition table `delta[state][letter]`.
    pub fn new(
        alphabet: Alphabet,
        initial: usize,
        accepting: Vec<bool>,
        delta: Vec<Vec<usize>>,
    ) -> Result<Self, LangError> {
        let n = delta.len();
        if n == 0 || initial >= n || accepting.len() != n {
            return Err(LangError::InvalidDfa("state count mismatch".into()));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(LangError::InvalidDfa(format!("state {q} has {} transitions", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&p| p >= n) {
                return Err(LangError::InvalidDfa(format!("transition to unknown state {bad}")));
            }
        }
        Ok(Dfa { alphabet, initial, accepting, delta })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn accepting(&self) -> &[bool] {
        &self.accepting
    }

    pub fn step(&self, q: usize, a: usize) -> usize {
        self.delta[q][a]
    }

    pub fn run(&self, q: usize, word: &[usize]) -> usize {
        word.iter().fold(q, |q, &a| self.delta[q][a])
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.accepting[self.run(self.initial, word)]
    }

    /// Membership of a word written as a string of letters.
    pub fn accepts_str(&self, word: &str) -> Result<bool, LangError> {
        Ok(self.accepts(&self.alphabet.encode(word)?))
    }

    /// Same automaton started from another state (a left quotient when
    /// `q` is reached by a word).
    pub fn with_initial(&self, q: usize) -> Dfa {
        Dfa { initial: q, ..self.clone() }.minimize()
    }

    /// Left quotient `u⁻¹L`.
    pub fn left_quotient(&self, u: &[usize]) -> Dfa {
        self.with_initial(self.run(self.initial, u))
    }

    /// Right quotient `Lu⁻¹`.
    pub fn right_quotient(&self, u: &[usize]) -> Dfa {
        let accepting = (0..self.num_states()).map(|q| self.accepting[self.run(q, u)]).collect();
        Dfa { accepting, ..self.clone() }.minimize()
    }

    pub fn complement(&self) -> Dfa {
        let accepting = self.accepting.iter().map(|b| !b).collect();
        Dfa { accepting, ..self.clone() }.minimize()
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            for &p in &self.delta[q] {
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    pub fn is_empty(&self) -> bool {
        self.reachable().iter().zip(&self.accepting).all(|(r, a)| !(r & a))
    }

    /// Shortlex-least accepted word, if any.
    pub fn shortest_word(&self) -> Option<Vec<usize>> {
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.num_states()];
        let mut seen = vec![false; self.num_states()];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            if self.accepting[q] {
                let mut w = Vec::new();
                let mut cur = q;
                while let Some((p, a)) = parent[cur] {
                    w.push(a);
                    cur = p;
                }
                w.reverse();
                return Some(w);
            }
            for (a, &p) in self.delta[q].iter().enumerate() {
                if !seen[p] {
                    seen[p] = true;
                    parent[p] = Some((q, a));
                    queue.push_back(p);
                }
            }
        }
        None
    }

    /// Minimal canonical automaton for the same language.
    pub fn minimize(&self) -> Dfa {
        let reach = self.reachable();
        let states: Vec<usize> = (0..self.num_states()).filter(|&q| reach[q]).collect();
        // Moore partition refinement.
        let mut class: Vec<usize> = vec![0; self.num_states()];
        for &q in &states {
            class[q] = usize::from(self.accepting[q]);
        }
        let mut n_classes = 0;
        loop {
            let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next = vec![0; self.num_states()];
            for &q in &states {
                let sig = (class[q], self.delta[q].iter().map(|&p| class[p]).collect::<Vec<_>>());
                let len = ids.len();
                next[q] = *ids.entry(sig).or_insert(len);
            }
            let count = ids.len();
            class = next;
            if count == n_classes {
                break;
            }
            n_classes = count;
        }
        let mut delta = vec![vec![0; self.alphabet.len()]; n_classes];
        let mut accepting = vec![false; n_classes];
        for &q in &states {
            accepting[class[q]] = self.accepting[q];
            for (a, &p) in self.delta[q].iter().enumerate() {
                delta[class[q]][a] = class[p];
            }
        }
        Dfa { alphabet: self.alphabet.clone(), initial: class[self.initial], accepting, delta }.canonical()
    }

    /// Renumbers reachable states in BFS order; drops unreachable ones.
    pub fn canonical(&self) -> Dfa {
        let mut order = vec![usize::MAX; self.num_states()];
        let mut list = vec![self.initial];
        order[self.initial] = 0;
        let mut i = 0;
        while i < list.len() {
            let q = list[i];
            for &p in &self.delta[q] {
                if order[p] == usize::MAX {
                    order[p] = list.len();
                    list.push(p);
                }
            }
            i += 1;
        }
        let delta = list.iter().map(|&q| self.delta[q].iter().map(|&p| order[p]).collect()).collect();
        let accepting = list.iter().map(|&q| self.accepting[q]).collect();
        Dfa { alphabet: self.alphabet.clone(), initial: 0, accepting, delta }
    }

    /// Language equality.
    pub fn equivalent(&self, other: &Dfa) -> bool {
        self.alphabet == other.alphabet && self.minimize() == other.minimize()
    }

    /// Automaton for `A*` (or `∅` when `full` is false).
    pub fn universal(alphabet: &Alphabet, full: bool) -> Dfa {
        Dfa { alphabet: alphabet.clone(), initial: 0, accepting: vec![full], delta: vec![vec![0; alphabet.len()]] }
    }

    /// Reads the JSON exchange format. With `complete`, missing transitions
    /// go to a fresh rejecting sink; otherwise partial automata are rejected.
    pub fn from_json(text: &str, complete: bool) -> Result<Dfa, LangError> {
        let raw: DfaJson = serde_json::from_str(text).map_err(|e| LangError::Json(e.to_string()))?;
        raw.into_dfa(complete)
    }

    pub fn to_json_value(&self) -> DfaJson {
        let mut transitions = Vec::new();
        for (q, row) in self.delta.iter().enumerate() {
            for (a, &p) in row.iter().enumerate() {
                transitions.push(TransitionJson { from: q, on: self.alphabet.letter(a).to_string(), to: p });
            }
        }
        DfaJson {
            alphabet: self.alphabet.letters().iter().map(|c| c.to_string()).collect(),
            states: self.num_states(),
            initial: self.initial,
            accepting: (0..self.num_states()).filter(|&q| self.accepting[q]).collect(),
            transitions,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransitionJson {
    pub from: usize,
    pub on: String,
    pub to: usize,
}

/// Serialized automaton.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DfaJson {
    pub alphabet: Vec<String>,
    pub states: usize,
    pub initial: usize,
    pub accepting: Vec<usize>,
    pub transitions: Vec<TransitionJson>,
}

impl DfaJson {
    pub fn into_dfa(self, complete: bool) -> Result<Dfa, LangError> {
        let mut letters = Vec::new();
        for s in &self.alphabet {
            let mut it = s.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => letters.push(c),
                _ => return Err(LangError::InvalidDfa(format!("letter {s:?} is not a single character"))),
            }
        }
        let alphabet = Alphabet::new(letters)?;
        let n = self.states;
        if n == 0 || self.initial >= n {
            return Err(LangError::InvalidDfa("initial state out of range".into()));
        }
        let mut delta: Vec<Vec<Option<usize>>> = vec![vec![None; alphabet.len()]; n];
        for t in &self.transitions {
            let mut it = t.on.chars();
            let c = match (it.next(), it.next()) {
                (Some(c), None) => c,
                _ => return Err(LangError::InvalidDfa(format!("letter {:?} is not a single character", t.on))),
            };
            let a = alphabet.index(c).ok_or(LangError::UnknownLetter { letter: c, position: 0 })?;
            if t.from >= n || t.to >= n {
                return Err(LangError::InvalidDfa("transition refers to unknown state".into()));
            }
            match delta[t.from][a] {
                Some(p) if p != t.to => {
                    return Err(LangError::InvalidDfa(format!("state {} has two transitions on {c}", t.from)))
                }
                _ => delta[t.from][a] = Some(t.to),
            }
        }
        let mut accepting = vec![false; n];
        for &q in &self.accepting {
            if q >= n {
                return Err(LangError::InvalidDfa(format!("accepting state {q} out of range")));
            }
            accepting[q] = true;
        }
        let missing =
            delta.iter().enumerate().find_map(|(q, row)| row.iter().position(Option::is_none).map(|a| (q, a)));
        let mut full: Vec<Vec<usize>>;
        match missing {
            None => full = delta.into_iter().map(|row| row.into_iter().map(Option::unwrap).collect()).collect(),
            Some((q, a)) if !complete => {
                return Err(LangError::PartialDfa { state: q, letter: alphabet.letter(a) });
            }
            Some(_) => {
                let sink = n;
                full = delta.into_iter().map(|row| row.into_iter().map(|p| p.unwrap_or(sink)).collect()).collect();
                full.push(vec![sink; alphabet.len()]);
                accepting.push(false);
            }
        }
        Dfa::new(alphabet, self.initial, accepting, full)
    }
}

/// Compiles a regular expression into its minimal canonical automaton.
pub fn compile(regex: &Regex, alphabet: &Alphabet) -> Dfa {
    let nfa = Nfa::from_regex(regex, alphabet.len());
    let mut start = vec![nfa.start];
    nfa.closure(&mut start);
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut sets = vec![start.clone()];
    ids.insert(start, 0);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < sets.len() {
        let mut row = Vec::with_capacity(alphabet.len());
        for a in 0..alphabet.len() {
            let mut next: Vec<usize> =
                sets[i].iter().flat_map(|&q| nfa.moves[q].iter().filter(|(b, _)| *b == a).map(|&(_, p)| p)).collect();
            nfa.closure(&mut next);
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    ids.insert(next.clone(), sets.len());
                    sets.push(next);
                    sets.len() - 1
                }
            };
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    let accepting = sets.iter().map(|s| s.contains(&nfa.accept)).collect();
    Dfa { alphabet: alphabet.clone(), initial: 0, accepting, delta }.minimize()
}

/// Parses and compiles a regular expression in one step.
pub fn compile_str(src: &str, alphabet: &Alphabet) -> Result<Dfa, LangError> {
    Ok(compile(&super::parse_regex(src, alphabet)?, alphabet))
}

/// Product construction followed by minimization.
pub fn combine(x: &Dfa, y: &Dfa, op: BoolOp) -> Result<Dfa, LangError> {
    if x.alphabet != y.alphabet {
        return Err(LangError::AlphabetMismatch);
    }
    let ny = y.num_states();
    let n = x.num_states() * ny;
    let delta = (0..n)
        .map(|s| {
            let (p, q) = (s / ny, s % ny);
            (0..x.alphabet.len()).map(|a| x.delta[p][a] * ny + y.delta[q][a]).collect()
        })
        .collect();
    let accepting = (0..n)
        .map(|s| {
            let (p, q) = (x.accepting[s / ny], y.accepting[s % ny]);
            match op {
                BoolOp::Union => p || q,
                BoolOp::Intersection => p && q,
                BoolOp::Difference => p && !q,
                BoolOp::SymmetricDifference => p != q,
            }
        })
        .collect();
    Ok(Dfa { alphabet: x.alphabet.clone(), initial: x.initial * ny + y.initial, accepting, delta }.minimize())
}

/// Automaton for the marked concatenation `K·a·L`.
pub fn concat_marked(k: &Dfa, a: usize, l: &Dfa) -> Result<Dfa, LangError> {
    if k.alphabet != l.alphabet {
        return Err(LangError::AlphabetMismatch);
    }
    if a >= k.alphabet.len() {
        return Err(LangError::InvalidDfa("marker letter out of range".into()));
    }
    concat_general(k, Some(a), l)
}

/// Automaton for the concatenation `K·L`.
pub fn concat(k: &Dfa, l: &Dfa) -> Result<Dfa, LangError> {
    if k.alphabet != l.alphabet {
        return Err(LangError::AlphabetMismatch);
    }
    concat_general(k, None, l)
}

fn concat_general(k: &Dfa, marker: Option<usize>, l: &Dfa) -> Result<Dfa, LangError> {
    // Subset construction over (state of K, set of active states of L).
    type State = (usize, Vec<usize>);
    let enter = |q: usize, set: &mut Vec<usize>| {
        if marker.is_none() && k.accepting[q] {
            set.push(l.initial);
        }
        set.sort_unstable();
        set.dedup();
    };
    let mut s0 = Vec::new();
    enter(k.initial, &mut s0);
    let start: State = (k.initial, s0);
    let mut ids: HashMap<State, usize> = HashMap::from([(start.clone(), 0)]);
    let mut states = vec![start];
    let mut delta = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let (q, set) = states[i].clone();
        let mut row = Vec::new();
        for a in 0..k.alphabet.len() {
            let q2 = k.delta[q][a];
            let mut set2: Vec<usize> = set.iter().map(|&p| l.delta[p][a]).collect();
            if marker == Some(a) && k.accepting[q] {
                set2.push(l.initial);
            }
            enter(q2, &mut set2);
            let key = (q2, set2);
            let id = match ids.get(&key) {
                Some(&id) => id,
                None => {
                    ids.insert(key.clone(), states.len());
                    states.push(key);
                    states.len() - 1
                }
            };
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    let accepting = states.iter().map(|(_, set)| set.iter().any(|&p| l.accepting[p])).collect();
    Ok(Dfa { alphabet: k.alphabet.clone(), initial: 0, accepting, delta }.minimize())
}

/// Kind of unambiguity checked by [`is_marked_concat_unambiguous`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConcatMode {
    /// Every word of `KaL` has a unique factorization.
    Unambiguous,
    /// `K ∩ KaA* = ∅`.
    LeftDeterministic,
    /// `L ∩ A*aL = ∅`.
    RightDeterministic,
}

/// Decides whether the marked concatenation `KaL` has the requested property.
pub fn is_marked_concat_unambiguous(k: &Dfa, a: usize, l: &Dfa, mode: ConcatMode) -> Result<bool, LangError> {
    if k.alphabet != l.alphabet {
        return Err(LangError::AlphabetMismatch);
    }
    let all = Dfa::universal(&k.alphabet, true);
    match mode {
        ConcatMode::LeftDeterministic => Ok(combine(k, &concat_marked(k, a, &all)?, BoolOp::Intersection)?.is_empty()),
        ConcatMode::RightDeterministic => Ok(combine(l, &concat_marked(&all, a, l)?, BoolOp::Intersection)?.is_empty()),
        ConcatMode::Unambiguous => Ok(!has_double_factorization(k, a, l)),
    }
}

/// Searches for `u ∈ K`, `uax ∈ K`, `xav ∈ L`, `v ∈ L`: the witness shape of
/// two distinct factorizations `u·a·(xav) = (uax)·a·v`.
fn has_double_factorization(k: &Dfa, a: usize, l: &Dfa) -> bool {
    // Phase 0 reads u, phase 1 reads x, phase 2 reads v.
    // Tracked runs: K over u·a·x, L over x·a·v, L over v.
    let mut seen = std::collections::HashSet::new();
    let start = (0u8, k.initial, 0usize, 0usize);
    let mut queue = VecDeque::from([start]);
    seen.insert(start);
    let push = |s: (u8, usize, usize, usize), seen: &mut std::collections::HashSet<_>, queue: &mut VecDeque<_>| {
        if seen.insert(s) {
            queue.push_back(s);
        }
    };
    while let Some((phase, qk, ql1, ql2)) = queue.pop_front() {
        if phase == 2 && l.accepting[ql1] && l.accepting[ql2] {
            return true;
        }
        for b in 0..k.alphabet.len() {
            match phase {
                0 => {
                    push((0, k.delta[qk][b], 0, 0), &mut seen, &mut queue);
                    if b == a && k.accepting[qk] {
                        push((1, k.delta[qk][b], l.initial, 0), &mut seen, &mut queue);
                    }
                }
                1 => {
                    push((1, k.delta[qk][b], l.delta[ql1][b], 0), &mut seen, &mut queue);
                    if b == a && k.accepting[qk] {
                        push((2, 0, l.delta[ql1][b], l.initial), &mut seen, &mut queue);
                    }
                }
                _ => push((2, 0, l.delta[ql1][b], l.delta[ql2][b]), &mut seen, &mut queue),
            }
        }
    }
    false
}
