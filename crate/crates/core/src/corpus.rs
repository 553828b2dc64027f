//! Named fixture languages and seeded random corpora.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lang::{
    combine, compile_str, concat_marked, is_marked_concat_unambiguous, Alphabet, BoolOp, ConcatMode, Dfa,
};
use crate::logic::{Env, Tl};
use crate::monoid::syntactic_morphism;

/// `(name, regex, alphabet)` of the fixture languages.
pub const FIXTURES: [(&str, &str, &str); 6] = [
    ("F1", "A*aA*", "ab"),
    ("F2", "b*", "ab"),
    ("F3", "(ab)*", "ab"),
    ("F4", "(AA)*", "ab"),
    ("F5", "ab*", "ab"),
    ("F6", "(aa)*", "a"),
];

/// Fixture by name; a `co` prefix gives the complement.
pub fn fixture(name: &str) -> Option<Dfa> {
    let (base, negate) = match name.strip_prefix("co") {
        Some(rest) => (rest, true),
        None => (name, false),
    };
    let (_, regex, letters) = FIXTURES.iter().find(|(n, _, _)| *n == base)?;
    let d = compile_str(regex, &Alphabet::from_str_letters(letters).ok()?).ok()?;
    Some(if negate { d.complement() } else { d })
}

pub fn all_fixtures() -> Vec<(&'static str, Dfa)> {
    FIXTURES.iter().map(|(n, _, _)| (*n, fixture(n).expect("fixture"))).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Minimized automaton from a uniformly random complete table with
/// `1..=max_states` states.
pub fn random_dfa<R: Rng>(rng: &mut R, alphabet: &Alphabet, max_states: usize) -> Dfa {
    let n = rng.gen_range(1..=max_states);
    let delta = (0..n).map(|_| (0..alphabet.len()).map(|_| rng.gen_range(0..n)).collect()).collect();
    let accepting = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    Dfa::new(alphabet.clone(), 0, accepting, delta).expect("well formed").minimize()
}

/// `count` random minimal automata whose syntactic monoid has at most
/// `monoid_cap` elements.
pub fn random_dfas(seed: u64, count: usize, max_states: usize, monoid_cap: usize) -> Vec<Dfa> {
    let alphabet = Alphabet::new(['a', 'b']).expect("alphabet");
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let d = random_dfa(&mut rng, &alphabet, max_states);
        if syntactic_morphism(&d).size() <= monoid_cap {
            out.push(d);
        }
    }
    out
}

/// `{All = A*, Bst = b*, Ap = a⁺}` over `{a, b}`.
pub fn logic_env() -> Env {
    let mut env = Env::new(Alphabet::new(['a', 'b']).expect("alphabet"));
    for (name, regex) in [("All", "A*"), ("Bst", "b*"), ("Ap", "aa*")] {
        env.insert_regex(name, regex).expect("valid regex");
    }
    env
}

/// Random formula of depth at most `depth` over the languages of `env`,
/// with `X`/`Y` when `next` is set.
pub fn random_tl<R: Rng>(rng: &mut R, env: &Env, depth: usize, next: bool) -> Tl {
    let names: Vec<&str> = env.names().collect();
    let letters = env.alphabet().letters();
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..6) {
            0 => Tl::True,
            1 => Tl::Min,
            2 => Tl::Max,
            3 => Tl::False,
            _ => Tl::Letter(*letters.choose(rng).expect("letters")),
        };
    }
    let sub = |rng: &mut R| Box::new(random_tl(rng, env, depth - 1, next));
    let ops = if next { 7 } else { 5 };
    match rng.gen_range(0..ops) {
        0 => Tl::Not(sub(rng)),
        1 => Tl::And(sub(rng), sub(rng)),
        2 => Tl::Or(sub(rng), sub(rng)),
        3 => Tl::Finally(names.choose(rng).expect("names").to_string(), sub(rng)),
        4 => Tl::Previously(names.choose(rng).expect("names").to_string(), sub(rng)),
        5 => Tl::Next(sub(rng)),
        _ => Tl::Yesterday(sub(rng)),
    }
}

/// `count` random formulas of depth at most 3.
pub fn random_tl_corpus(seed: u64, count: usize, env: &Env, next: bool) -> Vec<Tl> {
    let mut rng = rng(seed);
    (0..count).map(|_| random_tl(&mut rng, env, 3, next)).collect()
}

/// Language of words whose set of letters is one of the chosen sets.
pub fn alphabet_testing<R: Rng>(rng: &mut R, alphabet: &Alphabet) -> Dfa {
    let k = alphabet.len();
    let n = 1usize << k;
    let delta = (0..n).map(|s| (0..k).map(|a| s | 1 << a).collect()).collect();
    let accepting = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    Dfa::new(alphabet.clone(), 0, accepting, delta).expect("well formed").minimize()
}

/// Random language built from alphabet-testing languages by disjoint unions
/// and left or right deterministic marked concatenations.
pub fn random_deterministic_product<R: Rng>(rng: &mut R, alphabet: &Alphabet, depth: usize) -> Dfa {
    if depth == 0 {
        return alphabet_testing(rng, alphabet);
    }
    for _ in 0..16 {
        let k = random_deterministic_product(rng, alphabet, depth - 1);
        let l = random_deterministic_product(rng, alphabet, depth - 1);
        if rng.gen_bool(0.3) {
            if combine(&k, &l, BoolOp::Intersection).expect("alphabet").is_empty() {
                return combine(&k, &l, BoolOp::Union).expect("alphabet");
            }
        } else {
            let a = rng.gen_range(0..alphabet.len());
            let mode = if rng.gen_bool(0.5) { ConcatMode::LeftDeterministic } else { ConcatMode::RightDeterministic };
            if is_marked_concat_unambiguous(&k, a, &l, mode).expect("alphabet") {
                return concat_marked(&k, a, &l).expect("alphabet");
            }
        }
    }
    alphabet_testing(rng, alphabet)
}

/// `count` generated languages of depth at most 2 with syntactic monoid of
/// at most `monoid_cap` elements.
pub fn random_deterministic_products(seed: u64, count: usize, monoid_cap: usize) -> Vec<Dfa> {
    let alphabet = Alphabet::new(['a', 'b']).expect("alphabet");
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let depth = rng.gen_range(1..=2);
        let d = random_deterministic_product(&mut rng, &alphabet, depth);
        if syntactic_morphism(&d).size() <= monoid_cap {
            out.push(d);
        }
    }
    out
}
