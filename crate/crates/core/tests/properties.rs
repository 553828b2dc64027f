mod common;

use proptest::prelude::*;
use rand::Rng;

use hierarch::corpus::{self, random_dfa};
use hierarch::covering::{cover_report, decide_cover, synthesize_full_cover, CoverError};
use hierarch::lang::{combine, BoolOp, Dfa};
use hierarch::logic::{
    eval_fo2, fo2_to_tl, tl_equiv, tl_equiv_classes, tl_positions, tl_to_fo2_sentence, Env, Fo, PointedWord, Term, Var,
};
use hierarch::monoid::syntactic_of_regex;
use hierarch::prevariety::Oracle;

fn small_dfa(seed: u64) -> Dfa {
    random_dfa(&mut corpus::rng(seed), &common::ab(), 3)
}

/// Random FO² formula whose free variables are among those in `scope`.
fn random_fo2<R: Rng>(rng: &mut R, env: &Env, depth: usize, scope: &[Var]) -> Fo {
    let names: Vec<&str> = env.names().collect();
    let term = |rng: &mut R| -> Term {
        let k = rng.gen_range(0..scope.len() + 2);
        match k {
            0 => Term::Min,
            1 => Term::Max,
            i => Term::Var(scope[i - 2]),
        }
    };
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..4) {
            0 if !scope.is_empty() => {
                Fo::Label(if rng.gen() { 'a' } else { 'b' }, Term::Var(scope[rng.gen_range(0..scope.len())]))
            }
            1 => Fo::Eq(term(rng), term(rng)),
            2 | 3 => Fo::Infix(names[rng.gen_range(0..names.len())].to_string(), term(rng), term(rng)),
            _ => Fo::True,
        };
    }
    match rng.gen_range(0..5) {
        0 => Fo::Not(Box::new(random_fo2(rng, env, depth - 1, scope))),
        1 => {
            Fo::And(Box::new(random_fo2(rng, env, depth - 1, scope)), Box::new(random_fo2(rng, env, depth - 1, scope)))
        }
        2 => Fo::Or(Box::new(random_fo2(rng, env, depth - 1, scope)), Box::new(random_fo2(rng, env, depth - 1, scope))),
        _ => {
            let v = if rng.gen() { Var::X } else { Var::Y };
            let mut inner: Vec<Var> = scope.to_vec();
            if !inner.contains(&v) {
                inner.push(v);
            }
            let body = Box::new(random_fo2(rng, env, depth - 1, &inner));
            if rng.gen() {
                Fo::Exists(v, body)
            } else {
                Fo::Forall(v, body)
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fo2_to_tl_preserves_sentences(seed in any::<u64>()) {
        let mut env = corpus::logic_env();
        let phi = random_fo2(&mut corpus::rng(seed), &env, 4, &[]);
        let tl = fo2_to_tl(&phi, &mut env).unwrap();
        prop_assert!(tl.is_tl());
        for w in env.alphabet().words_up_to(5) {
            prop_assert_eq!(
                tl_positions(&tl, &w, &env).unwrap()[0],
                eval_fo2(&phi, &w, &env, &[None, None]).unwrap(),
                "{} vs {} on {:?}", phi, tl, w
            );
        }
    }

    #[test]
    fn tl_fo2_tl_round_trip(seed in any::<u64>()) {
        let mut env = corpus::logic_env();
        let phi = corpus::random_tl(&mut corpus::rng(seed), &env, 3, false);
        let back = fo2_to_tl(&tl_to_fo2_sentence(&phi).unwrap(), &mut env).unwrap();
        for w in env.alphabet().words_up_to(5) {
            prop_assert_eq!(tl_positions(&phi, &w, &env).unwrap()[0], tl_positions(&back, &w, &env).unwrap()[0]);
        }
    }

    #[test]
    fn tl_equiv_is_a_monotone_congruence(seed in any::<u64>()) {
        let ab = common::ab();
        let eta = syntactic_of_regex("(AA)*", &ab).unwrap();
        let mut rng = corpus::rng(seed);
        let word = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<usize> { (0..rng.gen_range(0..5)).map(|_| rng.gen_range(0..2)).collect() };
        let words: Vec<Vec<usize>> = (0..6).map(|_| word(&mut rng)).collect();
        for k in 0..3 {
            let c = tl_equiv_classes(k, &eta, &words);
            let c1 = tl_equiv_classes(k + 1, &eta, &words);
            for i in 0..words.len() {
                for j in 0..words.len() {
                    let eq = c[i][0] == c[j][0];
                    prop_assert_eq!(eq, c[j][0] == c[i][0]);
                    if c1[i][0] == c1[j][0] {
                        prop_assert!(eq, "rank {} not refined by rank {}", k, k + 1);
                    }
                    for l in 0..words.len() {
                        if eq && c[j][0] == c[l][0] {
                            prop_assert_eq!(c[i][0], c[l][0]);
                        }
                    }
                }
            }
            let (u, u2, v, v2) = (&words[0], &words[1], &words[2], &words[3]);
            let pw = |w: Vec<usize>| PointedWord::new(w, 0).unwrap();
            if tl_equiv(k, &eta, &pw(u.clone()), &pw(u2.clone())) && tl_equiv(k, &eta, &pw(v.clone()), &pw(v2.clone())) {
                prop_assert!(tl_equiv(k, &eta, &pw([u.clone(), v.clone()].concat()), &pw([u2.clone(), v2.clone()].concat())));
            }
        }
    }

    #[test]
    fn covering_is_monotone_in_the_side_languages(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (l0, l1, l2) = (small_dfa(a), small_dfa(b), small_dfa(c));
        let one = decide_cover(&l0, std::slice::from_ref(&l1), &Oracle::At).unwrap();
        let two = decide_cover(&l0, &[l1, l2], &Oracle::At).unwrap();
        prop_assert!(!one || two);
    }

    #[test]
    fn synthesized_cover_is_sound(a in any::<u64>(), b in any::<u64>()) {
        let (l0, l1) = (small_dfa(a), small_dfa(b));
        let report = cover_report(&l0, std::slice::from_ref(&l1), &Oracle::At).unwrap();
        report.saturated.verify(4096).unwrap();
        prop_assume!(report.saturated.explicit(512).is_some(), "saturated set too large for a quick synthesis");
        let blocks = match synthesize_full_cover(&report.saturated) {
            Ok(b) => b,
            Err(CoverError::SizeGuard(_)) => return Err(TestCaseError::reject("saturated set too large to enumerate")),
            Err(e) => panic!("{e}"),
        };
        let mut union = Dfa::universal(l0.alphabet(), false);
        for blk in &blocks {
            union = combine(&union, &blk.dfa, BoolOp::Union).unwrap();
            let meets_l0 = !combine(&blk.dfa, &l0, BoolOp::Intersection).unwrap().is_empty();
            let meets_l1 = !combine(&blk.dfa, &l1, BoolOp::Intersection).unwrap().is_empty();
            if report.result.coverable && meets_l0 {
                prop_assert!(!meets_l1, "block {} meets both languages", blk.description);
            }
        }
        prop_assert!(union.complement().is_empty());
    }
}
