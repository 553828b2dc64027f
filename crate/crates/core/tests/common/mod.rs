//! Brute-force oracles shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::HashSet;

use hierarch::lang::{Alphabet, Dfa};
use hierarch::monoid::{FiniteMonoid, Morphism};
use hierarch::prevariety::Relation;

/// Accepting contexts of `w` with `|x|, |y| ≤ ctx`: for each `x` in
/// enumeration order, the bitmask of the `y` with `xwy` accepted.
pub fn contexts(d: &Dfa, w: &[usize], ctx: usize) -> Vec<u64> {
    let all = d.alphabet().words_up_to(ctx);
    assert!(all.len() <= 64, "context enumeration too large");
    all.iter()
        .map(|x| {
            let q = d.run(d.run(d.initial(), x), w);
            all.iter().enumerate().filter(|(_, y)| d.is_accepting(d.run(q, y))).fold(0u64, |m, (i, _)| m | 1 << i)
        })
        .collect()
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Checks `alpha` against the Myhill-Nerode classes of words up to length
/// `len`, distinguished by contexts up to length `ctx`: same classes, same
/// count, and the order as inclusion of accepting contexts.
pub fn check_syntactic(d: &Dfa, alpha: &Morphism, len: usize, ctx: usize) -> Result<(), String> {
    let words = d.alphabet().words_up_to(len);
    let sigs: Vec<_> = words.iter().map(|w| contexts(d, w, ctx)).collect();
    let distinct: HashSet<_> = sigs.iter().collect();
    if distinct.len() != alpha.size() {
        return Err(format!("{} context classes vs monoid of size {}", distinct.len(), alpha.size()));
    }
    let imgs: Vec<usize> = words.iter().map(|w| alpha.eval(w)).collect();
    for i in 0..words.len() {
        for j in 0..words.len() {
            if (sigs[i] == sigs[j]) != (imgs[i] == imgs[j]) {
                return Err(format!("class mismatch on {:?} {:?}", words[i], words[j]));
            }
            let leq = alpha.monoid().leq(imgs[i], imgs[j]).ok_or("unordered monoid")?;
            if subset(&sigs[i], &sigs[j]) != leq {
                return Err(format!("order mismatch on {:?} {:?}", words[i], words[j]));
            }
        }
    }
    Ok(())
}

/// Associativity, unit, Green compatibility with brute-force ideals, the
/// J-class lemma for R and L, and idempotency of ω-powers.
pub fn check_green_invariants(m: &FiniteMonoid) -> Result<(), String> {
    let n = m.size();
    for s in 0..n {
        if m.mul(m.unit(), s) != s || m.mul(s, m.unit()) != s {
            return Err(format!("unit fails on {s}"));
        }
        for t in 0..n {
            for u in 0..n {
                if m.mul(m.mul(s, t), u) != m.mul(s, m.mul(t, u)) {
                    return Err(format!("associativity fails on {s},{t},{u}"));
                }
            }
        }
    }
    let right: Vec<HashSet<usize>> = (0..n).map(|t| (0..n).map(|y| m.mul(t, y)).collect()).collect();
    let left: Vec<HashSet<usize>> = (0..n).map(|t| (0..n).map(|x| m.mul(x, t)).collect()).collect();
    let two: Vec<HashSet<usize>> = (0..n)
        .map(|t| (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| m.mul(m.mul(x, t), y)).collect())
        .collect();
    let g = m.green();
    for s in 0..n {
        for t in 0..n {
            let (r, l, j) = (right[t].contains(&s), left[t].contains(&s), two[t].contains(&s));
            if g.r_leq(s, t) != r || g.l_leq(s, t) != l || g.j_leq(s, t) != j {
                return Err(format!("Green preorder mismatch on {s},{t}"));
            }
            let j_eq = j && two[s].contains(&t);
            if j_eq && r && !right[s].contains(&t) {
                return Err(format!("J and <=_R without R on {s},{t}"));
            }
            if j_eq && l && !left[s].contains(&t) {
                return Err(format!("J and <=_L without L on {s},{t}"));
            }
        }
        let w = m.omega(s);
        if m.mul(w, w) != w {
            return Err(format!("omega({s}) not idempotent"));
        }
        if !(1..=n).any(|k| m.pow(s, k) == w) {
            return Err(format!("omega({s}) is not a power of {s}"));
        }
    }
    Ok(())
}

/// Images `α(A^k)` for `k = 0..=max_len`.
fn length_images(alpha: &Morphism, max_len: usize) -> Vec<HashSet<usize>> {
    let mut out = vec![HashSet::from([alpha.monoid().unit()])];
    for k in 1..=max_len {
        let next = out[k - 1]
            .iter()
            .flat_map(|&s| alpha.letter_images().iter().map(move |&a| alpha.monoid().mul(s, a)))
            .collect();
        out.push(next);
    }
    out
}

/// `(s, t)` such that for every `q ≤ max_q` some words of length at most
/// `max_len` with images `s` and `t` have lengths congruent modulo `q`.
pub fn brute_pairs_mod(alpha: &Morphism, max_q: usize, max_len: usize) -> Relation {
    let imgs = length_images(alpha, max_len);
    let residues = |s: usize, q: usize| -> HashSet<usize> {
        (0..=max_len).filter(|&k| imgs[k].contains(&s)).map(|k| k % q).collect()
    };
    Relation::from_fn(alpha.size(), |s, t| (1..=max_q).all(|q| !residues(s, q).is_disjoint(&residues(t, q))))
}

/// Elements `s` such that for every `q ≤ max_q` some word of length at most
/// `max_len` with image `s` has every letter count divisible by `q`.
pub fn brute_kernel_amt(alpha: &Morphism, max_q: usize, max_len: usize) -> Vec<usize> {
    let k = alpha.alphabet().len();
    let m = alpha.monoid();
    let mut ok = vec![true; alpha.size()];
    for q in 1..=max_q {
        let mut seen: HashSet<(usize, Vec<usize>)> = HashSet::new();
        let mut layer = vec![(m.unit(), vec![0usize; k])];
        seen.insert(layer[0].clone());
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (s, counts) in &layer {
                for a in 0..k {
                    let mut c = counts.clone();
                    c[a] = (c[a] + 1) % q;
                    let state = (m.mul(*s, alpha.letter_image(a)), c);
                    if seen.insert(state.clone()) {
                        next.push(state);
                    }
                }
            }
            layer = next;
        }
        for (s, flag) in ok.iter_mut().enumerate() {
            if !seen.contains(&(s, vec![0; k])) {
                *flag = false;
            }
        }
    }
    (0..alpha.size()).filter(|&s| ok[s]).collect()
}

pub fn ab() -> Alphabet {
    Alphabet::new(['a', 'b']).unwrap()
}
