//! Rank-k equivalence of pointed words for TL formulas whose modalities are
//! recognized by a fixed morphism, computed by the back-and-forth
//! conditions: same label, and every move forward or backward to a
//! position with a given infix image can be answered at rank k-1.

use std::collections::{BTreeSet, HashMap};

use super::{label_at, PointedWord};
use crate::monoid::Morphism;

/// Class of every position of every word under rank-`k` equivalence.
/// Class ids are shared across words.
pub fn tl_equiv_classes(k: usize, eta: &Morphism, words: &[Vec<usize>]) -> Vec<Vec<usize>> {
    // Images of all infixes, forward from each position.
    let infixes: Vec<Vec<Vec<usize>>> = words
        .iter()
        .map(|w| {
            let n = w.len() + 2;
            (0..n)
                .map(|i| {
                    let mut row = vec![usize::MAX; n];
                    let mut s = eta.monoid().unit();
                    for j in i + 1..n {
                        if j > i + 1 {
                            s = eta.monoid().mul(s, eta.letter_image(w[j - 2]));
                        }
                        row[j] = s;
                    }
                    row
                })
                .collect()
        })
        .collect();
    let mut ids: HashMap<Option<usize>, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = words
        .iter()
        .map(|w| {
            (0..w.len() + 2)
                .map(|i| {
                    let key = match i {
                        0 => None,
                        i if i == w.len() + 1 => Some(usize::MAX),
                        i => label_at(w, i),
                    };
                    let next = ids.len();
                    *ids.entry(key).or_insert(next)
                })
                .collect()
        })
        .collect();
    type Sig = (usize, BTreeSet<(usize, usize)>, BTreeSet<(usize, usize)>);
    for _ in 0..k {
        let mut sig_ids: HashMap<Sig, usize> = HashMap::new();
        let next: Vec<Vec<usize>> = words
            .iter()
            .enumerate()
            .map(|(wi, w)| {
                let n = w.len() + 2;
                (0..n)
                    .map(|i| {
                        let fwd = (i + 1..n).map(|j| (infixes[wi][i][j], classes[wi][j])).collect();
                        let bwd = (0..i).map(|j| (infixes[wi][j][i], classes[wi][j])).collect();
                        let sig = (classes[wi][i], fwd, bwd);
                        let fresh = sig_ids.len();
                        *sig_ids.entry(sig).or_insert(fresh)
                    })
                    .collect()
            })
            .collect();
        let stable = sig_ids.len() == count_distinct(&classes);
        classes = next;
        if stable {
            break;
        }
    }
    classes
}

fn count_distinct(classes: &[Vec<usize>]) -> usize {
    classes.iter().flatten().collect::<BTreeSet<_>>().len()
}

/// `w, i ≅ᵏ w', i'`.
pub fn tl_equiv(k: usize, eta: &Morphism, a: &PointedWord, b: &PointedWord) -> bool {
    let classes = tl_equiv_classes(k, eta, &[a.word.clone(), b.word.clone()]);
    classes[0][a.position] == classes[1][b.position]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::Alphabet;
    use crate::prevariety::canonical_morphism_st;

    /// The back-and-forth conditions, evaluated recursively with memoization.
    fn game(
        k: usize,
        eta: &Morphism,
        w: &[usize],
        i: usize,
        v: &[usize],
        j: usize,
        memo: &mut HashMap<(usize, usize, usize), bool>,
    ) -> bool {
        if let Some(&b) = memo.get(&(k, i, j)) {
            return b;
        }
        let (n, m) = (w.len() + 1, v.len() + 1);
        let kind = |x: &[usize], p: usize, end: usize| {
            if p == 0 {
                0
            } else if p == end {
                1
            } else {
                2 + x[p - 1]
            }
        };
        let mut ok = kind(w, i, n) == kind(v, j, m);
        if ok && k > 0 {
            let img = |x: &[usize], p: usize, q: usize| eta.eval(&x[p..q - 1]);
            ok = (i + 1..=n)
                .all(|i2| (j + 1..=m).any(|j2| img(w, i, i2) == img(v, j, j2) && game(k - 1, eta, w, i2, v, j2, memo)))
                && (j + 1..=m).all(|j2| {
                    (i + 1..=n).any(|i2| img(w, i, i2) == img(v, j, j2) && game(k - 1, eta, w, i2, v, j2, memo))
                })
                && (0..i)
                    .all(|i2| (0..j).any(|j2| img(w, i2, i) == img(v, j2, j) && game(k - 1, eta, w, i2, v, j2, memo)))
                && (0..j)
                    .all(|j2| (0..i).any(|i2| img(w, i2, i) == img(v, j2, j) && game(k - 1, eta, w, i2, v, j2, memo)));
        }
        memo.insert((k, i, j), ok);
        ok
    }

    #[test]
    fn rank_zero_compares_labels() {
        let a = Alphabet::new(['a', 'b']).unwrap();
        let eta = canonical_morphism_st(&a);
        let p = |s: &str| PointedWord::parse(s, &a).unwrap();
        assert!(tl_equiv(0, &eta, &p("a@1"), &p("ba@2")));
        assert!(!tl_equiv(0, &eta, &p("a@1"), &p("ba@1")));
        assert!(tl_equiv(0, &eta, &p("ab@0"), &p("@0")));
        assert!(!tl_equiv(0, &eta, &p("@0"), &p("@1")));
    }

    #[test]
    fn refinement_matches_game() {
        let a = Alphabet::new(['a', 'b']).unwrap();
        let eta = crate::monoid::syntactic_of_regex("(AA)*", &a).unwrap();
        let words = a.words_up_to(4);
        for k in 0..3 {
            for w in &words {
                for v in &words {
                    let classes = tl_equiv_classes(k, &eta, &[w.clone(), v.clone()]);
                    let mut memo = HashMap::new();
                    for i in 0..w.len() + 2 {
                        for j in 0..v.len() + 2 {
                            assert_eq!(
                                classes[0][i] == classes[1][j],
                                game(k, &eta, w, i, v, j, &mut memo),
                                "k={k} {w:?}@{i} {v:?}@{j}"
                            );
                        }
                    }
                }
            }
        }
    }
}
