//! Translations between TLX over a class and TL over its well-suited
//! extension. `X` and `Y` become `F` and `P` indexed by `{ε}`; conversely a
//! modality over `{ε} ∪ K` or `A⁺ ∩ K` is rewritten with `X`/`Y` and
//! modalities over `K` or its letter quotients.

use super::{Env, LogicError, Tl};
use crate::lang::{combine, compile_str, BoolOp};
use crate::prevariety::Oracle;

/// Replaces `X` and `Y` by `F` and `P` over `{ε}`.
pub fn tlx_to_tl_plus(phi: &Tl, env: &mut Env) -> Tl {
    match phi {
        Tl::True | Tl::False | Tl::Min | Tl::Max | Tl::Letter(_) => phi.clone(),
        Tl::Not(p) => Tl::Not(Box::new(tlx_to_tl_plus(p, env))),
        Tl::And(p, q) => Tl::And(Box::new(tlx_to_tl_plus(p, env)), Box::new(tlx_to_tl_plus(q, env))),
        Tl::Or(p, q) => Tl::Or(Box::new(tlx_to_tl_plus(p, env)), Box::new(tlx_to_tl_plus(q, env))),
        Tl::Next(p) => {
            let eps = env.epsilon();
            Tl::Finally(eps, Box::new(tlx_to_tl_plus(p, env)))
        }
        Tl::Yesterday(p) => {
            let eps = env.epsilon();
            Tl::Previously(eps, Box::new(tlx_to_tl_plus(p, env)))
        }
        Tl::Finally(l, p) => Tl::Finally(l.clone(), Box::new(tlx_to_tl_plus(p, env))),
        Tl::Previously(l, p) => Tl::Previously(l.clone(), Box::new(tlx_to_tl_plus(p, env))),
    }
}

/// Rewrites a TL formula over the extension of `class` into TLX over
/// `class`. Modalities whose language already lies in `class` are kept.
pub fn tl_plus_to_tlx(phi: &Tl, env: &mut Env, class: &Oracle) -> Result<Tl, LogicError> {
    Ok(match phi {
        Tl::True | Tl::False | Tl::Min | Tl::Max | Tl::Letter(_) => phi.clone(),
        Tl::Not(p) => Tl::Not(Box::new(tl_plus_to_tlx(p, env, class)?)),
        Tl::And(p, q) => Tl::And(Box::new(tl_plus_to_tlx(p, env, class)?), Box::new(tl_plus_to_tlx(q, env, class)?)),
        Tl::Or(p, q) => Tl::Or(Box::new(tl_plus_to_tlx(p, env, class)?), Box::new(tl_plus_to_tlx(q, env, class)?)),
        Tl::Next(p) => Tl::Next(Box::new(tl_plus_to_tlx(p, env, class)?)),
        Tl::Yesterday(p) => Tl::Yesterday(Box::new(tl_plus_to_tlx(p, env, class)?)),
        Tl::Finally(l, p) | Tl::Previously(l, p) => {
            let forward = matches!(phi, Tl::Finally(..));
            let body = tl_plus_to_tlx(p, env, class)?;
            let lang = env.get(l)?.clone();
            if class.contains(&lang)? {
                return Ok(if forward {
                    Tl::Finally(l.clone(), Box::new(body))
                } else {
                    Tl::Previously(l.clone(), Box::new(body))
                });
            }
            let eps = compile_str("eps", env.alphabet())?;
            let step = |q: Tl| if forward { Tl::Next(Box::new(q)) } else { Tl::Yesterday(Box::new(q)) };
            if lang.accepts(&[]) {
                // L = {ε} ∪ K.
                let k = env.difference(&lang, &eps);
                if !class.contains(&k)? {
                    return Err(LogicError::NotWellSuited(l.clone()));
                }
                let name = env.intern(&format!("{l}-eps"), k);
                let rest = if forward {
                    Tl::Finally(name, Box::new(body.clone()))
                } else {
                    Tl::Previously(name, Box::new(body.clone()))
                };
                Tl::Or(Box::new(step(body)), Box::new(rest))
            } else {
                // L = A⁺ ∩ K.
                let k = combine(&lang, &eps, BoolOp::Union)?;
                if !class.contains(&k)? {
                    return Err(LogicError::NotWellSuited(l.clone()));
                }
                let mut disjuncts = Vec::new();
                for a in 0..env.alphabet().len() {
                    let letter = env.alphabet().letter(a);
                    let q = if forward { k.left_quotient(&[a]) } else { k.right_quotient(&[a]) };
                    if !class.contains(&q)? {
                        return Err(LogicError::NotWellSuited(l.clone()));
                    }
                    let hint = if forward { format!("{letter}\\{l}+eps") } else { format!("{l}+eps/{letter}") };
                    let name = env.intern(&hint, q);
                    let modal = if forward {
                        Tl::Finally(name, Box::new(body.clone()))
                    } else {
                        Tl::Previously(name, Box::new(body.clone()))
                    };
                    disjuncts.push(Tl::And(Box::new(Tl::Letter(letter)), Box::new(modal)));
                }
                let inner = disjuncts.into_iter().reduce(|p, q| Tl::Or(Box::new(p), Box::new(q))).unwrap_or(Tl::False);
                step(inner)
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::Alphabet;
    use crate::logic::{parse_tl, tl_positions};

    fn agree(p: &Tl, q: &Tl, env: &Env) {
        for w in env.alphabet().words_up_to(6) {
            assert_eq!(tl_positions(p, &w, env).unwrap(), tl_positions(q, &w, env).unwrap(), "{p} vs {q} on {w:?}");
        }
    }

    #[test]
    fn next_becomes_epsilon_finally() {
        let mut env = Env::new(Alphabet::new(['a', 'b']).unwrap());
        let phi = parse_tl("X a", &env).unwrap();
        let out = tlx_to_tl_plus(&phi, &mut env);
        assert_eq!(out.to_string(), "F[eps] a");
        assert!(out.is_tl());
        agree(&phi, &out, &env);
    }

    #[test]
    fn round_trip_over_st() {
        let mut env = Env::new(Alphabet::new(['a', 'b']).unwrap());
        env.insert_regex("All", "A*").unwrap();
        env.insert_regex("Plus", "AA*").unwrap();
        env.insert_regex("EpsOrAll", "A*").unwrap();
        for src in ["X a", "Y(b & X max)", "F[Plus](a & P[Plus] min)", "!X Y X b"] {
            let phi = parse_tl(src, &env).unwrap();
            let plus = tlx_to_tl_plus(&phi, &mut env);
            let back = tl_plus_to_tlx(&plus, &mut env, &Oracle::St).unwrap();
            agree(&phi, &plus, &env);
            agree(&phi, &back, &env);
            for l in back.languages() {
                assert!(Oracle::St.contains(env.get(&l).unwrap()).unwrap(), "{l} not in ST");
            }
        }
    }

    #[test]
    fn epsilon_union_case() {
        let mut env = Env::new(Alphabet::new(['a', 'b']).unwrap());
        env.insert_regex("Eps", "eps").unwrap();
        env.insert_regex("Plus", "AA*").unwrap();
        for src in ["F[Eps] b", "P[Eps] a"] {
            let phi = parse_tl(src, &env).unwrap();
            let back = tl_plus_to_tlx(&phi, &mut env, &Oracle::St).unwrap();
            assert!(matches!(back, Tl::Or(..)));
            agree(&phi, &back, &env);
        }
        let phi = parse_tl("P[Plus] b", &env).unwrap();
        let back = tl_plus_to_tlx(&phi, &mut env, &Oracle::St).unwrap();
        assert!(matches!(back, Tl::Yesterday(..)));
        agree(&phi, &back, &env);
    }

    #[test]
    fn not_well_suited() {
        let mut env = Env::new(Alphabet::new(['a', 'b']).unwrap());
        env.insert_regex("Ab", "ab").unwrap();
        let phi = parse_tl("F[Ab] max", &env).unwrap();
        assert!(matches!(tl_plus_to_tlx(&phi, &mut env, &Oracle::At), Err(LogicError::NotWellSuited(_))));
    }
}
