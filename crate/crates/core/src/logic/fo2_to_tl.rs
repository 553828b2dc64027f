//! FO² to TL. A formula `∃u ψ(v, u)` is split by the relative position of
//! `u`: equal to `v`, after it, or before it. In the last two cases the
//! infix between them is classified by its membership profile over the
//! languages of the infix predicates in `ψ`, which fixes every relational
//! atom. Subformulas with one free variable are translated recursively and
//! the ones about `v` are case-split so the rest can move under `F` or `P`.

use super::{Env, Fo, LogicError, Term, Tl, Var};
use crate::lang::Dfa;

/// TL formula holding at `0` exactly on the words satisfying the sentence.
pub fn fo2_to_tl(phi: &Fo, env: &mut Env) -> Result<Tl, LogicError> {
    if phi.free() != (false, false) {
        return Err(LogicError::Env("expected a sentence".into()));
    }
    tr(phi, Var::X, env)
}

/// TL formula holding at `i` exactly when `φ` holds with `v := i`.
pub fn fo2_to_tl_at(phi: &Fo, v: Var, env: &mut Env) -> Result<Tl, LogicError> {
    if phi.has_free(v.other()) {
        return Err(LogicError::Env(format!("{} must not be free", v.other())));
    }
    tr(phi, v, env)
}

/// Position-independent version of a formula evaluated at `min`.
fn constant(theta: Tl, env: &mut Env) -> Tl {
    let all = env.all();
    let at_min = Tl::and(Tl::Min, theta);
    Tl::or(at_min.clone(), Tl::previously(&all, at_min))
}

fn tr(phi: &Fo, v: Var, env: &mut Env) -> Result<Tl, LogicError> {
    let here = Term::Var(v);
    Ok(match phi {
        Fo::True => Tl::True,
        Fo::False => Tl::False,
        Fo::Label(c, t) => {
            if *t == here {
                Tl::Letter(*c)
            } else {
                Tl::False
            }
        }
        Fo::Eq(s, t) => match (*s == here, *t == here) {
            (true, true) => Tl::True,
            (true, false) | (false, true) => {
                let other = if *s == here { t } else { s };
                match other {
                    Term::Min => Tl::Min,
                    Term::Max => Tl::Max,
                    Term::Var(_) => return Err(LogicError::Env("unexpected free variable".into())),
                }
            }
            (false, false) => Tl::from_bool(s == t),
        },
        Fo::Infix(l, s, t) => match (s, t) {
            (a, b) if *a == here && *b == here => Tl::False,
            (a, Term::Max) if *a == here => Tl::finally(l, Tl::Max),
            (Term::Min, b) if *b == here => Tl::previously(l, Tl::Min),
            (Term::Min, Term::Max) => constant(Tl::finally(l, Tl::Max), env),
            (Term::Var(_), _) | (_, Term::Var(_)) if *s != here && *t != here => {
                return Err(LogicError::Env("unexpected free variable".into()))
            }
            _ => Tl::False,
        },
        Fo::Not(p) => Tl::negate(tr(p, v, env)?),
        Fo::And(p, q) => Tl::and(tr(p, v, env)?, tr(q, v, env)?),
        Fo::Or(p, q) => Tl::or(tr(p, v, env)?, tr(q, v, env)?),
        Fo::Forall(u, p) => Tl::negate(tr(&Fo::Exists(*u, Box::new(Fo::Not(p.clone()))), v, env)?),
        Fo::Exists(u, p) if *u == v => {
            let theta = tr(p, v, env)?;
            let all = env.all();
            Tl::any([theta.clone(), Tl::finally(&all, theta.clone()), Tl::previously(&all, theta)])
        }
        Fo::Exists(u, p) => exists(p, v, *u, env)?,
    })
}

impl Tl {
    fn from_bool(b: bool) -> Tl {
        if b {
            Tl::True
        } else {
            Tl::False
        }
    }
}

#[derive(Clone, Debug)]
enum Leaf {
    /// About `v` only.
    Here(Tl),
    /// About `u` only.
    There(Tl),
    Equal,
    /// `I_L(v, u)`.
    Forward(String),
    /// `I_L(u, v)`.
    Backward(String),
}

#[derive(Clone, Debug)]
enum Tree {
    Leaf(usize),
    Not(Box<Tree>),
    And(Box<Tree>, Box<Tree>),
    Or(Box<Tree>, Box<Tree>),
}

fn decompose(psi: &Fo, v: Var, u: Var, leaves: &mut Vec<Leaf>, env: &mut Env) -> Result<Tree, LogicError> {
    let leaf = |l: Leaf, leaves: &mut Vec<Leaf>| {
        leaves.push(l);
        Tree::Leaf(leaves.len() - 1)
    };
    if !psi.has_free(u) {
        let t = tr(psi, v, env)?;
        return Ok(leaf(Leaf::Here(t), leaves));
    }
    if !psi.has_free(v) {
        let t = tr(psi, u, env)?;
        return Ok(leaf(Leaf::There(t), leaves));
    }
    let (tv, tu) = (Term::Var(v), Term::Var(u));
    Ok(match psi {
        Fo::Not(p) => Tree::Not(Box::new(decompose(p, v, u, leaves, env)?)),
        Fo::And(p, q) => {
            Tree::And(Box::new(decompose(p, v, u, leaves, env)?), Box::new(decompose(q, v, u, leaves, env)?))
        }
        Fo::Or(p, q) => {
            Tree::Or(Box::new(decompose(p, v, u, leaves, env)?), Box::new(decompose(q, v, u, leaves, env)?))
        }
        Fo::Eq(..) => leaf(Leaf::Equal, leaves),
        Fo::Infix(l, s, t) if *s == tv && *t == tu => leaf(Leaf::Forward(l.clone()), leaves),
        Fo::Infix(l, s, t) if *s == tu && *t == tv => leaf(Leaf::Backward(l.clone()), leaves),
        other => return Err(LogicError::Env(format!("not a two-variable formula: {other}"))),
    })
}

/// Value of a leaf under a case: `Some` when fixed, `None` for leaves about `u`.
fn eval_tree(tree: &Tree, value: &dyn Fn(usize) -> Tl) -> Tl {
    match tree {
        Tree::Leaf(i) => value(*i),
        Tree::Not(p) => Tl::negate(eval_tree(p, value)),
        Tree::And(p, q) => Tl::and(eval_tree(p, value), eval_tree(q, value)),
        Tree::Or(p, q) => Tl::or(eval_tree(p, value), eval_tree(q, value)),
    }
}

fn exists(psi: &Fo, v: Var, u: Var, env: &mut Env) -> Result<Tl, LogicError> {
    let mut leaves = Vec::new();
    let tree = decompose(psi, v, u, &mut leaves, env)?;
    let rel_langs: Vec<String> = {
        let mut ls: Vec<String> = leaves
            .iter()
            .filter_map(|l| match l {
                Leaf::Forward(n) | Leaf::Backward(n) => Some(n.clone()),
                _ => None,
            })
            .collect();
        ls.sort();
        ls.dedup();
        ls
    };
    let profiles = profiles(&rel_langs, env)?;
    let here: Vec<usize> = (0..leaves.len()).filter(|&i| matches!(leaves[i], Leaf::Here(_))).collect();
    if here.len() > 12 {
        return Err(LogicError::SizeGuard(format!("{} case splits on one quantifier", here.len())));
    }
    let mut disjuncts = Vec::new();
    for sigma in 0u32..1 << here.len() {
        let fixed = |i: usize| here.iter().position(|&h| h == i).map(|k| sigma >> k & 1 == 1);
        let literal = Tl::all(here.iter().enumerate().map(|(k, &i)| {
            let Leaf::Here(t) = &leaves[i] else { unreachable!() };
            if sigma >> k & 1 == 1 {
                t.clone()
            } else {
                Tl::negate(t.clone())
            }
        }));
        if literal == Tl::False {
            continue;
        }
        // u = v.
        let same = eval_tree(&tree, &|i| match &leaves[i] {
            Leaf::Here(_) => Tl::from_bool(fixed(i).expect("here leaf")),
            Leaf::There(t) => t.clone(),
            Leaf::Equal => Tl::True,
            Leaf::Forward(_) | Leaf::Backward(_) => Tl::False,
        });
        let mut options = vec![same];
        for (name, member) in &profiles {
            let after = eval_tree(&tree, &|i| match &leaves[i] {
                Leaf::Here(_) => Tl::from_bool(fixed(i).expect("here leaf")),
                Leaf::There(t) => t.clone(),
                Leaf::Equal | Leaf::Backward(_) => Tl::False,
                Leaf::Forward(l) => Tl::from_bool(member.contains(l)),
            });
            options.push(Tl::finally(name, after));
            let before = eval_tree(&tree, &|i| match &leaves[i] {
                Leaf::Here(_) => Tl::from_bool(fixed(i).expect("here leaf")),
                Leaf::There(t) => t.clone(),
                Leaf::Equal | Leaf::Forward(_) => Tl::False,
                Leaf::Backward(l) => Tl::from_bool(member.contains(l)),
            });
            options.push(Tl::previously(name, before));
        }
        disjuncts.push(Tl::and(literal, Tl::any(options)));
    }
    Ok(Tl::any(disjuncts))
}

/// Nonempty membership profiles over `langs`, each as a named language and
/// the set of languages it lies in.
fn profiles(langs: &[String], env: &mut Env) -> Result<Vec<(String, Vec<String>)>, LogicError> {
    if langs.is_empty() {
        return Ok(vec![(env.all(), Vec::new())]);
    }
    let dfas: Vec<Dfa> = langs.iter().map(|l| env.get(l).cloned()).collect::<Result<_, _>>()?;
    let k = env.alphabet().len();
    let start: Vec<usize> = dfas.iter().map(Dfa::initial).collect();
    let mut ids = std::collections::HashMap::from([(start.clone(), 0usize)]);
    let mut states = vec![start];
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let guard = crate::size_guard();
    let mut i = 0;
    while i < states.len() {
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let next: Vec<usize> = states[i].iter().zip(&dfas).map(|(&q, d)| d.step(q, a)).collect();
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    if states.len() >= guard {
                        return Err(LogicError::SizeGuard(format!("profile automaton exceeds {guard} states")));
                    }
                    ids.insert(next.clone(), states.len());
                    states.push(next);
                    states.len() - 1
                }
            };
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    let vector = |s: &Vec<usize>| -> Vec<bool> { s.iter().zip(&dfas).map(|(&q, d)| d.is_accepting(q)).collect() };
    let mut seen: Vec<Vec<bool>> = states.iter().map(vector).collect();
    seen.sort();
    seen.dedup();
    let mut out = Vec::new();
    for profile in seen {
        let accepting = states.iter().map(|s| vector(s) == profile).collect();
        let d = Dfa::new(env.alphabet().clone(), 0, accepting, delta.clone())?;
        let hint: Vec<String> =
            langs.iter().zip(&profile).map(|(l, &b)| if b { l.clone() } else { format!("~{l}") }).collect();
        let name = env.intern(&hint.join(","), d);
        let member = langs.iter().zip(&profile).filter(|(_, &b)| b).map(|(l, _)| l.clone()).collect();
        out.push((name, member));
    }
    Ok(out)
}
