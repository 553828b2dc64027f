use std::fmt;

use super::{infix, label_at, Cursor, Env, LogicError, Tl, Tok};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    Min,
    Max,
}

/// Two-variable first-order formulas with label, equality and infix
/// predicates. `I_L(s, t)` holds when `s < t` and the letters strictly
/// between them form a word of `L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Fo {
    True,
    False,
    Label(char, Term),
    Eq(Term, Term),
    Infix(String, Term, Term),
    Not(Box<Fo>),
    And(Box<Fo>, Box<Fo>),
    Or(Box<Fo>, Box<Fo>),
    Exists(Var, Box<Fo>),
    Forall(Var, Box<Fo>),
}

impl Fo {
    pub fn and(p: Fo, q: Fo) -> Fo {
        Fo::And(Box::new(p), Box::new(q))
    }

    pub fn exists(v: Var, p: Fo) -> Fo {
        Fo::Exists(v, Box::new(p))
    }

    /// Free variables, as `(x free, y free)`.
    pub fn free(&self) -> (bool, bool) {
        let mut acc = (false, false);
        self.collect_free(&mut acc, (false, false));
        acc
    }

    fn collect_free(&self, acc: &mut (bool, bool), bound: (bool, bool)) {
        let mut term = |t: &Term| match t {
            Term::Var(Var::X) if !bound.0 => acc.0 = true,
            Term::Var(Var::Y) if !bound.1 => acc.1 = true,
            _ => {}
        };
        match self {
            Fo::True | Fo::False => {}
            Fo::Label(_, t) => term(t),
            Fo::Eq(s, t) | Fo::Infix(_, s, t) => {
                term(s);
                term(t);
            }
            Fo::Not(p) => p.collect_free(acc, bound),
            Fo::And(p, q) | Fo::Or(p, q) => {
                p.collect_free(acc, bound);
                q.collect_free(acc, bound);
            }
            Fo::Exists(v, p) | Fo::Forall(v, p) => {
                let b = match v {
                    Var::X => (true, bound.1),
                    Var::Y => (bound.0, true),
                };
                p.collect_free(acc, b);
            }
        }
    }

    pub fn has_free(&self, v: Var) -> bool {
        let (x, y) = self.free();
        match v {
            Var::X => x,
            Var::Y => y,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::X => "x",
            Var::Y => "y",
        })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Min => f.write_str("min"),
            Term::Max => f.write_str("max"),
        }
    }
}

impl fmt::Display for Fo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fo::True => f.write_str("T"),
            Fo::False => f.write_str("F"),
            Fo::Label(c, t) => write!(f, "{c}({t})"),
            Fo::Eq(s, t) => write!(f, "{s}={t}"),
            Fo::Infix(l, s, t) => write!(f, "I[{l}]({s},{t})"),
            Fo::Not(p) => match **p {
                Fo::Exists(..) | Fo::Forall(..) => write!(f, "!({p})"),
                _ => write!(f, "!{p}"),
            },
            Fo::And(p, q) => write!(f, "({p} & {q})"),
            Fo::Or(p, q) => write!(f, "({p} | {q})"),
            Fo::Exists(v, p) => write!(f, "(E{v}. {p})"),
            Fo::Forall(v, p) => write!(f, "(A{v}. {p})"),
        }
    }
}

/// Parses the FO² grammar. Quantifiers `Ex.`, `Ax.`, `Ey.`, `Ay.` scope as
/// far to the right as possible.
pub fn parse_fo2(src: &str, env: &Env) -> Result<Fo, LogicError> {
    let mut c = Cursor::new(src)?;
    let p = parse_or(&mut c, env)?;
    c.done()?;
    Ok(p)
}

fn parse_or(c: &mut Cursor, env: &Env) -> Result<Fo, LogicError> {
    let mut p = parse_and(c, env)?;
    while c.peek() == Some(&Tok::Or) {
        c.next();
        p = Fo::Or(Box::new(p), Box::new(parse_and(c, env)?));
    }
    Ok(p)
}

fn parse_and(c: &mut Cursor, env: &Env) -> Result<Fo, LogicError> {
    let mut p = parse_unary(c, env)?;
    while c.peek() == Some(&Tok::And) {
        c.next();
        p = Fo::And(Box::new(p), Box::new(parse_unary(c, env)?));
    }
    Ok(p)
}

fn quantifier(id: &str) -> Option<(bool, Var)> {
    match id {
        "Ex" => Some((true, Var::X)),
        "Ey" => Some((true, Var::Y)),
        "Ax" => Some((false, Var::X)),
        "Ay" => Some((false, Var::Y)),
        _ => None,
    }
}

fn term_of(id: &str) -> Option<Term> {
    match id {
        "x" => Some(Term::Var(Var::X)),
        "y" => Some(Term::Var(Var::Y)),
        "min" => Some(Term::Min),
        "max" => Some(Term::Max),
        _ => None,
    }
}

fn parse_term(c: &mut Cursor) -> Result<Term, LogicError> {
    match c.next() {
        Some(Tok::Ident(id)) => term_of(&id).ok_or_else(|| c.error(format!("expected a term, got {id:?}"))),
        _ => Err(c.error("expected a term")),
    }
}

fn parse_unary(c: &mut Cursor, env: &Env) -> Result<Fo, LogicError> {
    let offset = c.offset();
    let is_quant = matches!((c.peek(), c.peek2()), (Some(Tok::Ident(id)), Some(Tok::Dot)) if quantifier(id).is_some());
    if is_quant {
        let Some(Tok::Ident(id)) = c.next() else { unreachable!() };
        c.next();
        let (ex, v) = quantifier(&id).expect("checked");
        let body = Box::new(parse_or(c, env)?);
        return Ok(if ex { Fo::Exists(v, body) } else { Fo::Forall(v, body) });
    }
    match c.next() {
        Some(Tok::Not) => Ok(Fo::Not(Box::new(parse_unary(c, env)?))),
        Some(Tok::LParen) => {
            let p = parse_or(c, env)?;
            c.expect(Tok::RParen)?;
            Ok(p)
        }
        Some(Tok::Ident(id)) => {
            if id == "I" && matches!(c.peek(), Some(Tok::Bracket(_))) {
                let Some(Tok::Bracket(name)) = c.next() else { unreachable!() };
                env.get(&name)?;
                c.expect(Tok::LParen)?;
                let s = parse_term(c)?;
                c.expect(Tok::Comma)?;
                let t = parse_term(c)?;
                c.expect(Tok::RParen)?;
                return Ok(Fo::Infix(name, s, t));
            }
            if c.peek() == Some(&Tok::LParen) && id.chars().count() == 1 {
                let ch = id.chars().next().expect("one char");
                env.letter_index(ch)?;
                c.next();
                let t = parse_term(c)?;
                c.expect(Tok::RParen)?;
                return Ok(Fo::Label(ch, t));
            }
            if let Some(s) = term_of(&id) {
                c.expect(Tok::Eq)?;
                let t = parse_term(c)?;
                return Ok(Fo::Eq(s, t));
            }
            match id.as_str() {
                "T" => Ok(Fo::True),
                "F" => Ok(Fo::False),
                s => Err(LogicError::Syntax { position: offset, message: format!("unexpected {s:?}") }),
            }
        }
        Some(t) => Err(LogicError::Syntax { position: offset, message: format!("unexpected {t:?}") }),
        None => Err(LogicError::Syntax { position: offset, message: "unexpected end of input".into() }),
    }
}

/// Values of `x` and `y`.
pub type Assignment = [Option<usize>; 2];

fn value(t: &Term, n: usize, asg: &Assignment) -> Result<usize, LogicError> {
    match t {
        Term::Min => Ok(0),
        Term::Max => Ok(n + 1),
        Term::Var(Var::X) => asg[0].ok_or(LogicError::Env("x is unassigned".into())),
        Term::Var(Var::Y) => asg[1].ok_or(LogicError::Env("y is unassigned".into())),
    }
}

/// Tarskian evaluation; quantifiers range over `0..=|w|+1`.
pub fn eval_fo2(phi: &Fo, word: &[usize], env: &Env, asg: &Assignment) -> Result<bool, LogicError> {
    let n = word.len();
    Ok(match phi {
        Fo::True => true,
        Fo::False => false,
        Fo::Label(c, t) => label_at(word, value(t, n, asg)?) == Some(env.letter_index(*c)?),
        Fo::Eq(s, t) => value(s, n, asg)? == value(t, n, asg)?,
        Fo::Infix(l, s, t) => {
            let (i, j) = (value(s, n, asg)?, value(t, n, asg)?);
            let d = env.get(l)?;
            i < j && d.accepts(infix(word, i, j))
        }
        Fo::Not(p) => !eval_fo2(p, word, env, asg)?,
        Fo::And(p, q) => eval_fo2(p, word, env, asg)? && eval_fo2(q, word, env, asg)?,
        Fo::Or(p, q) => eval_fo2(p, word, env, asg)? || eval_fo2(q, word, env, asg)?,
        Fo::Exists(v, p) | Fo::Forall(v, p) => {
            let slot = if *v == Var::X { 0 } else { 1 };
            let want = matches!(phi, Fo::Exists(..));
            for i in 0..=n + 1 {
                let mut a = *asg;
                a[slot] = Some(i);
                if eval_fo2(p, word, env, &a)? == want {
                    return Ok(want);
                }
            }
            !want
        }
    })
}

/// `⟨φ⟩(x)`: an FO² formula with free variable `x` that holds at `i`
/// exactly when `φ` holds at `i`.
pub fn tl_to_fo2(phi: &Tl) -> Result<Fo, LogicError> {
    translate(phi, Var::X)
}

/// Sentence `∃x (x = min ∧ ⟨φ⟩(x))` defining the language of `φ`.
pub fn tl_to_fo2_sentence(phi: &Tl) -> Result<Fo, LogicError> {
    Ok(Fo::exists(Var::X, Fo::and(Fo::Eq(Term::Var(Var::X), Term::Min), tl_to_fo2(phi)?)))
}

fn translate(phi: &Tl, v: Var) -> Result<Fo, LogicError> {
    let x = Term::Var(v);
    let y = Term::Var(v.other());
    Ok(match phi {
        Tl::True => Fo::True,
        Tl::False => Fo::False,
        Tl::Min => Fo::Eq(x, Term::Min),
        Tl::Max => Fo::Eq(x, Term::Max),
        Tl::Letter(c) => Fo::Label(*c, x),
        Tl::Not(p) => Fo::Not(Box::new(translate(p, v)?)),
        Tl::And(p, q) => Fo::And(Box::new(translate(p, v)?), Box::new(translate(q, v)?)),
        Tl::Or(p, q) => Fo::Or(Box::new(translate(p, v)?), Box::new(translate(q, v)?)),
        Tl::Finally(l, p) => Fo::exists(v.other(), Fo::and(Fo::Infix(l.clone(), x, y), translate(p, v.other())?)),
        Tl::Previously(l, p) => Fo::exists(v.other(), Fo::and(Fo::Infix(l.clone(), y, x), translate(p, v.other())?)),
        Tl::Next(_) | Tl::Yesterday(_) => return Err(LogicError::TlxNotSupported),
    })
}
