use std::fmt;

use super::{label_at, Cursor, Env, LogicError, PointedWord, Tok};

/// TL formulas, extended with `X` and `Y` (TLX).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tl {
    True,
    False,
    Min,
    Max,
    Letter(char),
    Not(Box<Tl>),
    And(Box<Tl>, Box<Tl>),
    Or(Box<Tl>, Box<Tl>),
    Next(Box<Tl>),
    Yesterday(Box<Tl>),
    Finally(String, Box<Tl>),
    Previously(String, Box<Tl>),
}

impl Tl {
    pub fn negate(p: Tl) -> Tl {
        match p {
            Tl::True => Tl::False,
            Tl::False => Tl::True,
            Tl::Not(q) => *q,
            p => Tl::Not(Box::new(p)),
        }
    }

    pub fn and(p: Tl, q: Tl) -> Tl {
        match (p, q) {
            (Tl::False, _) | (_, Tl::False) => Tl::False,
            (Tl::True, q) => q,
            (p, Tl::True) => p,
            (p, q) if p == q => p,
            (p, q) => Tl::And(Box::new(p), Box::new(q)),
        }
    }

    pub fn or(p: Tl, q: Tl) -> Tl {
        match (p, q) {
            (Tl::True, _) | (_, Tl::True) => Tl::True,
            (Tl::False, q) => q,
            (p, Tl::False) => p,
            (p, q) if p == q => p,
            (p, q) => Tl::Or(Box::new(p), Box::new(q)),
        }
    }

    pub fn any(items: impl IntoIterator<Item = Tl>) -> Tl {
        items.into_iter().fold(Tl::False, Tl::or)
    }

    pub fn all(items: impl IntoIterator<Item = Tl>) -> Tl {
        items.into_iter().fold(Tl::True, Tl::and)
    }

    pub fn finally(name: &str, p: Tl) -> Tl {
        if p == Tl::False {
            Tl::False
        } else {
            Tl::Finally(name.to_string(), Box::new(p))
        }
    }

    pub fn previously(name: &str, p: Tl) -> Tl {
        if p == Tl::False {
            Tl::False
        } else {
            Tl::Previously(name.to_string(), Box::new(p))
        }
    }

    /// True when no `X` or `Y` occurs.
    pub fn is_tl(&self) -> bool {
        match self {
            Tl::True | Tl::False | Tl::Min | Tl::Max | Tl::Letter(_) => true,
            Tl::Not(p) | Tl::Finally(_, p) | Tl::Previously(_, p) => p.is_tl(),
            Tl::And(p, q) | Tl::Or(p, q) => p.is_tl() && q.is_tl(),
            Tl::Next(_) | Tl::Yesterday(_) => false,
        }
    }

    /// Names of the languages indexing modalities.
    pub fn languages(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_languages(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_languages(&self, out: &mut Vec<String>) {
        match self {
            Tl::True | Tl::False | Tl::Min | Tl::Max | Tl::Letter(_) => {}
            Tl::Not(p) | Tl::Next(p) | Tl::Yesterday(p) => p.collect_languages(out),
            Tl::Finally(l, p) | Tl::Previously(l, p) => {
                out.push(l.clone());
                p.collect_languages(out);
            }
            Tl::And(p, q) | Tl::Or(p, q) => {
                p.collect_languages(out);
                q.collect_languages(out);
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Tl::True | Tl::False | Tl::Min | Tl::Max | Tl::Letter(_) => 1,
            Tl::Not(p) | Tl::Next(p) | Tl::Yesterday(p) | Tl::Finally(_, p) | Tl::Previously(_, p) => 1 + p.size(),
            Tl::And(p, q) | Tl::Or(p, q) => 1 + p.size() + q.size(),
        }
    }
}

impl fmt::Display for Tl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tl::True => write!(f, "T"),
            Tl::False => write!(f, "F"),
            Tl::Min => write!(f, "min"),
            Tl::Max => write!(f, "max"),
            Tl::Letter(c) => write!(f, "{c}"),
            Tl::Not(p) => write!(f, "!{}", Paren(p)),
            Tl::And(p, q) => write!(f, "({p} & {q})"),
            Tl::Or(p, q) => write!(f, "({p} | {q})"),
            Tl::Next(p) => write!(f, "X {}", Paren(p)),
            Tl::Yesterday(p) => write!(f, "Y {}", Paren(p)),
            Tl::Finally(l, p) => write!(f, "F[{l}] {}", Paren(p)),
            Tl::Previously(l, p) => write!(f, "P[{l}] {}", Paren(p)),
        }
    }
}

/// Wraps unary operands whose text would otherwise bind differently.
struct Paren<'a>(&'a Tl);

impl fmt::Display for Paren<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Tl::True | Tl::False | Tl::Min | Tl::Max | Tl::Letter(_) | Tl::And(..) | Tl::Or(..) => {
                write!(f, "{}", self.0)
            }
            p => write!(f, "({p})"),
        }
    }
}

/// Parses a formula; every modality name must resolve in `env` and every
/// letter must belong to its alphabet.
pub fn parse_tl(src: &str, env: &Env) -> Result<Tl, LogicError> {
    let mut c = Cursor::new(src)?;
    let p = parse_or(&mut c, env)?;
    c.done()?;
    Ok(p)
}

fn parse_or(c: &mut Cursor, env: &Env) -> Result<Tl, LogicError> {
    let mut p = parse_and(c, env)?;
    while c.peek() == Some(&Tok::Or) {
        c.next();
        p = Tl::Or(Box::new(p), Box::new(parse_and(c, env)?));
    }
    Ok(p)
}

fn parse_and(c: &mut Cursor, env: &Env) -> Result<Tl, LogicError> {
    let mut p = parse_unary(c, env)?;
    while c.peek() == Some(&Tok::And) {
        c.next();
        p = Tl::And(Box::new(p), Box::new(parse_unary(c, env)?));
    }
    Ok(p)
}

fn parse_unary(c: &mut Cursor, env: &Env) -> Result<Tl, LogicError> {
    let offset = c.offset();
    match c.next() {
        Some(Tok::Not) => Ok(Tl::Not(Box::new(parse_unary(c, env)?))),
        Some(Tok::LParen) => {
            let p = parse_or(c, env)?;
            c.expect(Tok::RParen)?;
            Ok(p)
        }
        Some(Tok::Ident(id)) => match id.as_str() {
            "F" | "P" if matches!(c.peek(), Some(Tok::Bracket(_))) => {
                let Some(Tok::Bracket(name)) = c.next() else { unreachable!() };
                env.get(&name)?;
                let body = Box::new(parse_unary(c, env)?);
                Ok(if id == "F" { Tl::Finally(name, body) } else { Tl::Previously(name, body) })
            }
            "X" => Ok(Tl::Next(Box::new(parse_unary(c, env)?))),
            "Y" => Ok(Tl::Yesterday(Box::new(parse_unary(c, env)?))),
            "T" => Ok(Tl::True),
            "F" => Ok(Tl::False),
            "min" => Ok(Tl::Min),
            "max" => Ok(Tl::Max),
            s if s.chars().count() == 1 && s.chars().all(|ch| ch.is_ascii_lowercase()) => {
                let ch = s.chars().next().expect("one char");
                env.letter_index(ch)?;
                Ok(Tl::Letter(ch))
            }
            s => Err(LogicError::Syntax { position: offset, message: format!("unexpected {s:?}") }),
        },
        Some(t) => Err(LogicError::Syntax { position: offset, message: format!("unexpected {t:?}") }),
        None => Err(LogicError::Syntax { position: offset, message: "unexpected end of input".into() }),
    }
}

/// Truth value of `φ` at every position `0..=|w|+1`.
pub fn tl_positions(phi: &Tl, word: &[usize], env: &Env) -> Result<Vec<bool>, LogicError> {
    let n = word.len() + 2;
    Ok(match phi {
        Tl::True => vec![true; n],
        Tl::False => vec![false; n],
        Tl::Min => (0..n).map(|i| i == 0).collect(),
        Tl::Max => (0..n).map(|i| i == n - 1).collect(),
        Tl::Letter(c) => {
            let a = env.letter_index(*c)?;
            (0..n).map(|i| label_at(word, i) == Some(a)).collect()
        }
        Tl::Not(p) => tl_positions(p, word, env)?.into_iter().map(|b| !b).collect(),
        Tl::And(p, q) => {
            let (x, y) = (tl_positions(p, word, env)?, tl_positions(q, word, env)?);
            x.iter().zip(&y).map(|(a, b)| *a && *b).collect()
        }
        Tl::Or(p, q) => {
            let (x, y) = (tl_positions(p, word, env)?, tl_positions(q, word, env)?);
            x.iter().zip(&y).map(|(a, b)| *a || *b).collect()
        }
        Tl::Next(p) => {
            let x = tl_positions(p, word, env)?;
            (0..n).map(|i| i + 1 < n && x[i + 1]).collect()
        }
        Tl::Yesterday(p) => {
            let x = tl_positions(p, word, env)?;
            (0..n).map(|i| i > 0 && x[i - 1]).collect()
        }
        Tl::Finally(l, p) | Tl::Previously(l, p) => {
            let d = env.get(l)?;
            let x = tl_positions(p, word, env)?;
            let forward = matches!(phi, Tl::Finally(..));
            let mut out = vec![false; n];
            // For each i, scan j > i while reading the infix w(i, j).
            for i in 0..n {
                let mut q = d.initial();
                for j in i + 1..n {
                    if j > i + 1 {
                        q = d.step(q, word[j - 2]);
                    }
                    if d.is_accepting(q) {
                        if forward && x[j] {
                            out[i] = true;
                        }
                        if !forward && x[i] {
                            out[j] = true;
                        }
                    }
                }
            }
            out
        }
    })
}

/// `w, i ⊨ φ`.
pub fn eval_tl(phi: &Tl, pw: &PointedWord, env: &Env) -> Result<bool, LogicError> {
    Ok(tl_positions(phi, &pw.word, env)?[pw.position])
}

/// Nesting depth of `F` and `P`; `X` and `Y` do not add to it.
pub fn rank(phi: &Tl) -> usize {
    match phi {
        Tl::True | Tl::False | Tl::Min | Tl::Max | Tl::Letter(_) => 0,
        Tl::Not(p) | Tl::Next(p) | Tl::Yesterday(p) => rank(p),
        Tl::And(p, q) | Tl::Or(p, q) => rank(p).max(rank(q)),
        Tl::Finally(_, p) | Tl::Previously(_, p) => rank(p) + 1,
    }
}
