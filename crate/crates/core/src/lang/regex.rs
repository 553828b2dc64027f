use super::{Alphabet, LangError};

/// Regular expression syntax tree. Letters are alphabet indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regex {
    Empty,
    Eps,
    Letter(usize),
    /// Any single letter of the alphabet.
    AnyLetter,
    Concat(Box<Regex>, Box<Regex>),
    Union(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
}

/// Parses a regular expression.
///
/// Grammar: letters `a`..`z`, the keywords `eps` and `empty`, `A` for any
/// letter, postfix `*`, juxtaposition for concatenation, `|` for union and
/// parentheses. Precedence is star, then concatenation, then union.
/// Keywords are matched before single letters.
pub fn parse_regex(src: &str, alphabet: &Alphabet) -> Result<Regex, LangError> {
    let mut p = Parser { chars: src.chars().collect(), pos: 0, alphabet };
    p.skip_ws();
    if p.at_end() {
        return Err(LangError::Syntax { position: 0, message: "empty expression".into() });
    }
    let r = p.union()?;
    p.skip_ws();
    if !p.at_end() {
        let c = p.chars[p.pos];
        return Err(if c == ')' {
            LangError::Syntax { position: p.pos, message: "unbalanced ')'".into() }
        } else {
            LangError::Syntax { position: p.pos, message: format!("unexpected '{c}'") }
        });
    }
    Ok(r)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn starts_with(&self, kw: &str) -> bool {
        let kw: Vec<char> = kw.chars().collect();
        self.chars.len() >= self.pos + kw.len() && self.chars[self.pos..self.pos + kw.len()] == kw[..]
    }

    fn union(&mut self) -> Result<Regex, LangError> {
        let mut left = self.concat()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('|') {
                self.pos += 1;
                let right = self.concat()?;
                left = Regex::Union(Box::new(left), Box::new(right));
            } else {
                return Ok(left);
            }
        }
    }

    fn concat(&mut self) -> Result<Regex, LangError> {
        let mut acc: Option<Regex> = None;
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some('|') | Some(')') => break,
                _ => {
                    let r = self.starred()?;
                    acc = Some(match acc {
                        None => r,
                        Some(l) => Regex::Concat(Box::new(l), Box::new(r)),
                    });
                }
            }
        }
        acc.ok_or(LangError::Syntax { position: self.pos, message: "expected an expression".into() })
    }

    fn starred(&mut self) -> Result<Regex, LangError> {
        let mut r = self.atom()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                r = Regex::Star(Box::new(r));
            } else {
                return Ok(r);
            }
        }
    }

    fn atom(&mut self) -> Result<Regex, LangError> {
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let r = self.union()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(LangError::Syntax { position: self.pos, message: "expected ')'".into() });
                }
                self.pos += 1;
                Ok(r)
            }
            Some('*') => Err(LangError::Syntax { position: start, message: "dangling '*'".into() }),
            Some('A') => {
                self.pos += 1;
                Ok(Regex::AnyLetter)
            }
            Some(_) if self.starts_with("empty") => {
                self.pos += 5;
                Ok(Regex::Empty)
            }
            Some(_) if self.starts_with("eps") => {
                self.pos += 3;
                Ok(Regex::Eps)
            }
            Some(c) => match self.alphabet.index(c) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Regex::Letter(i))
                }
                None => Err(LangError::UnknownLetter { letter: c, position: start }),
            },
            None => Err(LangError::Syntax { position: start, message: "unexpected end of input".into() }),
        }
    }
}

/// Thompson automaton with epsilon moves.
pub(crate) struct Nfa {
    pub eps: Vec<Vec<usize>>,
    pub moves: Vec<Vec<(usize, usize)>>,
    pub start: usize,
    pub accept: usize,
}

impl Nfa {
    pub(crate) fn from_regex(r: &Regex, n_letters: usize) -> Nfa {
        let mut nfa = Nfa { eps: Vec::new(), moves: Vec::new(), start: 0, accept: 0 };
        let (s, t) = nfa.build(r, n_letters);
        nfa.start = s;
        nfa.accept = t;
        nfa
    }

    fn fresh(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.moves.push(Vec::new());
        self.eps.len() - 1
    }

    fn build(&mut self, r: &Regex, n: usize) -> (usize, usize) {
        let s = self.fresh();
        let t = self.fresh();
        match r {
            Regex::Empty => {}
            Regex::Eps => self.eps[s].push(t),
            Regex::Letter(a) => self.moves[s].push((*a, t)),
            Regex::AnyLetter => {
                for a in 0..n {
                    self.moves[s].push((a, t));
                }
            }
            Regex::Concat(x, y) => {
                let (xs, xt) = self.build(x, n);
                let (ys, yt) = self.build(y, n);
                self.eps[s].push(xs);
                self.eps[xt].push(ys);
                self.eps[yt].push(t);
            }
            Regex::Union(x, y) => {
                let (xs, xt) = self.build(x, n);
                let (ys, yt) = self.build(y, n);
                self.eps[s].extend([xs, ys]);
                self.eps[xt].push(t);
                self.eps[yt].push(t);
            }
            Regex::Star(x) => {
                let (xs, xt) = self.build(x, n);
                self.eps[s].extend([xs, t]);
                self.eps[xt].extend([xs, t]);
            }
        }
        (s, t)
    }

    pub(crate) fn closure(&self, set: &mut Vec<usize>) {
        let mut seen = vec![false; self.eps.len()];
        let mut stack: Vec<usize> = set.clone();
        for &q in set.iter() {
            seen[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &p in &self.eps[q] {
                if !seen[p] {
                    seen[p] = true;
                    set.push(p);
                    stack.push(p);
                }
            }
        }
        set.sort_unstable();
        set.dedup();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(['a', 'b']).unwrap()
    }

    #[test]
    fn precedence() {
        let r = parse_regex("ab*|b", &ab()).unwrap();
        let expected = Regex::Union(
            Box::new(Regex::Concat(Box::new(Regex::Letter(0)), Box::new(Regex::Star(Box::new(Regex::Letter(1)))))),
            Box::new(Regex::Letter(1)),
        );
        assert_eq!(r, expected);
    }

    #[test]
    fn keywords() {
        assert_eq!(parse_regex("eps", &ab()).unwrap(), Regex::Eps);
        assert_eq!(parse_regex(" empty ", &ab()).unwrap(), Regex::Empty);
        assert_eq!(parse_regex("A", &ab()).unwrap(), Regex::AnyLetter);
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_regex("", &ab()), Err(LangError::Syntax { position: 0, .. })));
        assert!(matches!(parse_regex("a(b", &ab()), Err(LangError::Syntax { position: 3, .. })));
        assert!(matches!(parse_regex("ab)", &ab()), Err(LangError::Syntax { position: 2, .. })));
        assert!(matches!(parse_regex("abc", &ab()), Err(LangError::UnknownLetter { letter: 'c', position: 2 })));
        assert!(matches!(parse_regex("a|", &ab()), Err(LangError::Syntax { .. })));
        assert!(matches!(parse_regex("*a", &ab()), Err(LangError::Syntax { .. })));
    }
}
