use super::{Env, LogicError, Tl};

/// A marked product `K0 a1 K1 ⋯ an Kn` of named languages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedProduct {
    pub langs: Vec<String>,
    pub letters: Vec<char>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Holds at `i ≥ 1` when the prefix before `i` is in the product.
    Prefix,
    /// Holds at `i ≤ |w|` when the suffix after `i` is in the product.
    Suffix,
}

impl MarkedProduct {
    /// Parses whitespace-separated `K0 a1 K1 … an Kn`.
    pub fn parse(src: &str, env: &Env) -> Result<Self, LogicError> {
        let items: Vec<&str> = src.split_whitespace().collect();
        if items.len().is_multiple_of(2) {
            return Err(LogicError::Syntax { position: 0, message: "expected K0 a1 K1 ... an Kn".into() });
        }
        let mut langs = Vec::new();
        let mut letters = Vec::new();
        for (i, item) in items.iter().enumerate() {
            if i % 2 == 0 {
                env.get(item)?;
                langs.push(item.to_string());
            } else {
                let mut cs = item.chars();
                let (Some(c), None) = (cs.next(), cs.next()) else {
                    return Err(LogicError::Syntax {
                        position: 0,
                        message: format!("expected a letter, got {item:?}"),
                    });
                };
                env.letter_index(c)?;
                letters.push(c);
            }
        }
        Ok(MarkedProduct { langs, letters })
    }
}

/// Formula recognizing membership of the prefix or suffix at a position.
pub fn build_xi(k: &MarkedProduct, side: Side) -> Tl {
    match side {
        Side::Suffix => {
            let n = k.letters.len();
            let mut phi = Tl::Finally(k.langs[n].clone(), Box::new(Tl::Max));
            for i in (0..n).rev() {
                phi = Tl::Finally(
                    k.langs[i].clone(),
                    Box::new(Tl::And(Box::new(Tl::Letter(k.letters[i])), Box::new(phi))),
                );
            }
            phi
        }
        Side::Prefix => {
            let mut phi = Tl::Previously(k.langs[0].clone(), Box::new(Tl::Min));
            for (i, &a) in k.letters.iter().enumerate() {
                phi = Tl::Previously(k.langs[i + 1].clone(), Box::new(Tl::And(Box::new(Tl::Letter(a)), Box::new(phi))));
            }
            phi
        }
    }
}
