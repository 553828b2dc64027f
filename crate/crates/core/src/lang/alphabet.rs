use super::LangError;

/// A finite, totally ordered alphabet of lowercase ASCII letters.
///
/// Letters are stored sorted, so two alphabets over the same letters compare
/// equal and letter indices are stable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Self, LangError> {
        let mut v: Vec<char> = Vec::new();
        for c in letters {
            if !c.is_ascii_lowercase() {
                return Err(LangError::InvalidLetter(c));
            }
            if v.contains(&c) {
                return Err(LangError::DuplicateLetter(c));
            }
            v.push(c);
        }
        if v.is_empty() {
            return Err(LangError::EmptyAlphabet);
        }
        v.sort_unstable();
        Ok(Alphabet { letters: v })
    }

    /// Parses an alphabet given as a string of letters, e.g. `"ab"`.
    pub fn from_str_letters(s: &str) -> Result<Self, LangError> {
        Self::new(s.chars().filter(|c| !c.is_whitespace() && *c != ','))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn letter(&self, i: usize) -> char {
        self.letters[i]
    }

    pub fn index(&self, c: char) -> Option<usize> {
        self.letters.binary_search(&c).ok()
    }

    /// Converts a string into letter indices.
    pub fn encode(&self, w: &str) -> Result<Vec<usize>, LangError> {
        w.chars()
            .enumerate()
            .map(|(pos, c)| self.index(c).ok_or(LangError::UnknownLetter { letter: c, position: pos }))
            .collect()
    }

    pub fn decode(&self, w: &[usize]) -> String {
        w.iter().map(|&i| self.letters[i]).collect()
    }

    /// All words of length at most `n`, in shortlex order.
    pub fn words_up_to(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(layer.len() * self.len());
            for w in &layer {
                for a in 0..self.len() {
                    let mut u = w.clone();
                    u.push(a);
                    next.push(u);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl std::fmt::Display for Alphabet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.letters {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_indexed() {
        let a = Alphabet::new(['b', 'a']).unwrap();
        assert_eq!(a.letters(), &['a', 'b']);
        assert_eq!(a.index('b'), Some(1));
        assert_eq!(a.encode("ba").unwrap(), vec![1, 0]);
        assert_eq!(a.decode(&[0, 1, 1]), "abb");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Alphabet::new([]), Err(LangError::EmptyAlphabet)));
        assert!(matches!(Alphabet::new(['a', 'a']), Err(LangError::DuplicateLetter('a'))));
        assert!(matches!(Alphabet::new(['A']), Err(LangError::InvalidLetter('A'))));
    }

    #[test]
    fn shortlex_enumeration() {
        let a = Alphabet::new(['a', 'b']).unwrap();
        let ws = a.words_up_to(2);
        let strs: Vec<String> = ws.iter().map(|w| a.decode(w)).collect();
        assert_eq!(strs, ["", "a", "b", "aa", "ab", "ba", "bb"]);
    }
}
