use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{FiniteMonoid, MonoidError, Morphism};
use crate::lang::Alphabet;

/// Serialized morphism: multiplication table, optional order, letter images
/// and shortlex witness words.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonoidJson {
    pub size: usize,
    pub unit: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<[usize; 2]>>,
    pub letters: BTreeMap<String, usize>,
    #[serde(default)]
    pub witness: Vec<String>,
}

impl Morphism {
    pub fn to_json_value(&self) -> MonoidJson {
        let m = self.monoid();
        let order = m.order().map(|o| {
            let mut pairs = Vec::new();
            for s in m.elements() {
                for t in m.elements() {
                    if o[s][t] {
                        pairs.push([s, t]);
                    }
                }
            }
            pairs
        });
        MonoidJson {
            size: m.size(),
            unit: m.unit(),
            table: m.table().to_vec(),
            order,
            letters: (0..self.alphabet().len())
                .map(|a| (self.alphabet().letter(a).to_string(), self.letter_image(a)))
                .collect(),
            witness: m.elements().map(|s| self.label(s)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    /// Reads a morphism; the witness field is recomputed, not trusted.
    pub fn from_json(text: &str) -> Result<Morphism, MonoidError> {
        let raw: MonoidJson = serde_json::from_str(text).map_err(|e| MonoidError::Json(e.to_string()))?;
        raw.into_morphism()
    }
}

impl MonoidJson {
    pub fn into_morphism(self) -> Result<Morphism, MonoidError> {
        if self.table.len() != self.size {
            return Err(MonoidError::BadTable);
        }
        let order = match &self.order {
            None => None,
            Some(pairs) => {
                let mut o = vec![vec![false; self.size]; self.size];
                for &[s, t] in pairs {
                    if s >= self.size || t >= self.size {
                        return Err(MonoidError::BadOrder);
                    }
                    o[s][t] = true;
                }
                for (s, row) in o.iter_mut().enumerate() {
                    row[s] = true;
                }
                Some(o)
            }
        };
        let monoid = FiniteMonoid::new(self.table, self.unit, order)?;
        let mut letters = Vec::new();
        for k in self.letters.keys() {
            let mut it = k.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => letters.push(c),
                _ => return Err(MonoidError::Json(format!("letter {k:?} is not a single character"))),
            }
        }
        let alphabet = Alphabet::new(letters)?;
        let images = alphabet.letters().iter().map(|c| self.letters[&c.to_string()]).collect();
        Morphism::new(alphabet, monoid, images)
    }
}

#[cfg(test)]
mod tests {
    use crate::lang::Alphabet;
    use crate::monoid::{syntactic_of_regex, Morphism};

    #[test]
    fn round_trip() {
        let m = syntactic_of_regex("(ab)*", &Alphabet::new(['a', 'b']).unwrap()).unwrap();
        let text = m.to_json();
        let back = Morphism::from_json(&text).unwrap();
        assert_eq!(back.monoid(), m.monoid());
        assert_eq!(back.letter_images(), m.letter_images());
        assert!(text.contains("\"witness\":[\"\",\"a\",\"b\",\"aa\",\"ab\",\"ba\"]"));
    }

    #[test]
    fn non_surjective_is_detected() {
        let text = r#"{"size":2,"unit":0,"table":[[0,1],[1,1]],"letters":{"a":0}}"#;
        let m = Morphism::from_json(text).unwrap();
        assert!(!m.is_surjective());
    }
}
