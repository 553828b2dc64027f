//! Covering and separation for unambiguous polynomial closure over finite
//! base classes, via multiplicative rating maps and a saturation fixpoint.

pub mod saturate;
pub mod semiring;
#[cfg(feature = "synthesis")]
pub mod synth;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::lang::{Alphabet, Dfa, LangError};
use crate::monoid::{generate, syntactic_morphism, Morphism};
use crate::prevariety::{Oracle, PrevarietyError};

pub use saturate::{saturate_upol, saturate_upol_with_guard, Saturated};
pub use semiring::{
    canonical_rating_map, powerset_semiring, product_rating_map, product_semiring, rho_of_preimage, IdemSemiring,
    Powerset, Product, RatingMap, Semiring, JOINT_LIMIT, POWERSET_LIMIT,
};
#[cfg(feature = "synthesis")]
pub use synth::{synthesize_cover, synthesize_full_cover, BlockShape, CoverBlock, SYNTH_LIMIT};

#[derive(Debug, thiserror::Error)]
pub enum CoverError {
    #[error("size guard: {0}")]
    SizeGuard(String),
    #[error("product of no semirings")]
    EmptyProduct,
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal: {0}")]
    Internal(String),
    #[error(transparent)]
    Prevariety(#[from] PrevarietyError),
    #[error(transparent)]
    Lang(#[from] LangError),
}

/// A covering instance: a base morphism, a rating into a product of
/// powersets, and for each input language the part and subset that
/// detect it.
#[derive(Clone, Debug)]
pub struct CoverInstance {
    pub eta: Morphism,
    pub rating: RatingMap<Product<Powerset>>,
    /// Recognizers whose powersets make up the rating.
    pub recognizers: Vec<Morphism>,
    /// `(part, accepting set)` for `L0, L1, …`.
    pub targets: Vec<(usize, BitSet)>,
}

impl CoverInstance {
    /// Builds the instance for `(L0, Ls)`. All languages are recognized by
    /// one joint morphism when its powerset fits, otherwise by a product of
    /// their syntactic morphisms.
    pub fn new(l0: &Dfa, ls: &[Dfa], oracle: &Oracle) -> Result<Self, CoverError> {
        let alphabet = l0.alphabet().clone();
        if ls.iter().any(|d| d.alphabet() != &alphabet) {
            return Err(CoverError::AlphabetMismatch);
        }
        if !oracle.is_finite() {
            return Err(CoverError::Unsupported(format!("covering needs a finite class, got {}", oracle.name())));
        }
        let eta = oracle.canonical_morphism(&alphabet)?;
        let langs: Vec<Morphism> = std::iter::once(l0).chain(ls).map(syntactic_morphism).collect();
        let joint = joint_morphism(&alphabet, &langs);
        if joint.0.size() <= JOINT_LIMIT {
            let (m, elems) = joint;
            let targets = langs
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    let acc = l.accepting().expect("syntactic");
                    (0, BitSet::from_iter_len(m.size(), (0..m.size()).filter(|&x| acc[elems[x][i]])))
                })
                .collect();
            let rating = product_rating_map(vec![canonical_rating_map(&m)?])?;
            return Ok(CoverInstance { eta, rating, recognizers: vec![m], targets });
        }
        let maps = langs.iter().map(canonical_rating_map).collect::<Result<Vec<_>, _>>()?;
        let rating = product_rating_map(maps)?;
        let targets = langs
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let acc = l.accepting().expect("syntactic");
                (i, BitSet::from_iter_len(l.size(), (0..l.size()).filter(|&x| acc[x])))
            })
            .collect();
        Ok(CoverInstance { eta, rating, recognizers: langs, targets })
    }

    /// Membership in the upward closed set `F`.
    pub fn in_f(&self, r: &[BitSet]) -> bool {
        self.targets.iter().all(|(part, acc)| r[*part].intersects(acc))
    }

    /// Labels of the elements of each component of a rating.
    pub fn describe(&self, r: &[BitSet]) -> Vec<Vec<String>> {
        r.iter().zip(&self.recognizers).map(|(x, m)| x.iter().map(|s| m.label(s)).collect()).collect()
    }
}

fn joint_morphism(alphabet: &Alphabet, langs: &[Morphism]) -> (Morphism, Vec<Vec<usize>>) {
    let unit: Vec<usize> = langs.iter().map(|m| m.monoid().unit()).collect();
    let letters: Vec<Vec<usize>> =
        (0..alphabet.len()).map(|a| langs.iter().map(|m| m.letter_image(a)).collect()).collect();
    let (m, elems) = generate(alphabet, unit, &letters, |x, y| {
        x.iter().zip(y).zip(langs).map(|((&s, &t), l)| l.monoid().mul(s, t)).collect()
    });
    let acc = elems.iter().map(|x| langs[0].accepting().is_some_and(|a| a[x[0]])).collect();
    (m.with_accepting(acc), elems)
}

/// Answer to a covering question.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverResult {
    pub coverable: bool,
    /// Number of maximal elements of the optimal imprint.
    pub opt_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_f_element: Option<Vec<Vec<String>>>,
}

impl CoverResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// Full output of a covering run, kept for verification and synthesis.
#[derive(Clone, Debug)]
pub struct CoverReport {
    pub instance: CoverInstance,
    pub saturated: Saturated<Product<Powerset>>,
    pub result: CoverResult,
}

pub fn cover_report(l0: &Dfa, ls: &[Dfa], oracle: &Oracle) -> Result<CoverReport, CoverError> {
    let instance = CoverInstance::new(l0, ls, oracle)?;
    let saturated = saturate_upol(&instance.eta, &instance.rating)?;
    let opt = saturated.opt_maxima();
    let witness = opt.iter().find(|r| instance.in_f(r)).map(|r| instance.describe(r));
    let result = CoverResult { coverable: witness.is_none(), opt_size: opt.len(), witness_f_element: witness };
    Ok(CoverReport { instance, saturated, result })
}

/// Is `L0` coverable by UPol(C) languages each disjoint from some `Li`?
pub fn decide_cover(l0: &Dfa, ls: &[Dfa], oracle: &Oracle) -> Result<bool, CoverError> {
    Ok(cover_report(l0, ls, oracle)?.result.coverable)
}

/// Is `L1` separable from `L2` by a UPol(C) language?
pub fn decide_separation(l1: &Dfa, l2: &Dfa, oracle: &Oracle) -> Result<bool, CoverError> {
    decide_cover(l1, std::slice::from_ref(l2), oracle)
}
