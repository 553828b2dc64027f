//! Membership tests: equations on syntactic morphisms and their kernels.

use serde::Serialize;
use thiserror::Error;

use crate::lang::{Dfa, LangError};
use crate::monoid::{syntactic_morphism, Morphism};
use crate::prevariety::{canonical_preorder, Oracle, PrevarietyError, Relation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecideError {
    #[error("the morphism carries no order")]
    MissingOrder,
    #[error("the given subset is not a submonoid")]
    NotSubmonoid,
    #[error("the given subset is not a subsemigroup")]
    NotSubsemigroup,
    #[error("unsupported class: {0}")]
    Unsupported(String),
    #[error("malformed class specification {0:?}")]
    BadSpec(String),
    #[error(transparent)]
    Prevariety(#[from] PrevarietyError),
    #[error(transparent)]
    Lang(#[from] LangError),
}

/// A violated equation instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub equation: String,
    pub elements: Vec<usize>,
    pub witnesses: Vec<String>,
}

/// Outcome of a membership test, with a certificate on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub member: bool,
    pub certificate: Option<Certificate>,
}

#[derive(Serialize)]
struct VerdictJson<'a> {
    member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    equation: Option<&'a str>,
    witnesses: Vec<&'a str>,
}

impl Verdict {
    fn yes() -> Self {
        Verdict { member: true, certificate: None }
    }

    fn no(alpha: &Morphism, equation: &str, elements: Vec<usize>) -> Self {
        let witnesses = elements.iter().map(|&s| alpha.label(s)).collect();
        Verdict { member: false, certificate: Some(Certificate { equation: equation.into(), elements, witnesses }) }
    }

    pub fn to_json(&self) -> String {
        let c = self.certificate.as_ref();
        let v = VerdictJson {
            member: self.member,
            equation: c.map(|c| c.equation.as_str()),
            witnesses: c.map(|c| c.witnesses.iter().map(String::as_str).collect()).unwrap_or_default(),
        };
        serde_json::to_string(&v).expect("serializable")
    }
}

/// `s^(ω+1) ≤ s^ω t s^ω` for every pair `(s, t)`.
pub fn check_pol(alpha: &Morphism, pairs: &Relation) -> Result<Verdict, DecideError> {
    let m = alpha.monoid();
    let order = m.order().ok_or(DecideError::MissingOrder)?;
    let omega = m.omega_table();
    for (s, t) in pairs.pairs() {
        let w = omega[s];
        if !order[m.mul(w, s)][m.mul(m.mul(w, t), w)] {
            return Ok(Verdict::no(alpha, "s^(w+1) <= s^w t s^w", vec![s, t]));
        }
    }
    Ok(Verdict::yes())
}

/// `s^(ω+1) = s^ω t s^ω` for every pair `(s, t)`.
pub fn check_upol(alpha: &Morphism, pairs: &Relation) -> Result<Verdict, DecideError> {
    let m = alpha.monoid();
    let omega = m.omega_table();
    for (s, t) in pairs.pairs() {
        let w = omega[s];
        if m.mul(w, s) != m.mul(m.mul(w, t), w) {
            return Ok(Verdict::no(alpha, "s^(w+1) = s^w t s^w", vec![s, t]));
        }
    }
    Ok(Verdict::yes())
}

/// Same equation quantified over the canonical preorder of the pairs.
pub fn check_upol_via_preorder(alpha: &Morphism, pairs: &Relation) -> Result<Verdict, DecideError> {
    check_upol(alpha, &canonical_preorder(pairs))
}

/// `(eset)^(ω+1) = (eset)^ω e t (eset)^ω` for every idempotent `e`,
/// every `s` with `(e, s)` a pair, and every `t`.
pub fn check_upol_bpol(alpha: &Morphism, pairs: &Relation) -> Result<Verdict, DecideError> {
    let m = alpha.monoid();
    let omega = m.omega_table();
    for e in m.idempotents() {
        for s in m.elements().filter(|&s| pairs.contains(e, s)) {
            let es = m.mul(e, s);
            let ese = m.mul(es, e);
            for t in m.elements() {
                let x = m.mul(ese, t);
                let w = omega[x];
                let et = m.mul(e, t);
                if m.mul(w, x) != m.mul(m.mul(w, et), w) {
                    return Ok(Verdict::no(alpha, "(eset)^(w+1) = (eset)^w et (eset)^w", vec![e, s, t]));
                }
            }
        }
    }
    Ok(Verdict::yes())
}

/// `(st)^ω = (st)^ω t (st)^ω` for all `s, t` in a submonoid.
pub fn check_da(alpha: &Morphism, submonoid: &[usize]) -> Result<Verdict, DecideError> {
    let m = alpha.monoid();
    if !m.is_submonoid(submonoid) {
        return Err(DecideError::NotSubmonoid);
    }
    let omega = m.omega_table();
    for &s in submonoid {
        for &t in submonoid {
            let w = omega[m.mul(s, t)];
            if w != m.mul(m.mul(w, t), w) {
                return Ok(Verdict::no(alpha, "(st)^w = (st)^w t (st)^w", vec![s, t]));
            }
        }
    }
    Ok(Verdict::yes())
}

/// `(esete)^ω = (esete)^ω ete (esete)^ω` for all `s, t` in a subsemigroup
/// and every idempotent `e` of it. The empty subsemigroup passes.
pub fn check_lda(alpha: &Morphism, subsemigroup: &[usize]) -> Result<Verdict, DecideError> {
    let m = alpha.monoid();
    if !m.is_subsemigroup(subsemigroup) {
        return Err(DecideError::NotSubsemigroup);
    }
    let omega = m.omega_table();
    for &e in subsemigroup.iter().filter(|&&e| m.is_idempotent(e)) {
        for &s in subsemigroup {
            let es = m.mul(e, s);
            for &t in subsemigroup {
                let ete = m.mul(m.mul(e, t), e);
                let x = m.mul(es, ete);
                let w = omega[x];
                if w != m.mul(m.mul(w, ete), w) {
                    return Ok(Verdict::no(alpha, "(esete)^w = (esete)^w ete (esete)^w", vec![e, s, t]));
                }
            }
        }
    }
    Ok(Verdict::yes())
}

/// Parsed class specification for [`member`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassSpec {
    Pol(Oracle),
    UPol(Oracle),
    UPolBPol(Oracle),
    Fo2(Oracle),
    Fo2Succ(Oracle),
}

impl ClassSpec {
    /// Parses `pol:C`, `upol:C`, `upol-bpol:C`, `fo2:G` or `fo2s:G`.
    pub fn parse(spec: &str) -> Result<ClassSpec, DecideError> {
        let (op, base) = spec.split_once(':').ok_or_else(|| DecideError::BadSpec(spec.into()))?;
        let oracle = Oracle::parse(base)?;
        let group_only = |o: Oracle| match o {
            Oracle::St | Oracle::Mod | Oracle::Amt => Ok(o),
            other => Err(DecideError::Unsupported(format!("{op} requires st, mod or amt, not {}", other.name()))),
        };
        match op {
            "pol" => Ok(ClassSpec::Pol(oracle)),
            "upol" => Ok(ClassSpec::UPol(oracle)),
            "upol-bpol" => Ok(ClassSpec::UPolBPol(oracle)),
            "fo2" => Ok(ClassSpec::Fo2(group_only(oracle)?)),
            "fo2s" => Ok(ClassSpec::Fo2Succ(group_only(oracle)?)),
            _ => Err(DecideError::BadSpec(spec.into())),
        }
    }
}

/// Decides membership of `L(d)` in the class described by `spec`.
pub fn member(d: &Dfa, spec: &str) -> Result<Verdict, DecideError> {
    member_spec(d, &ClassSpec::parse(spec)?)
}

pub fn member_spec(d: &Dfa, spec: &ClassSpec) -> Result<Verdict, DecideError> {
    let alpha = syntactic_morphism(d);
    match spec {
        ClassSpec::Pol(o) => check_pol(&alpha, &o.pairs(&alpha)?),
        ClassSpec::UPol(o) => check_upol(&alpha, &o.pairs(&alpha)?),
        ClassSpec::UPolBPol(o) => check_upol_bpol(&alpha, &o.pairs(&alpha)?),
        ClassSpec::Fo2(o) => check_da(&alpha, &o.kernel(&alpha)?),
        ClassSpec::Fo2Succ(o) => check_lda(&alpha, &o.strict_kernel(&alpha)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{compile_str, Alphabet};
    use crate::monoid::syntactic_of_regex;

    fn ab() -> Alphabet {
        Alphabet::new(['a', 'b']).unwrap()
    }

    fn d(r: &str) -> Dfa {
        compile_str(r, &ab()).unwrap()
    }

    fn is_member(r: &str, spec: &str) -> bool {
        member(&d(r), spec).unwrap().member
    }

    #[test]
    fn pol_verdicts() {
        assert!(is_member("A*aA*", "pol:st"));
        let v = member(&d("b*"), "pol:st").unwrap();
        assert!(!v.member);
        let c = v.certificate.unwrap();
        assert_eq!(c.witnesses, vec!["", "a"]);
    }

    #[test]
    fn upol_verdicts() {
        assert!(!is_member("A*aA*", "upol:st"));
        assert!(is_member("(AA)*", "upol:mod"));
        let a = Alphabet::new(['a']).unwrap();
        assert!(!member(&compile_str("(aa)*", &a).unwrap(), "upol:at").unwrap().member);
        assert!(is_member("b*aA*", "upol:at"));
    }

    #[test]
    fn upol_bpol_and_logic_verdicts() {
        assert!(!is_member("(ab)*", "upol-bpol:st"));
        assert!(is_member("A*aA*", "upol-bpol:st"));
        assert!(!is_member("(ab)*", "fo2:st"));
        assert!(is_member("(ab)*", "fo2s:st"));
        assert!(is_member("A*aA*", "fo2:st"));
        assert!(is_member("(AA)*", "fo2:mod"));
        assert!(!is_member("(AA)*", "fo2:st"));
    }

    #[test]
    fn da_certificate_on_ab_star() {
        let alpha = syntactic_of_regex("(ab)*", &ab()).unwrap();
        let v = check_da(&alpha, &Oracle::St.kernel(&alpha).unwrap()).unwrap();
        assert!(!v.member);
        let c = v.certificate.unwrap();
        let m = alpha.monoid();
        let (s, t) = (c.elements[0], c.elements[1]);
        let w = m.omega(m.mul(s, t));
        assert_ne!(w, m.mul(m.mul(w, t), w));
    }

    #[test]
    fn even_a_strict_kernel_not_lda() {
        let alpha = syntactic_of_regex("(aa)*", &Alphabet::new(['a']).unwrap()).unwrap();
        let sk = Oracle::St.strict_kernel(&alpha).unwrap();
        assert_eq!(sk.len(), 2);
        assert!(!check_lda(&alpha, &sk).unwrap().member);
    }

    #[test]
    fn errors() {
        let alpha = syntactic_of_regex("(ab)*", &ab()).unwrap();
        let a = alpha.element_of("a").unwrap();
        assert_eq!(check_da(&alpha, &[a]), Err(DecideError::NotSubmonoid));
        assert_eq!(check_lda(&alpha, &[a]), Err(DecideError::NotSubsemigroup));
        let unordered = crate::monoid::transition_monoid(&d("(ab)*"));
        assert_eq!(check_pol(&unordered, &Relation::full(6)), Err(DecideError::MissingOrder));
        assert!(matches!(ClassSpec::parse("fo2:at"), Err(DecideError::Unsupported(_))));
        assert!(matches!(ClassSpec::parse("upol:gr"), Err(DecideError::Prevariety(PrevarietyError::Unsupported(_)))));
        assert!(matches!(ClassSpec::parse("nonsense"), Err(DecideError::BadSpec(_))));
    }

    #[test]
    fn json_shape() {
        let v = member(&d("b*"), "pol:st").unwrap();
        assert_eq!(v.to_json(), r#"{"member":false,"equation":"s^(w+1) <= s^w t s^w","witnesses":["","a"]}"#);
        let v = member(&d("A*aA*"), "pol:st").unwrap();
        assert_eq!(v.to_json(), r#"{"member":true,"witnesses":[]}"#);
    }
}
