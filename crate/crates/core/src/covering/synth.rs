//! Construction of UPol(C)-partitions witnessing the saturated set.
//!
//! For `(x,p),(y,q) ∈ S` and `t ∈ N`, builds a partition `K` of `η⁻¹(t)`
//! into UPol(C) languages with `(xty, p·ρ(K)·q) ∈ S` for every block. The
//! recursion descends on the J-rank of `xty`, then on the R-index of
//! `(x,p)` and the L-index of `(y,q)` in the monoid `S`.

use std::collections::HashMap;
use std::rc::Rc;

use super::saturate::Saturated;
use super::semiring::Semiring;
use super::CoverError;
use crate::bitset::BitSet;
use crate::lang::{concat_marked, Dfa};
use crate::monoid::{Green, GreenKind};

/// Largest explicit saturated set the synthesizer accepts.
pub const SYNTH_LIMIT: usize = 1 << 13;
const MAX_DEPTH: usize = 256;

#[derive(Clone, Debug)]
pub enum BlockShape {
    /// `η⁻¹(t)`.
    Preimage(usize),
    /// `U·a·V`, deterministic on the side of the marker.
    Concat(Rc<CoverBlock>, usize, Rc<CoverBlock>),
}

#[derive(Clone, Debug)]
pub struct CoverBlock {
    pub shape: BlockShape,
    pub dfa: Dfa,
    pub description: String,
}

struct Synth<'a, S: Semiring> {
    sat: &'a Saturated<S>,
    elems: Vec<(usize, S::Elem)>,
    index: HashMap<(usize, S::Elem), usize>,
    green: Green,
    unit: usize,
    preimages: Vec<Rc<CoverBlock>>,
    memo: HashMap<(usize, usize, usize), Vec<Rc<CoverBlock>>>,
    left_stable: HashMap<(usize, usize), bool>,
    right_stable: HashMap<(usize, usize), bool>,
    ideals: HashMap<(usize, bool), BitSet>,
}

impl<'a, S: Semiring> Synth<'a, S> {
    fn new(sat: &'a Saturated<S>) -> Result<Self, CoverError> {
        let elems = sat
            .explicit(SYNTH_LIMIT)
            .ok_or_else(|| CoverError::SizeGuard(format!("saturated set exceeds {SYNTH_LIMIT} elements")))?;
        let index: HashMap<(usize, S::Elem), usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let m = sat.eta.monoid();
        let unit = *index
            .get(&(m.unit(), sat.rating.semiring.one()))
            .ok_or_else(|| CoverError::Internal("unit missing from saturated set".into()))?;
        let preimages = m
            .elements()
            .map(|t| {
                Rc::new(CoverBlock {
                    shape: BlockShape::Preimage(t),
                    dfa: sat.eta.preimage_dfa(&[t]),
                    description: match sat.eta.label(t) {
                        l if l.is_empty() => "eta^-1(1)".to_string(),
                        l => format!("eta^-1({l})"),
                    },
                })
            })
            .collect();
        Ok(Synth {
            sat,
            elems,
            index,
            green: m.green(),
            unit,
            preimages,
            memo: HashMap::new(),
            left_stable: HashMap::new(),
            right_stable: HashMap::new(),
            ideals: HashMap::new(),
        })
    }

    fn lookup(&self, t: usize, r: S::Elem) -> Result<usize, CoverError> {
        self.index.get(&(t, r)).copied().ok_or_else(|| CoverError::Internal("element outside saturated set".into()))
    }

    fn mul(&self, i: usize, j: usize) -> Result<usize, CoverError> {
        let (s, r) = &self.elems[i];
        let (t, q) = &self.elems[j];
        self.lookup(self.sat.eta.monoid().mul(*s, *t), self.sat.rating.semiring.mul(r, q))
    }

    /// `S·q` (`left`) or `q·S` as a set of indices.
    fn ideal(&mut self, q: usize, left: bool) -> Result<&BitSet, CoverError> {
        if !self.ideals.contains_key(&(q, left)) {
            let mut set = BitSet::new(self.elems.len());
            for w in 0..self.elems.len() {
                set.insert(if left { self.mul(w, q)? } else { self.mul(q, w)? });
            }
            self.ideals.insert((q, left), set);
        }
        Ok(&self.ideals[&(q, left)])
    }

    /// Some `(z,r) ∈ S` with `z L t` and `(zy,rq) L (y,q)` in `S`.
    fn is_left_stable(&mut self, y: usize, t: usize) -> Result<bool, CoverError> {
        if let Some(&b) = self.left_stable.get(&(y, t)) {
            return Ok(b);
        }
        let mut found = false;
        'outer: for z in 0..self.elems.len() {
            if !self.green.equiv(GreenKind::L, self.elems[z].0, t) {
                continue;
            }
            let zy = self.mul(z, y)?;
            if self.ideal(zy, true)?.contains(y) {
                found = true;
                break 'outer;
            }
        }
        self.left_stable.insert((y, t), found);
        Ok(found)
    }

    /// Some `(z,r) ∈ S` with `z R t` and `(xz,pr) R (x,p)` in `S`.
    fn is_right_stable(&mut self, x: usize, t: usize) -> Result<bool, CoverError> {
        if let Some(&b) = self.right_stable.get(&(x, t)) {
            return Ok(b);
        }
        let mut found = false;
        'outer: for z in 0..self.elems.len() {
            if !self.green.equiv(GreenKind::R, self.elems[z].0, t) {
                continue;
            }
            let xz = self.mul(x, z)?;
            if self.ideal(xz, false)?.contains(x) {
                found = true;
                break 'outer;
            }
        }
        self.right_stable.insert((x, t), found);
        Ok(found)
    }

    fn concat(&self, u: &Rc<CoverBlock>, a: usize, v: &Rc<CoverBlock>) -> Result<Rc<CoverBlock>, CoverError> {
        let letter = self.sat.eta.alphabet().letter(a);
        Ok(Rc::new(CoverBlock {
            shape: BlockShape::Concat(u.clone(), a, v.clone()),
            dfa: concat_marked(&u.dfa, a, &v.dfa)?,
            description: format!("({}){letter}({})", u.description, v.description),
        }))
    }

    fn run(&mut self, x: usize, y: usize, t: usize, depth: usize) -> Result<Vec<Rc<CoverBlock>>, CoverError> {
        if let Some(v) = self.memo.get(&(x, y, t)) {
            return Ok(v.clone());
        }
        if depth > MAX_DEPTH {
            return Err(CoverError::Internal("synthesis recursion too deep".into()));
        }
        let eta = &self.sat.eta;
        let m = eta.monoid();
        let xty = m.mul(m.mul(self.elems[x].0, t), self.elems[y].0);
        let blocks = if !self.green.equiv(GreenKind::J, xty, t) {
            self.run(self.unit, self.unit, t, depth + 1)?
        } else if !self.is_left_stable(y, t)? {
            let mut out = Vec::new();
            for (t1, a, t2) in self.triples(t, true) {
                let a_elem = self.lookup(eta.letter_image(a), self.sat.rating.letters[a].clone())?;
                for v in self.run(self.unit, self.unit, t2, depth + 1)? {
                    let rv = self.sat.rating.rate_dfa(&v.dfa);
                    let v_elem = self.lookup(t2, rv)?;
                    let y2 = self.mul(self.mul(a_elem, v_elem)?, y)?;
                    for u in self.run(x, y2, t1, depth + 1)? {
                        out.push(self.concat(&u, a, &v)?);
                    }
                }
            }
            out
        } else if !self.is_right_stable(x, t)? {
            let mut out = Vec::new();
            for (t1, a, t2) in self.triples(t, false) {
                let a_elem = self.lookup(eta.letter_image(a), self.sat.rating.letters[a].clone())?;
                for u in self.run(self.unit, self.unit, t1, depth + 1)? {
                    let ru = self.sat.rating.rate_dfa(&u.dfa);
                    let u_elem = self.lookup(t1, ru)?;
                    let x2 = self.mul(x, self.mul(u_elem, a_elem)?)?;
                    for v in self.run(x2, y, t2, depth + 1)? {
                        out.push(self.concat(&u, a, &v)?);
                    }
                }
            }
            out
        } else {
            vec![self.preimages[t].clone()]
        };
        self.memo.insert((x, y, t), blocks.clone());
        Ok(blocks)
    }

    /// Factorizations `t = t1·η(a)·t2` cut at the shortest suffix that is
    /// L-equivalent to `t` (`left`), or at the shortest such prefix for R.
    fn triples(&self, t: usize, left: bool) -> Vec<(usize, usize, usize)> {
        let eta = &self.sat.eta;
        let m = eta.monoid();
        let mut out = Vec::new();
        for t1 in m.elements() {
            for a in 0..eta.alphabet().len() {
                let ea = eta.letter_image(a);
                for t2 in m.elements() {
                    if m.mul(m.mul(t1, ea), t2) != t {
                        continue;
                    }
                    let ok = if left {
                        let at2 = m.mul(ea, t2);
                        self.green.equiv(GreenKind::L, t, at2) && self.green.strictly_below(GreenKind::L, at2, t2)
                    } else {
                        let t1a = m.mul(t1, ea);
                        self.green.equiv(GreenKind::R, t, t1a) && self.green.strictly_below(GreenKind::R, t1a, t1)
                    };
                    if ok {
                        out.push((t1, a, t2));
                    }
                }
            }
        }
        out
    }
}

/// Partition of `η⁻¹(t)` whose blocks have ratings in `S(t)`.
pub fn synthesize_cover<S: Semiring>(sat: &Saturated<S>, t: usize) -> Result<Vec<Rc<CoverBlock>>, CoverError> {
    let mut synth = Synth::new(sat)?;
    let unit = synth.unit;
    synth.run(unit, unit, t, 0)
}

/// Partition of `A*` obtained by joining the partitions of every `η⁻¹(t)`.
pub fn synthesize_full_cover<S: Semiring>(sat: &Saturated<S>) -> Result<Vec<Rc<CoverBlock>>, CoverError> {
    let mut synth = Synth::new(sat)?;
    let unit = synth.unit;
    let mut out = Vec::new();
    for t in sat.eta.monoid().elements() {
        out.extend(synth.run(unit, unit, t, 0)?);
    }
    Ok(out)
}
