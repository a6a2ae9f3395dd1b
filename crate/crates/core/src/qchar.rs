//! q-characters (sums of ℓ-weights) and ordinary characters, possibly truncated.
//!
//! A depth `Some(D)` means the sum is exact for every term within height `D`
//! of the top weight and says nothing below that.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::{CartanData, Weight};
use crate::error::Error;
use crate::lweight::{in_a_inverse_monoid, LWeight};

fn min_depth(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// The weight that dominates all others, if there is one.
fn unique_top<'a>(cd: &CartanData, weights: impl Iterator<Item = &'a Weight> + Clone) -> Option<Weight> {
    let mut tops = weights.clone().filter(|w| weights.clone().all(|o| cd.weight_leq(o, w).is_some()));
    let t = tops.next()?.clone();
    Some(t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QChar {
    cartan: CartanData,
    terms: BTreeMap<LWeight, u64>,
    depth: Option<u32>,
}

impl QChar {
    pub fn new(cartan: CartanData, terms: BTreeMap<LWeight, u64>, depth: Option<u32>) -> Self {
        let terms = terms.into_iter().filter(|(_, m)| *m > 0).collect();
        QChar { cartan, terms, depth }
    }

    pub fn from_terms<I: IntoIterator<Item = LWeight>>(cartan: CartanData, it: I, depth: Option<u32>) -> Self {
        let mut terms = BTreeMap::new();
        for w in it {
            *terms.entry(w).or_insert(0) += 1;
        }
        QChar { cartan, terms, depth }
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn terms(&self) -> &BTreeMap<LWeight, u64> {
        &self.terms
    }

    pub fn depth(&self) -> Option<u32> {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiplicity(&self, w: &LWeight) -> u64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    fn weights(&self) -> Result<BTreeMap<LWeight, Weight>, Error> {
        self.terms.keys().map(|w| Ok((w.clone(), w.varpi()?))).collect()
    }

    /// The unique term of maximal weight (which must have multiplicity one).
    pub fn top(&self) -> Result<LWeight, Error> {
        let ws = self.weights()?;
        let top_w = unique_top(&self.cartan, ws.values()).ok_or(Error::NoUniqueTop)?;
        let mut at_top = ws.iter().filter(|(_, w)| **w == top_w);
        let (lw, _) = at_top.next().ok_or(Error::NoUniqueTop)?;
        if at_top.next().is_some() || self.terms[lw] != 1 {
            return Err(Error::NoUniqueTop);
        }
        Ok(lw.clone())
    }

    /// Divides every term by the top ℓ-weight.
    pub fn normalize(&self) -> Result<QChar, Error> {
        let top_inv = self.top()?.inv()?;
        let terms = self.terms.iter().map(|(w, m)| (w.mul(&top_inv), *m)).collect();
        Ok(QChar { cartan: self.cartan.clone(), terms, depth: self.depth })
    }

    /// Pushes forward to the ordinary character.
    pub fn chi(&self) -> Result<Char, Error> {
        let mut terms: BTreeMap<Weight, i64> = BTreeMap::new();
        for (w, m) in &self.terms {
            *terms.entry(w.varpi()?).or_insert(0) += *m as i64;
        }
        Ok(Char::new(self.cartan.clone(), terms, self.depth))
    }

    pub fn mul(&self, o: &QChar) -> Result<QChar, Error> {
        if self.cartan != o.cartan {
            return Err(Error::Incompatible("q-characters of different types".into()));
        }
        let mut terms: BTreeMap<LWeight, u64> = BTreeMap::new();
        for (a, ma) in &self.terms {
            for (b, mb) in &o.terms {
                *terms.entry(a.mul(b)).or_insert(0) += ma * mb;
            }
        }
        Ok(QChar { cartan: self.cartan.clone(), terms, depth: min_depth(self.depth, o.depth) })
    }

    /// Height of each term below the top weight; `None` for terms not below it.
    fn heights(&self) -> Result<Vec<(LWeight, Option<i64>)>, Error> {
        let ws = self.weights()?;
        let top_w = unique_top(&self.cartan, ws.values()).ok_or(Error::NoUniqueTop)?;
        Ok(ws.into_iter().map(|(lw, w)| (lw, self.cartan.height_below(&w, &top_w))).collect())
    }

    /// Keeps the terms within height `d` of the top and records depth `d`.
    pub fn truncate(&self, d: u32) -> Result<QChar, Error> {
        let keep: Vec<LWeight> = self
            .heights()?
            .into_iter()
            .filter(|(_, h)| h.is_some_and(|h| h <= d as i64))
            .map(|(w, _)| w)
            .collect();
        let terms = keep.into_iter().map(|w| {
            let m = self.terms[&w];
            (w, m)
        });
        Ok(QChar { cartan: self.cartan.clone(), terms: terms.collect(), depth: Some(min_depth(self.depth, Some(d)).unwrap()) })
    }

    /// True when every term other than the trivial one lies in the `A^{-1}` monoid.
    pub fn is_a_inverse_expansion(&self) -> bool {
        self.terms.keys().all(|w| in_a_inverse_monoid(&self.cartan, w))
    }
}

impl fmt::Display for QChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.terms.iter().map(|(w, m)| if *m == 1 { format!("[{w}]") } else { format!("{m}[{w}]") }).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Checks that all q-characters in `seq` agree on every term within height
/// `depth` of their tops, and returns that common truncation.
pub fn limit_stabilize(seq: &[QChar], depth: u32) -> Result<QChar, StabilizeFailure> {
    let truncs: Vec<QChar> = seq
        .iter()
        .map(|c| c.truncate(depth))
        .collect::<Result<_, _>>()
        .map_err(|e| StabilizeFailure { lweight: None, indices: (0, 0), reason: e.to_string() })?;
    let first = truncs.first().ok_or(StabilizeFailure {
        lweight: None,
        indices: (0, 0),
        reason: "empty sequence".into(),
    })?;
    for (k, t) in truncs.iter().enumerate().skip(1) {
        let keys = first.terms.keys().chain(t.terms.keys());
        for w in keys {
            if first.multiplicity(w) != t.multiplicity(w) {
                return Err(StabilizeFailure {
                    lweight: Some(w.clone()),
                    indices: (0, k),
                    reason: format!("multiplicity {} vs {}", first.multiplicity(w), t.multiplicity(w)),
                });
            }
        }
    }
    Ok(first.clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizeFailure {
    pub lweight: Option<LWeight>,
    pub indices: (usize, usize),
    pub reason: String,
}

impl fmt::Display for StabilizeFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lweight {
            Some(w) => write!(f, "entries {} and {} differ at {w}: {}", self.indices.0, self.indices.1, self.reason),
            None => write!(f, "{}", self.reason),
        }
    }
}

/// An ordinary character `Σ mult · [ω]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Char {
    cartan: CartanData,
    terms: BTreeMap<Weight, i64>,
    depth: Option<u32>,
}

impl Char {
    pub fn new(cartan: CartanData, terms: BTreeMap<Weight, i64>, depth: Option<u32>) -> Self {
        let terms = terms.into_iter().filter(|(_, m)| *m != 0).collect();
        Char { cartan, terms, depth }
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn terms(&self) -> &BTreeMap<Weight, i64> {
        &self.terms
    }

    pub fn depth(&self) -> Option<u32> {
        self.depth
    }

    pub fn multiplicity(&self, w: &[i64]) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn top(&self) -> Option<Weight> {
        unique_top(&self.cartan, self.terms.keys())
    }

    pub fn mul(&self, o: &Char) -> Result<Char, Error> {
        if self.cartan != o.cartan {
            return Err(Error::Incompatible("characters of different types".into()));
        }
        let mut terms: BTreeMap<Weight, i64> = BTreeMap::new();
        for (a, ma) in &self.terms {
            for (b, mb) in &o.terms {
                let w: Weight = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *terms.entry(w).or_insert(0) += ma * mb;
            }
        }
        Ok(Char::new(self.cartan.clone(), terms, min_depth(self.depth, o.depth)))
    }

    /// `[ω] ↦ [ω^{-1}]`.
    pub fn inverse(&self) -> Char {
        let terms = self.terms.iter().map(|(w, m)| (w.iter().map(|x| -x).collect(), *m)).collect();
        Char { cartan: self.cartan.clone(), terms, depth: self.depth }
    }

    /// Keeps the weights within height `d` below `reference`.
    pub fn truncate_below(&self, reference: &[i64], d: u32) -> Char {
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| self.cartan.height_below(w, reference).is_some_and(|h| h <= d as i64))
            .map(|(w, m)| (w.clone(), *m))
            .collect();
        Char { cartan: self.cartan.clone(), terms, depth: Some(min_depth(self.depth, Some(d)).unwrap()) }
    }

    /// Keeps the weights within height `d` of the top weight.
    pub fn truncate(&self, d: u32) -> Result<Char, Error> {
        let top = self.top().ok_or(Error::NoUniqueTop)?;
        Ok(self.truncate_below(&top, d))
    }

    /// Compares two characters on all weights within height `d` of their common top.
    pub fn agrees_to_depth(&self, o: &Char, d: u32) -> Result<bool, Error> {
        let (ta, tb) = (self.top().ok_or(Error::NoUniqueTop)?, o.top().ok_or(Error::NoUniqueTop)?);
        if ta != tb {
            return Ok(false);
        }
        Ok(self.truncate_below(&ta, d).terms == o.truncate_below(&ta, d).terms)
    }

    /// The first weight (in height order) where two characters differ within depth `d`.
    pub fn first_difference(&self, o: &Char, reference: &[i64], d: u32) -> Option<(Weight, i64, i64)> {
        let a = self.truncate_below(reference, d);
        let b = o.truncate_below(reference, d);
        let mut keys: Vec<&Weight> = a.terms.keys().chain(b.terms.keys()).collect();
        keys.sort_by_key(|w| (self.cartan.height_below(w, reference), (*w).clone()));
        keys.into_iter().find(|w| a.multiplicity(w) != b.multiplicity(w)).map(|w| (w.clone(), a.multiplicity(w), b.multiplicity(w)))
    }
}

impl fmt::Display for Char {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, m)| {
                let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                if *m == 1 { format!("[{}]", w.join(",")) } else { format!("{m}[{}]", w.join(",")) }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Free-function form of [`Char::inverse`].
pub fn char_inverse(c: &Char) -> Char {
    c.inverse()
}

#[derive(Serialize, Deserialize)]
struct QTermJson {
    lweight: LWeight,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
struct QCharJson {
    #[serde(rename = "type")]
    ty: String,
    depth: Option<u32>,
    terms: Vec<QTermJson>,
}

impl Serialize for QChar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QCharJson {
            ty: self.cartan.label(),
            depth: self.depth,
            terms: self.terms.iter().map(|(w, m)| QTermJson { lweight: w.clone(), mult: *m }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QChar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let j = QCharJson::deserialize(de)?;
        let cd = CartanData::parse(&j.ty).map_err(serde::de::Error::custom)?;
        let mut terms = BTreeMap::new();
        for t in j.terms {
            *terms.entry(t.lweight).or_insert(0) += t.mult;
        }
        Ok(QChar::new(cd, terms, j.depth))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    weight: Weight,
    mult: i64,
}

#[derive(Serialize, Deserialize)]
struct CharJson {
    #[serde(rename = "type")]
    ty: String,
    depth: Option<u32>,
    terms: Vec<TermJson>,
}

impl Serialize for Char {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CharJson {
            ty: self.cartan.label(),
            depth: self.depth,
            terms: self.terms.iter().map(|(w, m)| TermJson { weight: w.clone(), mult: *m }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Char {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let j = CharJson::deserialize(de)?;
        let cd = CartanData::parse(&j.ty).map_err(serde::de::Error::custom)?;
        let mut terms = BTreeMap::new();
        for t in j.terms {
            *terms.entry(t.weight).or_insert(0) += t.mult;
        }
        Ok(Char::new(cd, terms, j.depth))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lweight::{a_monomial, kr_monomial, Monomial};

    fn a1() -> CartanData {
        CartanData::parse("A1").unwrap()
    }

    /// χ_q of the two-dimensional evaluation module at Y_{1,1}.
    fn fundamental() -> QChar {
        let cd = a1();
        let y = Monomial::y(1, 0);
        let low = y.mul(&a_monomial(&cd, 1, 1).unwrap().inv());
        QChar::from_terms(cd.clone(), [y.eval(&cd), low.eval(&cd)], None)
    }

    #[test]
    fn top_and_normalize() {
        let c = fundamental();
        assert_eq!(c.top().unwrap(), Monomial::y(1, 0).eval(&a1()));
        let n = c.normalize().unwrap();
        assert!(n.terms().contains_key(&LWeight::one(1)));
        assert!(n.is_a_inverse_expansion());
    }

    #[test]
    fn chi_of_fundamental() {
        let ch = fundamental().chi().unwrap();
        assert_eq!(ch.terms().len(), 2);
        assert_eq!(ch.multiplicity(&[1]), 1);
        assert_eq!(ch.multiplicity(&[-1]), 1);
    }

    #[test]
    fn product_is_multiplicative_under_chi() {
        let c = fundamental();
        let sq = c.mul(&c).unwrap();
        assert_eq!(sq.chi().unwrap(), c.chi().unwrap().mul(&c.chi().unwrap()).unwrap());
        assert_eq!(sq.chi().unwrap().multiplicity(&[0]), 2);
    }

    #[test]
    fn no_unique_top() {
        let cd = a1();
        let w = Monomial::y(1, 0).eval(&cd);
        let c = QChar::from_terms(cd, [w.clone(), w], None);
        assert_eq!(c.top(), Err(Error::NoUniqueTop));
    }

    #[test]
    fn stabilization_detects_short_member() {
        let cd = a1();
        let kr = |k: u32| {
            let m = kr_monomial(&cd, 1, k, -2 * k as i64 + 1).unwrap();
            let mut terms = vec![m.clone()];
            let mut cur = m;
            for s in 0..k as i64 {
                cur = cur.mul(&a_monomial(&cd, 1, -2 * s).unwrap().inv());
                terms.push(cur.clone());
            }
            QChar::from_terms(cd.clone(), terms.iter().map(|t| t.eval(&cd)), None).normalize().unwrap()
        };
        let ok = limit_stabilize(&[kr(4), kr(5), kr(6)], 4).unwrap();
        assert_eq!(ok.len(), 5);
        let err = limit_stabilize(&[kr(2), kr(5)], 4).unwrap_err();
        assert_eq!(err.indices, (0, 1));
    }

    #[test]
    fn char_inverse_involution() {
        let ch = fundamental().mul(&fundamental()).unwrap().chi().unwrap();
        assert_eq!(char_inverse(&char_inverse(&ch)), ch);
    }

    #[test]
    fn json_round_trip() {
        let c = fundamental();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<QChar>(&s).unwrap(), c);
        let ch = c.chi().unwrap();
        let s = serde_json::to_string(&ch).unwrap();
        assert_eq!(serde_json::from_str::<Char>(&s).unwrap(), ch);
    }
}
