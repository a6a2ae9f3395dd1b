//! Monomials in `Y_{i,q^r}` and rational ℓ-weights.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{QRat, ZSeries};
use crate::cartan::{CartanData, Weight};
use crate::error::Error;

/// `Π Y_{i,q^r}^{e}`, keyed by `(i, r)`; exponents are never zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(BTreeMap<(usize, i64), i64>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    /// `Y_{i,q^r}`.
    pub fn y(i: usize, r: i64) -> Self {
        Monomial(BTreeMap::from([((i, r), 1)]))
    }

    pub fn from_exponents<I: IntoIterator<Item = (usize, i64, i64)>>(it: I) -> Self {
        let mut m = Monomial::one();
        for (i, r, e) in it {
            m.bump(i, r, e);
        }
        m
    }

    fn bump(&mut self, i: usize, r: i64, e: i64) {
        if e == 0 {
            return;
        }
        let slot = self.0.entry((i, r)).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.0.remove(&(i, r));
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> impl Iterator<Item = (usize, i64, i64)> + '_ {
        self.0.iter().map(|(&(i, r), &e)| (i, r, e))
    }

    pub fn exponent(&self, i: usize, r: i64) -> i64 {
        self.0.get(&(i, r)).copied().unwrap_or(0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = self.clone();
        for (i, r, e) in o.exponents() {
            m.bump(i, r, e);
        }
        m
    }

    pub fn pow(&self, k: i64) -> Monomial {
        Monomial::from_exponents(self.exponents().map(|(i, r, e)| (i, r, e * k)))
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    /// True when every exponent is positive.
    pub fn is_dominant(&self) -> bool {
        self.0.values().all(|e| *e > 0)
    }

    /// Ordinary weight: `Y_i` contributes `d_i e_i`.
    pub fn varpi(&self, cd: &CartanData) -> Weight {
        let mut w = vec![0; cd.rank()];
        for (i, _, e) in self.exponents() {
            w[i - 1] += e * cd.d(i);
        }
        w
    }

    /// Rational ℓ-weight: `Y_{i,q^r}` has `i`-component `q^{d_i}(1 - q^{r-d_i}z)/(1 - q^{r+d_i}z)`.
    pub fn eval(&self, cd: &CartanData) -> LWeight {
        let mut comps = vec![LFactor::one(); cd.rank()];
        for (i, r, e) in self.exponents() {
            let d = cd.d(i);
            let c = &mut comps[i - 1];
            c.konst = c.konst.shift(d * e);
            c.bump(r - d, e);
            c.bump(r + d, -e);
        }
        LWeight(comps)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exponents()
            .map(|(i, r, e)| if e == 1 { format!("Y{i}[{r}]") } else { format!("Y{i}[{r}]^{e}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `A_{i,q^r}`.
pub fn a_monomial(cd: &CartanData, i: usize, r: i64) -> Result<Monomial, Error> {
    cd.check_node(i)?;
    let di = cd.d(i);
    let mut m = Monomial::from_exponents([(i, r - di, 1), (i, r + di, 1)]);
    for j in cd.nodes() {
        if j == i {
            continue;
        }
        let shifts: &[i64] = match cd.c(j, i) {
            0 => &[],
            -1 => &[0],
            -2 => &[-1, 1],
            -3 => &[-2, 0, 2],
            other => unreachable!("Cartan entry {other}"),
        };
        for s in shifts {
            m.bump(j, r + s, -1);
        }
    }
    Ok(m)
}

/// `M^{(i)}_{k,q^r} = Y_{i,q^r} Y_{i,q^{r+2d_i}} ⋯ Y_{i,q^{r+2d_i(k-1)}}`.
pub fn kr_monomial(cd: &CartanData, i: usize, k: u32, r: i64) -> Result<Monomial, Error> {
    cd.check_node(i)?;
    let di = cd.d(i);
    Ok(Monomial::from_exponents((0..k as i64).map(|s| (i, r + 2 * di * s, 1))))
}

/// One component: `konst · Π (1 - q^r z)^{roots[r]}`, zeros positive, poles negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LFactor {
    konst: QRat,
    roots: BTreeMap<i64, i64>,
}

impl LFactor {
    pub fn one() -> Self {
        LFactor { konst: QRat::one(), roots: BTreeMap::new() }
    }

    pub fn constant(c: QRat) -> Self {
        LFactor { konst: c, roots: BTreeMap::new() }
    }

    /// `konst · Π_{zeros}(1 - q^r z) / Π_{poles}(1 - q^r z)`; common factors cancel.
    pub fn new(konst: QRat, zeros: &[i64], poles: &[i64]) -> Self {
        let mut f = LFactor::constant(konst);
        for r in zeros {
            f.bump(*r, 1);
        }
        for r in poles {
            f.bump(*r, -1);
        }
        f
    }

    fn bump(&mut self, r: i64, e: i64) {
        if e == 0 {
            return;
        }
        let slot = self.roots.entry(r).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.roots.remove(&r);
        }
    }

    pub fn konst(&self) -> &QRat {
        &self.konst
    }

    /// Signed multiplicities of the factors `(1 - q^r z)`.
    pub fn roots(&self) -> &BTreeMap<i64, i64> {
        &self.roots
    }

    pub fn zeros(&self) -> Vec<i64> {
        self.roots.iter().filter(|(_, e)| **e > 0).flat_map(|(r, e)| std::iter::repeat(*r).take(*e as usize)).collect()
    }

    pub fn poles(&self) -> Vec<i64> {
        self.roots.iter().filter(|(_, e)| **e < 0).flat_map(|(r, e)| std::iter::repeat(*r).take(-*e as usize)).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn mul(&self, o: &LFactor) -> LFactor {
        let mut f = LFactor { konst: &self.konst * &o.konst, roots: self.roots.clone() };
        for (r, e) in &o.roots {
            f.bump(*r, *e);
        }
        f
    }

    pub fn inv(&self) -> Result<LFactor, Error> {
        Ok(LFactor { konst: self.konst.inv()?, roots: self.roots.iter().map(|(r, e)| (*r, -e)).collect() })
    }

    pub fn scale(&self, c: &QRat) -> LFactor {
        LFactor { konst: &self.konst * c, roots: self.roots.clone() }
    }

    /// Net degree in `z` (zeros minus poles).
    pub fn degree(&self) -> i64 {
        self.roots.values().sum()
    }

    /// `z ↦ q^s z`.
    pub fn shift_spectral(&self, s: i64) -> LFactor {
        LFactor { konst: self.konst.clone(), roots: self.roots.iter().map(|(r, e)| (r + s, *e)).collect() }
    }

    /// `q ↦ q^{-1}` in every coefficient.
    pub fn invert_q(&self) -> LFactor {
        LFactor { konst: self.konst.invert_q(), roots: self.roots.iter().map(|(r, e)| (-r, *e)).collect() }
    }

    fn product_series(roots: impl Iterator<Item = (i64, i64)>, order: usize) -> ZSeries {
        let mut s = ZSeries::one(order);
        for (r, e) in roots {
            let lin = ZSeries::linear_factor(QRat::q_pow(r), order);
            let p = lin.pow(e).expect("unit constant term");
            s = s.mul(&p);
        }
        s
    }

    /// Taylor expansion at `z = 0` to the given order.
    pub fn expand(&self, order: usize) -> ZSeries {
        Self::product_series(self.roots.iter().map(|(r, e)| (*r, *e)), order).scale(&self.konst)
    }

    /// Expansion in `w = z^{-1}` at `z = ∞`. Fails when the function grows at infinity.
    pub fn expand_at_infinity(&self, order: usize) -> Result<ZSeries, Error> {
        let deg = self.degree();
        if deg > 0 {
            return Err(Error::InvalidArgument("rational function has a pole at infinity".into()));
        }
        // (1 - q^r z) = -q^r z (1 - q^{-r} w)
        let mut c = self.konst.clone();
        for (r, e) in &self.roots {
            let lead = -QRat::q_pow(*r);
            c = &c * &lead.pow(*e)?;
        }
        let s = (-deg) as usize;
        let body = Self::product_series(self.roots.iter().map(|(r, e)| (-*r, *e)), order);
        let coeffs = (0..=order).map(|m| if m < s { QRat::zero() } else { &c * body.coeff(m - s) }).collect();
        Ok(ZSeries::new(coeffs, order))
    }

    /// Value at `z = ∞` (zero when the degree is negative).
    pub fn value_at_infinity(&self) -> Result<QRat, Error> {
        Ok(self.expand_at_infinity(0)?.coeff(0).clone())
    }
}

impl fmt::Display for LFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lin = |r: &i64| if *r == 0 { "(1 - z)".to_string() } else { format!("(1 - q^{r} z)") };
        let num: Vec<String> = self.zeros().iter().map(lin).collect();
        let den: Vec<String> = self.poles().iter().map(lin).collect();
        let k = if self.konst.is_one() && !num.is_empty() { String::new() } else { format!("{}", self.konst) };
        let k = if !self.konst.is_laurent() || self.konst.numer().num_terms() > 1 { format!("({k})") } else { k };
        write!(f, "{k}{}", num.join(""))?;
        if !den.is_empty() {
            if num.is_empty() && k.is_empty() {
                write!(f, "1")?;
            }
            write!(f, "/{}", den.join(""))?;
        }
        Ok(())
    }
}

/// A rational ℓ-weight: one [`LFactor`] per node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LWeight(pub Vec<LFactor>);

impl LWeight {
    pub fn one(n: usize) -> Self {
        LWeight(vec![LFactor::one(); n])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Component `i`, 1-based.
    pub fn component(&self, i: usize) -> &LFactor {
        &self.0[i - 1]
    }

    pub fn components(&self) -> &[LFactor] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|c| c.is_constant() && c.konst.is_one())
    }

    pub fn mul(&self, o: &LWeight) -> LWeight {
        LWeight(self.0.iter().zip(&o.0).map(|(a, b)| a.mul(b)).collect())
    }

    pub fn inv(&self) -> Result<LWeight, Error> {
        Ok(LWeight(self.0.iter().map(|c| c.inv()).collect::<Result<_, _>>()?))
    }

    pub fn div(&self, o: &LWeight) -> Result<LWeight, Error> {
        Ok(self.mul(&o.inv()?))
    }

    /// Multiplies component `i` by `q^{m_i}`.
    pub fn scale_by_weight(&self, w: &[i64]) -> LWeight {
        LWeight(self.0.iter().zip(w).map(|(c, m)| LFactor { konst: c.konst.shift(*m), roots: c.roots.clone() }).collect())
    }

    pub fn shift_spectral(&self, s: i64) -> LWeight {
        LWeight(self.0.iter().map(|c| c.shift_spectral(s)).collect())
    }

    pub fn invert_q(&self) -> LWeight {
        LWeight(self.0.iter().map(|c| c.invert_q()).collect())
    }

    /// Weight read off from the constants, which must be powers of `q`.
    pub fn varpi(&self) -> Result<Weight, Error> {
        self.0.iter().map(|c| c.konst.as_q_power().ok_or(Error::WeightOutsideQZ)).collect()
    }

    /// The monomial with this evaluation, if there is one.
    pub fn to_monomial(&self, cd: &CartanData) -> Option<Monomial> {
        let mut m = Monomial::one();
        for (idx, c) in self.0.iter().enumerate() {
            let i = idx + 1;
            let d = cd.d(i);
            let mut roots = c.roots.clone();
            // Each Y contributes +1 at r - d and -1 at r + d, so every class mod 2d sums to zero.
            let mut class_sum: BTreeMap<i64, i64> = BTreeMap::new();
            for (r, e) in &roots {
                *class_sum.entry(r.rem_euclid(2 * d)).or_insert(0) += e;
            }
            if class_sum.values().any(|s| *s != 0) {
                return None;
            }
            let mut total = 0;
            while let Some((&r, &e)) = roots.iter().next() {
                m.bump(i, r + d, e);
                total += e;
                roots.remove(&r);
                let slot = roots.entry(r + 2 * d).or_insert(0);
                *slot += e;
                if *slot == 0 {
                    roots.remove(&(r + 2 * d));
                }
            }
            if c.konst != QRat::q_pow(d * total) {
                return None;
            }
        }
        Some(m)
    }
}

impl fmt::Display for LWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `(1 - q^r z)^{±1}` in component `i`, trivial elsewhere.
pub fn fundamental_lweight(cd: &CartanData, i: usize, r: i64, sign: i64) -> Result<LWeight, Error> {
    cd.check_node(i)?;
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidArgument(format!("sign must be ±1, got {sign}")));
    }
    let mut w = LWeight::one(cd.rank());
    w.0[i - 1].bump(r, sign);
    Ok(w)
}

/// Component-wise Taylor expansion to the given order.
pub fn expand_lweight(lw: &LWeight, order: usize) -> Vec<ZSeries> {
    lw.0.iter().map(|c| c.expand(order)).collect()
}

/// Writes `m = Π A_{i,q^r}^{-c}` with `c > 0`, if possible; returns the `(i, r, c)`.
pub fn a_inverse_decomposition(cd: &CartanData, m: &Monomial) -> Option<Vec<(usize, i64, i64)>> {
    let height = cd.height_below(&m.varpi(cd), &vec![0; cd.rank()])?;
    let mut rest = m.clone();
    let mut out = Vec::new();
    let mut steps = 0;
    while !rest.is_one() {
        if steps > height {
            return None;
        }
        steps += 1;
        let rmax = rest.exponents().map(|(_, r, _)| r).max().unwrap();
        let (i, _, e) = rest.exponents().find(|(_, r, _)| *r == rmax).unwrap();
        if e > 0 {
            return None;
        }
        let a = a_monomial(cd, i, rmax - cd.d(i)).ok()?;
        rest = rest.mul(&a.pow(-e));
        out.push((i, rmax - cd.d(i), -e));
    }
    Some(out)
}

/// True when the ℓ-weight is a product of `A_{i,a}^{-1}` (the trivial product included).
pub fn in_a_inverse_monoid(cd: &CartanData, lw: &LWeight) -> bool {
    lw.to_monomial(cd).is_some_and(|m| a_inverse_decomposition(cd, &m).is_some())
}

#[derive(Serialize, Deserialize)]
struct LFactorJson {
    #[serde(rename = "const")]
    konst: QRat,
    zeros: Vec<i64>,
    poles: Vec<i64>,
}

impl Serialize for LFactor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LFactorJson { konst: self.konst.clone(), zeros: self.zeros(), poles: self.poles() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LFactor {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let j = LFactorJson::deserialize(de)?;
        Ok(LFactor::new(j.konst, &j.zeros, &j.poles))
    }
}

impl Serialize for LWeight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LWeight {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        Ok(LWeight(Vec::deserialize(de)?))
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.exponents().map(|(i, r, e)| (i, r, e)).collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let v: Vec<(usize, i64, i64)> = Vec::deserialize(de)?;
        Ok(Monomial::from_exponents(v))
    }
}
