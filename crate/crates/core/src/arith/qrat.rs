//! Exact rational functions of `q` over the integers.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::LaurentPoly;
use crate::error::Error;

pub type LPoly = LaurentPoly<BigInt>;

/// A rational function `num / den` in `q`.
///
/// Canonical form: `den` is an ordinary polynomial with nonzero constant term
/// and positive leading coefficient, and `num / den` is reduced in `Z[q]`
/// (content included). Powers of `q` live in the numerator. Two values are
/// equal exactly when their representations are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QRat {
    num: LPoly,
    den: LPoly,
}

// Dense integer polynomials, ascending degree, used for gcd work.

fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive(p: &[BigInt]) -> Vec<BigInt> {
    let c = content(p);
    if c.is_one() || c.is_zero() {
        return p.to_vec();
    }
    p.iter().map(|x| x / &c).collect()
}

/// Pseudo-remainder of `a` by `b` (`b` nonzero).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        if lb.is_one() {
            for (k, bc) in b.iter().enumerate() {
                r[shift + k] -= &lr * bc;
            }
        } else {
            for x in r.iter_mut() {
                *x *= lb;
            }
            for (k, bc) in b.iter().enumerate() {
                r[shift + k] -= &lr * bc;
            }
        }
        trim(&mut r);
    }
    r
}

/// Primitive gcd of two nonzero polynomials, positive leading coefficient.
fn primitive_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (mut x, mut y) = if a.len() >= b.len() { (primitive(a), primitive(b)) } else { (primitive(b), primitive(a)) };
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    if x.last().is_some_and(|c| c.is_negative()) {
        x.iter_mut().for_each(|c| *c = -c.clone());
    }
    x
}

/// Exact division `a / b` in `Z[q]`; `None` when it does not divide.
fn exact_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut quo = vec![BigInt::zero(); a.len() - db];
    for k in (0..quo.len()).rev() {
        let (qk, rem) = r[k + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if !qk.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                r[k + j] -= &qk * bc;
            }
        }
        quo[k] = qk;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut quo);
    Some(quo)
}

impl QRat {
    pub fn zero() -> Self {
        QRat { num: LPoly::zero(), den: LPoly::one() }
    }

    pub fn one() -> Self {
        QRat { num: LPoly::one(), den: LPoly::one() }
    }

    pub fn from_int<I: Into<BigInt>>(n: I) -> Self {
        QRat { num: LPoly::constant(n.into()), den: LPoly::one() }
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        QRat { num: LPoly::monomial(BigInt::one(), e), den: LPoly::one() }
    }

    /// `c · q^e`.
    pub fn monomial<I: Into<BigInt>>(c: I, e: i64) -> Self {
        QRat { num: LPoly::monomial(c.into(), e), den: LPoly::one() }
    }

    pub fn from_laurent(p: LPoly) -> Self {
        QRat { num: p, den: LPoly::one() }
    }

    /// `num / den` in canonical form; errors on a zero denominator.
    pub fn new(num: LPoly, den: LPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: LPoly, den: LPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        // Absorb the q-power of the denominator into the numerator.
        let nlow = num.low() - den.low();
        let mut n: Vec<BigInt> = num.coeffs().to_vec();
        let mut d: Vec<BigInt> = den.coeffs().to_vec();
        if d.len() == 1 {
            let g = content(&n).gcd(&d[0]);
            if !g.is_one() {
                n.iter_mut().for_each(|c| *c = &*c / &g);
                d[0] = &d[0] / &g;
            }
        } else {
            let g = primitive_gcd(&n, &d);
            if g.len() > 1 {
                n = exact_div(&n, &g).expect("gcd divides numerator");
                d = exact_div(&d, &g).expect("gcd divides denominator");
            }
            let c = content(&n).gcd(&content(&d));
            if !c.is_one() {
                n.iter_mut().for_each(|x| *x = &*x / &c);
                d.iter_mut().for_each(|x| *x = &*x / &c);
            }
        }
        if d.last().unwrap().is_negative() {
            n.iter_mut().for_each(|c| *c = -c.clone());
            d.iter_mut().for_each(|c| *c = -c.clone());
        }
        QRat { num: LPoly::from_parts(nlow, n), den: LPoly::from_parts(0, d) }
    }

    pub fn numer(&self) -> &LPoly {
        &self.num
    }

    pub fn denom(&self) -> &LPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// `Some((c, e))` when the value is `c · q^e`.
    pub fn as_monomial(&self) -> Option<(BigInt, i64)> {
        if self.den.is_one() && self.num.num_terms() == 1 {
            let (c, e) = self.num.terms().next().unwrap();
            Some((c.clone(), e))
        } else {
            None
        }
    }

    /// `Some(e)` when the value is exactly `q^e`.
    pub fn as_q_power(&self) -> Option<i64> {
        self.as_monomial().filter(|(c, _)| c.is_one()).map(|(_, e)| e)
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Already coprime: only the q-power and the sign need moving.
        let mut n = self.den.shift(-self.num.low());
        let mut d = LPoly::from_parts(0, self.num.coeffs().to_vec());
        if d.lead().unwrap().is_negative() {
            n = n.neg();
            d = d.neg();
        }
        Ok(QRat { num: n, den: d })
    }

    pub fn pow(&self, n: i64) -> Result<Self, Error> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = QRat::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Substitutes `q ↦ q^{-1}`.
    pub fn invert_q(&self) -> Self {
        Self::normalize(self.num.invert_q(), self.den.invert_q())
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        QRat { num: self.num.shift(k), den: self.den.clone() }
    }

    /// Specializes `q` to a nonzero rational; `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        if x.is_zero() {
            return None;
        }
        let xi = x.recip();
        let lift = |p: &LPoly| {
            LaurentPoly::from_parts(p.low(), p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect())
        };
        let d = lift(&self.den).eval_with(x, &xi);
        if d.is_zero() {
            return None;
        }
        Some(lift(&self.num).eval_with(x, &xi) / d)
    }

    /// Integer form used by the JSON encoding: numerator and denominator terms
    /// as `(coefficient, exponent)`.
    pub fn terms(&self) -> (Vec<(BigInt, i64)>, Vec<(BigInt, i64)>) {
        let f = |p: &LPoly| p.terms().map(|(c, e)| (c.clone(), e)).collect();
        (f(&self.num), f(&self.den))
    }

    pub fn from_terms(num: Vec<(BigInt, i64)>, den: Vec<(BigInt, i64)>) -> Result<Self, Error> {
        Self::new(LPoly::from_terms(num), LPoly::from_terms(den))
    }
}

impl Default for QRat {
    fn default() -> Self {
        QRat::zero()
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.num_terms() == 1 {
            write!(f, "{}/({})", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<'a> Add<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn add(self, o: &QRat) -> QRat {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return QRat { num: self.num.add(&o.num), den: LPoly::one() };
        }
        if self.den == o.den {
            return QRat::normalize(self.num.add(&o.num), self.den.clone());
        }
        QRat::normalize(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
}

impl<'a> Sub<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn sub(self, o: &QRat) -> QRat {
        self + &(-o)
    }
}

impl<'a> Mul<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn mul(self, o: &QRat) -> QRat {
        if self.is_zero() || o.is_zero() {
            return QRat::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return QRat { num: self.num.mul(&o.num), den: LPoly::one() };
        }
        if o.num.num_terms() == 1 && o.den.is_one() {
            let (c, e) = o.num.terms().next().unwrap();
            if c.is_one() {
                return self.shift(e);
            }
        }
        QRat::normalize(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl<'a> Div<&'a QRat> for &'a QRat {
    type Output = QRat;
    /// Panics on division by zero; use [`QRat::inv`] for a checked inverse.
    fn div(self, o: &QRat) -> QRat {
        self * &o.inv().expect("division by zero")
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for QRat {
            type Output = QRat;
            fn $m(self, o: QRat) -> QRat {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a QRat> for QRat {
            type Output = QRat;
            fn $m(self, o: &QRat) -> QRat {
                (&self).$m(o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl std::iter::Sum for QRat {
    fn sum<I: Iterator<Item = QRat>>(iter: I) -> QRat {
        iter.fold(QRat::zero(), |a, b| &a + &b)
    }
}

impl From<i64> for QRat {
    fn from(n: i64) -> Self {
        QRat::from_int(n)
    }
}

type TermsJson = Vec<(String, i64)>;

impl serde::Serialize for QRat {
    /// `[[["c", e], ...], [["c", e], ...]]`: numerator and denominator terms.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (n, d) = self.terms();
        let f = |v: Vec<(BigInt, i64)>| -> TermsJson { v.into_iter().map(|(c, e)| (c.to_string(), e)).collect() };
        (f(n), f(d)).serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for QRat {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let (n, d): (TermsJson, TermsJson) = serde::Deserialize::deserialize(de)?;
        let f = |v: TermsJson| -> Result<Vec<(BigInt, i64)>, D::Error> {
            v.into_iter()
                .map(|(c, e)| c.parse::<BigInt>().map(|c| (c, e)).map_err(D::Error::custom))
                .collect()
        };
        QRat::from_terms(f(n)?, f(d)?).map_err(D::Error::custom)
    }
}
