//! Dense Laurent polynomials in `q`, generic over the coefficient ring.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;

use num_traits::Num;

/// `Σ coeffs[k] q^(low + k)`, kept trimmed so that the first and last
/// coefficients are nonzero. The zero polynomial has no coefficients and `low == 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly<T> {
    low: i64,
    coeffs: Vec<T>,
}

impl<T: Num + Clone + Neg<Output = T>> LaurentPoly<T> {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(T::one(), 0)
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: T, e: i64) -> Self {
        Self::from_parts(e, vec![c])
    }

    /// Builds `Σ coeffs[k] q^(low+k)` and trims zeros at both ends.
    pub fn from_parts(low: i64, coeffs: Vec<T>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    /// Builds from `(coefficient, exponent)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (T, i64)>>(terms: I) -> Self {
        let terms: Vec<(T, i64)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.1).min().unwrap();
        let hi = terms.iter().map(|t| t.1).max().unwrap();
        let mut coeffs = vec![T::zero(); (hi - lo + 1) as usize];
        for (c, e) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = slot.clone() + c;
        }
        Self::from_parts(lo, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
        } else if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, e: i64) -> T {
        let k = e - self.low;
        if k < 0 || k >= self.coeffs.len() as i64 {
            T::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    pub fn lead(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Nonzero terms as `(coefficient, exponent)`, ascending in the exponent.
    pub fn terms(&self) -> impl Iterator<Item = (&T, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (c, self.low + k as i64))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// Substitutes `q ↦ q^{-1}`.
    pub fn invert_q(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly { low: -self.high(), coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        let bounds = [self, other]
            .into_iter()
            .filter(|p| !p.is_zero())
            .map(|p| (p.low, p.high()))
            .reduce(|a, b| (a.0.min(b.0), a.1.max(b.1)));
        let Some((lo, hi)) = bounds else {
            return Self::zero();
        };
        let coeffs = (lo..=hi).map(|e| f(self.coeff(e), other.coeff(e))).collect();
        Self::from_parts(lo, coeffs)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_parts(self.low, self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let slot = &mut out[i + j];
                *slot = std::mem::replace(slot, T::zero()) + a.clone() * b.clone();
            }
        }
        Self::from_parts(self.low + other.low, out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluates at `q = x` (any ring element with an inverse for negative powers).
    pub fn eval_with(&self, x: &T, x_inv: &T) -> T {
        let mut acc = T::zero();
        for (c, e) in self.terms() {
            let base = if e >= 0 { x } else { x_inv };
            let mut p = T::one();
            for _ in 0..e.unsigned_abs() {
                p = p * base.clone();
            }
            acc = acc + c.clone() * p;
        }
        acc
    }
}

impl<T: Num + Clone + Neg<Output = T> + PartialOrd> LaurentPoly<T> {
    /// Sign of the leading coefficient.
    pub fn lead_sign(&self) -> Ordering {
        match self.lead() {
            None => Ordering::Equal,
            Some(c) => c.partial_cmp(&T::zero()).unwrap_or(Ordering::Equal),
        }
    }
}

impl<T: Num + Clone + Neg<Output = T> + fmt::Display + PartialOrd> fmt::Display for LaurentPoly<T> {
    /// Descending powers, e.g. `q^2 - 3*q + 1 + q^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<(&T, i64)> = self.terms().collect();
        for (k, (c, e)) in terms.iter().rev().enumerate() {
            let neg = **c < T::zero();
            let abs = if neg { -(*c).clone() } else { (*c).clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let unit = abs.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{abs}*q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{abs}*q^{e}")?,
            }
        }
        Ok(())
    }
}
