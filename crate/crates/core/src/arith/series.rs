//! Truncated power series in a formal variable `z`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::qrat::QRat;
use crate::error::Error;

/// Coefficient field for [`Series`].
pub trait SeriesCoeff: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Option<Self>;
}

impl SeriesCoeff for QRat {
    fn zero() -> Self {
        QRat::zero()
    }
    fn one() -> Self {
        QRat::one()
    }
    fn is_zero(&self) -> bool {
        QRat::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Option<Self> {
        QRat::inv(self).ok()
    }
}

impl SeriesCoeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// `Σ_{k=0}^{N} c_k z^k`; coefficients beyond the order are unknown.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

impl<T: SeriesCoeff> Series<T> {
    /// Series of order `order` from the leading coefficients; missing ones are zero.
    pub fn new(mut coeffs: Vec<T>, order: usize) -> Self {
        coeffs.resize(order + 1, T::zero());
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Series::new(vec![T::one()], order)
    }

    pub fn constant(c: T, order: usize) -> Self {
        Series::new(vec![c], order)
    }

    /// `1 - c z`.
    pub fn linear_factor(c: T, order: usize) -> Self {
        Series::new(vec![T::one(), T::zero().sub(&c)], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Series::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Series { coeffs: (0..=n).map(|k| self.coeffs[k].add(&o.coeffs[k])).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Series { coeffs: (0..=n).map(|k| self.coeffs[k].sub(&o.coeffs[k])).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        Series { coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Series { coeffs: out }
    }

    /// Multiplicative inverse; fails when the constant term is zero.
    pub fn inverse(&self) -> Result<Self, Error> {
        let c0inv = self.coeffs[0].inv().ok_or(Error::NonUnitSeries)?;
        let n = self.order();
        let mut out: Vec<T> = Vec::with_capacity(n + 1);
        out.push(c0inv.clone());
        for k in 1..=n {
            let mut acc = T::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc.add(&self.coeffs[j].mul(&out[k - j]));
                }
            }
            out.push(T::zero().sub(&acc.mul(&c0inv)));
        }
        Ok(Series { coeffs: out })
    }

    pub fn pow(&self, e: i64) -> Result<Self, Error> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Series::one(self.order());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn map<U: SeriesCoeff>(&self, f: impl Fn(&T) -> U) -> Series<U> {
        Series { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

/// Series in `z` with exact q-rational coefficients.
pub type ZSeries = Series<QRat>;

/// Free-function form of [`Series::inverse`].
pub fn series_inverse<T: SeriesCoeff>(s: &Series<T>) -> Result<Series<T>, Error> {
    s.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i64) -> QRat {
        QRat::q_pow(e)
    }

    #[test]
    fn geometric_inverse() {
        let s = ZSeries::linear_factor(q(2), 4).inverse().unwrap();
        for k in 0..=4 {
            assert_eq!(s.coeff(k), &q(2 * k as i64));
        }
    }

    #[test]
    fn binary_ops_take_min_order() {
        let a = ZSeries::one(5);
        let b = ZSeries::one(3);
        assert_eq!(a.mul(&b).order(), 3);
        assert_eq!(a.add(&b).order(), 3);
    }

    #[test]
    fn non_unit_is_rejected() {
        let s = ZSeries::new(vec![QRat::zero(), QRat::one()], 3);
        assert_eq!(s.inverse(), Err(Error::NonUnitSeries));
    }

    #[test]
    fn specialization_commutes_with_inverse() {
        let two = BigRational::from_integer(2.into());
        let s = ZSeries::new(vec![q(1), QRat::from_int(3), q(-2)], 5);
        let lhs = s.inverse().unwrap().map(|c| c.eval(&two).unwrap());
        let rhs = s.map(|c| c.eval(&two).unwrap()).inverse().unwrap();
        assert_eq!(lhs, rhs);
    }
}
