//! q-integers, q-factorials, q-binomials and the ordinary generalized binomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::qrat::{LPoly, QRat};
use crate::error::Error;

/// `[m]_{q^d} = (q^{dm} - q^{-dm}) / (q^d - q^{-d})`, a Laurent polynomial.
pub fn qint(m: i64, d: u32) -> QRat {
    QRat::from_laurent(qint_poly(m, d))
}

pub(crate) fn qint_poly(m: i64, d: u32) -> LPoly {
    if m < 0 {
        return qint_poly(-m, d).neg();
    }
    let d = d as i64;
    LPoly::from_terms((0..m).map(|k| (BigInt::one(), d * (m - 1 - 2 * k))))
}

/// `[m]_{q^d}! = [1][2]⋯[m]`.
pub fn qfactorial(m: u32, d: u32) -> QRat {
    let mut acc = LPoly::one();
    for s in 1..=m {
        acc = acc.mul(&qint_poly(s as i64, d));
    }
    QRat::from_laurent(acc)
}

/// Balanced q-binomial `[s r]_{q^d}`; zero outside `0 ≤ r ≤ s`.
pub fn qbinom(s: u32, r: u32, d: u32) -> QRat {
    QRat::from_laurent(qbinom_poly(s, r, d))
}

fn qbinom_poly(s: u32, r: u32, d: u32) -> LPoly {
    if r > s {
        return LPoly::zero();
    }
    // Pascal rule [n k] = q^{dk}[n-1 k] + q^{-d(n-k)}[n-1 k-1].
    let d = d as i64;
    let mut row = vec![LPoly::one()];
    for n in 1..=s as i64 {
        let mut next = Vec::with_capacity(row.len() + 1);
        for k in 0..=n {
            let mut v = LPoly::zero();
            if k < n {
                v = v.add(&row[k as usize].shift(d * k));
            }
            if k > 0 {
                v = v.add(&row[(k - 1) as usize].shift(-d * (n - k)));
            }
            next.push(v);
        }
        row = next;
    }
    row.swap_remove(r as usize)
}

/// `(a choose b) = a(a-1)⋯(a-b+1) / b!` for any integer `a` and `b ≥ 0`.
pub fn gbinom<T>(a: &T, b: &T) -> Result<T, Error>
where
    T: Integer + Clone + std::fmt::Display,
{
    if *b < T::zero() {
        return Err(Error::InvalidArgument(format!("binomial with negative lower index {b}")));
    }
    let mut num = T::one();
    let mut den = T::one();
    let mut s = T::one();
    while s <= *b {
        num = num * (a.clone() - b.clone() + s.clone());
        den = den * s.clone();
        s = s + T::one();
    }
    Ok(num / den)
}

/// Convenience wrapper for machine integers with a big-integer result.
pub fn gbinom_i64(a: i64, b: i64) -> Result<BigInt, Error> {
    gbinom(&BigInt::from(a), &BigInt::from(b))
}

/// `q - q^{-1}` scaled by `d`: `q^d - q^{-d}`.
pub fn q_minus_qinv(d: u32) -> QRat {
    let d = d as i64;
    QRat::from_laurent(LPoly::from_terms([(BigInt::one(), d), (-BigInt::one(), -d)]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i64) -> QRat {
        QRat::q_pow(e)
    }

    #[test]
    fn small_q_integers() {
        assert_eq!(qint(0, 1), QRat::zero());
        assert_eq!(qint(1, 1), QRat::one());
        assert_eq!(qint(2, 1), &q(1) + &q(-1));
        assert_eq!(qint(3, 1), &(&q(2) + &QRat::one()) + &q(-2));
        assert_eq!(qint(-2, 1), -qint(2, 1));
        assert_eq!(qint(2, 2), &q(2) + &q(-2));
    }

    #[test]
    fn qint_matches_defining_quotient() {
        for d in 1..=3u32 {
            for m in -4..=6i64 {
                let di = d as i64;
                let lhs = &(&q(di * m) - &q(-di * m)) / &(&q(di) - &q(-di));
                assert_eq!(qint(m, d), lhs, "m={m} d={d}");
            }
        }
    }

    #[test]
    fn qbinom_is_factorial_quotient() {
        for d in 1..=2u32 {
            for s in 0..=6u32 {
                for r in 0..=s {
                    let f = &qfactorial(s, d) / &(&qfactorial(r, d) * &qfactorial(s - r, d));
                    assert_eq!(qbinom(s, r, d), f);
                }
            }
        }
        assert_eq!(qbinom(3, 1, 1), qint(3, 1));
        assert_eq!(qbinom(2, 3, 1), QRat::zero());
    }

    #[test]
    fn generalized_binomial() {
        assert_eq!(gbinom_i64(-1, 2).unwrap(), BigInt::from(1));
        assert_eq!(gbinom_i64(-1, 1).unwrap(), BigInt::from(-1));
        assert_eq!(gbinom_i64(0, 1).unwrap(), BigInt::from(0));
        assert_eq!(gbinom_i64(5, 2).unwrap(), BigInt::from(10));
        assert_eq!(gbinom_i64(-3, 3).unwrap(), BigInt::from(-10));
        assert_eq!(gbinom_i64(7, 0).unwrap(), BigInt::from(1));
        assert!(gbinom_i64(3, -1).is_err());
        assert_eq!(gbinom(&-4i64, &2i64).unwrap(), 10);
    }
}
