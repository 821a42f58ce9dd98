//! Binary multiprecision floats (dashu-float) and a minimal complex type on
//! top, with exact conversions to and from the crate's rationals.

use std::ops::{Add, Div, Mul, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::ops::{BitTest, UnsignedAbs};
use dashu_int::{IBig, UBig};
use num_bigint::Sign;

use crate::numeric::{Integer, Rational};

pub(crate) type BigFloat = FBig<HalfEven, 2>;

fn to_ibig(n: &Integer) -> IBig {
    let (sign, bytes) = n.to_bytes_le();
    let mag = IBig::from(UBig::from_le_bytes(&bytes));
    if sign == Sign::Minus {
        -mag
    } else {
        mag
    }
}

fn from_ibig(n: &IBig) -> Integer {
    let mag = Integer::from_bytes_le(Sign::Plus, &n.unsigned_abs().to_le_bytes());
    if *n < IBig::ZERO {
        -mag
    } else {
        mag
    }
}

/// Nearest `prec`-bit float to `r`.
pub(crate) fn from_rational(r: &Rational, prec: u32) -> BigFloat {
    let num = BigFloat::from(to_ibig(r.numer()))
        .with_precision(prec as usize + 2)
        .value();
    let den = BigFloat::from(to_ibig(r.denom()))
        .with_precision(prec as usize + 2)
        .value();
    (num / den).with_precision(prec as usize).value()
}

pub(crate) fn from_f64(x: f64, prec: u32) -> BigFloat {
    BigFloat::try_from(x)
        .expect("finite")
        .with_precision(prec as usize)
        .value()
}

/// Exact value as a dyadic rational.
pub(crate) fn to_rational(x: &BigFloat) -> Rational {
    let repr = x.repr();
    Rational::from(from_ibig(repr.significand())).mul_pow2(repr.exponent() as i64)
}

/// Smallest `e` with `|x| < 2^e`; `None` for zero.
fn log2_ceiling(x: &BigFloat) -> Option<i64> {
    let repr = x.repr();
    let sig = repr.significand();
    (*sig != IBig::ZERO).then(|| sig.unsigned_abs().bit_len() as i64 + repr.exponent() as i64)
}

/// Complex number with [`BigFloat`] parts.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        BigComplex::from_real(from_f64(0.0, prec))
    }

    pub fn from_real(re: BigFloat) -> Self {
        let im = BigFloat::ZERO.with_precision(re.precision()).value();
        BigComplex { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re == BigFloat::ZERO && self.im == BigFloat::ZERO
    }

    /// Smallest `e` with `max(|re|, |im|) < 2^e`.
    pub fn log2_ceiling(&self) -> Option<i64> {
        match (log2_ceiling(&self.re), log2_ceiling(&self.im)) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn with_precision(&self, prec: u32) -> Self {
        let round = |x: &BigFloat| x.clone().with_precision(prec as usize).value();
        BigComplex::new(round(&self.re), round(&self.im))
    }
}

impl Add for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        BigComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        BigComplex::new(re, im)
    }
}

impl Div for &BigComplex {
    type Output = BigComplex;
    /// Panics on a zero divisor; callers test for zero first.
    fn div(self, rhs: &BigComplex) -> BigComplex {
        let norm = &rhs.re * &rhs.re + &rhs.im * &rhs.im;
        let re = &self.re * &rhs.re + &self.im * &rhs.im;
        let im = &self.im * &rhs.re - &self.re * &rhs.im;
        BigComplex::new(re / &norm, im / &norm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn integer_conversion_round_trip() {
        for s in [
            "0",
            "1",
            "-1",
            "255",
            "-256",
            "123456789012345678901234567890",
            "-98765432109876543210",
        ] {
            let n: Integer = s.parse().unwrap();
            assert_eq!(from_ibig(&to_ibig(&n)), n);
        }
    }

    #[test]
    fn rational_round_trip_error() {
        for (n, d) in [(1, 3), (-22, 7), (355, 113), (1, 1 << 40), (123456789, 1)] {
            let r = q(n, d);
            let x = from_rational(&r, 100);
            let err = (to_rational(&x) - &r).abs();
            // relative error at most 2^-99
            assert!(err <= r.abs().mul_pow2(-99), "{r}");
        }
        assert_eq!(to_rational(&from_rational(&q(3, 8), 64)), q(3, 8));
        assert!(to_rational(&from_rational(&Rational::zero(), 64)).is_zero());
    }

    #[test]
    fn f64_conversion_is_exact() {
        for x in [0.5, -3.25, 1e-300, 12345.678] {
            assert_eq!(to_rational(&from_f64(x, 64)).to_f64(), x);
        }
    }

    #[test]
    fn magnitude() {
        assert_eq!(log2_ceiling(&from_f64(1.0, 64)), Some(1));
        assert_eq!(log2_ceiling(&from_f64(-0.75, 64)), Some(0));
        assert_eq!(log2_ceiling(&from_f64(0.0, 64)), None);
        let z = BigComplex::new(from_f64(0.25, 64), from_f64(-5.0, 64));
        assert_eq!(z.log2_ceiling(), Some(3));
    }

    #[test]
    fn complex_arithmetic() {
        let p = 96;
        let z = BigComplex::new(from_f64(1.0, p), from_f64(2.0, p));
        let w = BigComplex::new(from_f64(3.0, p), from_f64(-1.0, p));
        let prod = &z * &w;
        assert_eq!(to_rational(&prod.re), q(5, 1));
        assert_eq!(to_rational(&prod.im), q(5, 1));
        let back = &prod / &w;
        let tol = q(1, 1).mul_pow2(-90);
        assert!((to_rational(&back.re) - q(1, 1)).abs() <= tol);
        assert!((to_rational(&back.im) - q(2, 1)).abs() <= tol);
        assert!((&z - &z).is_zero());
        assert_eq!(to_rational(&(&z + &w).re), q(4, 1));
    }
}
