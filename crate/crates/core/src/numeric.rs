//! Arbitrary-precision integers, exact rationals and binomial coefficients.
//!
//! [`Rational`] is always stored in lowest terms with a positive denominator,
//! so structural equality is numeric equality. Its textual form is `p/q`, with
//! the denominator omitted when it is 1 (`-691/2730`, `5`).

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Sign-magnitude arbitrary-precision integer.
pub type Integer = BigInt;

/// Exact fraction of arbitrary-precision integers, always normalized.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer / denom` in lowest terms.
    pub fn new(numer: impl Into<Integer>, denom: impl Into<Integer>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    /// `numer / denom` for a denominator the caller knows is nonzero.
    pub(crate) fn frac(numer: impl Into<Integer>, denom: impl Into<Integer>) -> Self {
        Rational::new(numer, denom).expect("nonzero denominator")
    }

    pub fn from_integer(value: Integer) -> Self {
        Rational(BigRational::from_integer(value))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denom(&self) -> &Integer {
        self.0.denom()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> Integer {
        self.0.numer().div_floor(self.0.denom())
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// Multiplies by `2^shift` (negative shifts divide).
    pub fn mul_pow2(&self, shift: i64) -> Self {
        let magnitude = BigInt::one() << shift.unsigned_abs();
        if shift >= 0 {
            Rational(&self.0 * BigRational::from_integer(magnitude))
        } else {
            Rational(&self.0 / BigRational::from_integer(magnitude))
        }
    }

    /// Nearest `f64`; only used for seeding numerical procedures.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Fixed-point decimal with `digits` fractional digits, rounded half away from zero.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits);
        let scaled: BigInt = self.0.numer().abs() * &scale * 2 + self.0.denom();
        let rounded = scaled.div_floor(&(self.0.denom() * 2));
        let text = rounded.to_string();
        let text = if text.len() <= digits {
            format!("{}{}", "0".repeat(digits + 1 - text.len()), text)
        } else {
            text
        };
        let (int_part, frac_part) = text.split_at(text.len() - digits);
        let sign = if self.is_negative() && !rounded.is_zero() {
            "-"
        } else {
            ""
        };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    /// Scientific decimal `d.ddd…e±x` with `significant` digits, rounded away from
    /// zero so that the printed magnitude is never below the true one.
    pub fn to_scientific_upper(&self, significant: usize) -> String {
        assert!(significant >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        let numer = self.0.numer().abs();
        let denom = self.0.denom().clone();
        // Estimate the decimal exponent, then correct it exactly.
        let mut exponent = numer.to_string().len() as i64 - denom.to_string().len() as i64;
        let ten = BigInt::from(10);
        let pow10 = |e: i64| num_traits::pow(ten.clone(), e.unsigned_abs() as usize);
        let at_least = |e: i64| {
            // |x| >= 10^e
            if e >= 0 {
                numer >= &denom * pow10(e)
            } else {
                &numer * pow10(e) >= denom
            }
        };
        while !at_least(exponent) {
            exponent -= 1;
        }
        while at_least(exponent + 1) {
            exponent += 1;
        }
        // mantissa digits = ceil(|x| * 10^(significant - 1 - exponent))
        let shift = significant as i64 - 1 - exponent;
        let (num, den) = if shift >= 0 {
            (&numer * pow10(shift), denom)
        } else {
            (numer, denom * pow10(shift))
        };
        let mut digits = num.div_ceil(&den);
        if digits.to_string().len() > significant {
            digits = digits.div_ceil(&ten);
            exponent += 1;
        }
        let text = digits.to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        let (lead, rest) = text.split_at(1);
        if rest.is_empty() {
            format!("{sign}{lead}e{exponent}")
        } else {
            format!("{sign}{lead}.{rest}e{exponent}")
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            kind: "rational",
            input: s.to_string(),
        };
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: Integer = n.trim().parse().map_err(|_| err())?;
                let d: Integer = d.trim().parse().map_err(|_| err())?;
                Rational::new(n, d)
            }
            None => Ok(Rational::from_integer(s.parse().map_err(|_| err())?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value.into())
    }
}

impl From<Integer> for Rational {
    fn from(value: Integer) -> Self {
        Rational::from_integer(value)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0.is_integer() && *self.0.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer((*other).into())))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $assign_tr:ident, $assign_method:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl $assign_tr<&Rational> for Rational {
            fn $assign_method(&mut self, rhs: &Rational) {
                self.0.$assign_method(&rhs.0);
            }
        }
        impl $assign_tr<Rational> for Rational {
            fn $assign_method(&mut self, rhs: Rational) {
                self.0.$assign_method(rhs.0);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// `(-1)^k` as a rational.
pub fn sign_power(k: u64) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `C(n, k)` for any integer `k`; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> Result<Integer> {
    if n < 0 {
        return Err(Error::out_of_range("binomial n", 0, n));
    }
    Ok(choose(n as u64, k))
}

/// Infallible `C(n, k)` for a nonnegative `n`, with the zero convention for `k < 0`
/// and `k > n`. Uses the multiplicative formula; every intermediate division is exact.
pub fn choose(n: u64, k: i64) -> Integer {
    if k < 0 || k as u64 > n {
        return Integer::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = Integer::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Row `C(n, 0), ..., C(n, n)` of Pascal's triangle.
pub fn binomial_row(n: u64) -> Vec<Integer> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut acc = Integer::one();
    row.push(acc.clone());
    for i in 0..n {
        acc *= n - i;
        acc /= i + 1;
        row.push(acc.clone());
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    /// Row `n` of Pascal's triangle built by repeated addition only.
    fn pascal_by_addition(n: usize) -> Vec<Integer> {
        let mut row = vec![Integer::one()];
        for _ in 0..n {
            let mut next = vec![Integer::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        row
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(2, 0).unwrap(), Integer::from(1));
        assert_eq!(binomial(5, -1).unwrap(), Integer::zero());
        assert_eq!(binomial(3, 4).unwrap(), Integer::zero());
        // frozen from the addition-only triangle
        assert_eq!(pascal_by_addition(10)[4], Integer::from(210));
        assert_eq!(binomial(10, 4).unwrap(), Integer::from(210));
        assert_eq!(
            binomial(-1, 0),
            Err(Error::out_of_range("binomial n", 0, -1))
        );
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        let mut row = vec![Integer::one()];
        for n in 0..=100u64 {
            for k in 0..=n {
                assert_eq!(choose(n, k as i64), row[k as usize], "C({n},{k})");
            }
            assert_eq!(binomial_row(n), row);
            let mut next = vec![Integer::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
    }

    #[test]
    fn pascal_rule() {
        for n in 1..=100u64 {
            for k in 0..=n as i64 {
                assert_eq!(choose(n, k), choose(n - 1, k) + choose(n - 1, k - 1));
            }
        }
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(q(1, 6) + q(-1, 2) + Rational::one(), q(2, 3));
        let x = q(-7, 12);
        assert_eq!(&x + Rational::zero(), x);
        assert_eq!(q(-1, 2).pow(2), q(1, 4));
        assert_eq!(x.pow(0), Rational::one());
        assert_eq!(q(3, 4).checked_div(&q(-3, 2)).unwrap(), q(-1, 2));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            q(1, 2).checked_div(&Rational::zero()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(Rational::zero().recip(), Err(Error::DivisionByZero));
        assert_eq!(Rational::new(1, 0), Err(Error::DivisionByZero));
    }

    #[test]
    fn normalization_on_construction() {
        let r = q(6, -4);
        assert_eq!(r.numer(), &Integer::from(-3));
        assert_eq!(r.denom(), &Integer::from(2));
        let z = q(0, -5);
        assert_eq!(z.numer(), &Integer::zero());
        assert_eq!(z.denom(), &Integer::one());
        assert_eq!(z, Rational::zero());
    }

    #[test]
    fn textual_format() {
        assert_eq!(q(-691, 2730).to_string(), "-691/2730");
        assert_eq!(q(10, 2).to_string(), "5");
        assert_eq!(Rational::zero().to_string(), "0");
        assert_eq!("-691/2730".parse::<Rational>().unwrap(), q(-691, 2730));
        assert_eq!(" 4/-6 ".parse::<Rational>().unwrap(), q(-2, 3));
        assert_eq!("5".parse::<Rational>().unwrap(), q(5, 1));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert_eq!(serde_json::to_string(&q(1, 6)).unwrap(), "\"1/6\"");
        assert_eq!(
            serde_json::from_str::<Rational>("\"-1/2\"").unwrap(),
            q(-1, 2)
        );
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(q(1, 3).to_decimal(4), "0.3333");
        assert_eq!(q(2, 3).to_decimal(4), "0.6667");
        assert_eq!(q(-5, 2).to_decimal(0), "-3");
        assert_eq!(q(-1, 1000).to_decimal(2), "0.00");
        assert_eq!(q(-1264, 1000).to_decimal(2), "-1.26");
        assert_eq!(q(12, 1).to_decimal(1), "12.0");
        assert_eq!(q(1, 3).to_scientific_upper(3), "3.34e-1");
        assert_eq!(q(1, 1000).to_scientific_upper(2), "1.0e-3");
        assert_eq!(q(-999, 1).to_scientific_upper(2), "-1.0e3");
        assert_eq!(q(5, 1).to_scientific_upper(1), "5e0");
        assert_eq!(Rational::zero().to_scientific_upper(4), "0");
    }

    #[test]
    fn floor_and_pow2() {
        assert_eq!(q(-1, 2).floor(), Integer::from(-1));
        assert_eq!(q(7, 2).floor(), Integer::from(3));
        assert_eq!(q(3, 1).mul_pow2(-2), q(3, 4));
        assert_eq!(q(3, 4).mul_pow2(3), q(6, 1));
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..30).prop_map(|(n, d)| q(n, d))
    }

    fn is_normalized(r: &Rational) -> bool {
        use num_integer::Integer as _;
        r.denom() > &Integer::zero() && r.numer().gcd(r.denom()).is_one()
    }

    proptest! {
        #[test]
        fn results_are_normalized(a in small_rational(), b in small_rational(), e in 0u32..6) {
            prop_assert!(is_normalized(&(&a + &b)));
            prop_assert!(is_normalized(&(&a - &b)));
            prop_assert!(is_normalized(&(&a * &b)));
            prop_assert!(is_normalized(&-a.clone()));
            prop_assert!(is_normalized(&a.pow(e)));
            if let Ok(quot) = a.checked_div(&b) {
                prop_assert!(is_normalized(&quot));
            }
        }

        #[test]
        fn field_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a - &a, Rational::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * a.recip().unwrap(), Rational::one());
            }
        }

        #[test]
        fn text_round_trip(a in small_rational()) {
            prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
        }
    }
}
