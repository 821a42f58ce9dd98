//! Exact finite-range certification of the power-sum and Bernoulli identities.
//!
//! Identities in `n` are compared as polynomials (coefficient equality), so a
//! passing report certifies every `n`; identities on Bernoulli numbers are
//! compared as exact rationals over every cell of the swept range.

use std::fmt;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bernoulli::{bernoulli_polynomial, BernoulliTable};
use crate::error::{Error, Result};
use crate::numeric::{choose, sign_power, Rational};
use crate::polynomial::Polynomial;
use crate::powersum::PowerSums;

/// One cell where the two sides differ, rendered verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub parameters: String,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    #[serde(rename = "identity")]
    pub identity_name: String,
    #[serde(rename = "range")]
    pub parameter_range: String,
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}]: {} checked, {} failures",
            self.identity_name,
            self.parameter_range,
            self.checked,
            self.failures.len()
        )
    }
}

/// The identities the suite knows how to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    /// `(n+1)((n+1)^p - 1) = n(n+1)^p + (n+1)((n+1)^(p-1) - 1)`
    PowerShift,
    /// `sum_{i=1}^{p} C(p+1, i-1) n^i = n((n+1)^(p+1) - n^p (p+n+1))`
    BinomialPowerSum,
    /// Gessel's two-sided binomial sum of Bernoulli numbers.
    Gessel,
    /// `(-1)^m B_m = sum_{i=0}^{m} C(m, i) B_i`
    BernoulliReflection,
    /// `(-1)^(m-k) C(m, k) B_{m-k} = sum_{i=k}^{m} C(m, i) C(i, k) B_{m-i}`
    BernoulliBinomial,
    /// `S_p(-(n+1)) = (-1)^(p+1) S_p(n)`
    PowerSumSymmetry,
    /// `B_m(1-x) = (-1)^m B_m(x)`
    BernoulliPolySymmetry,
}

impl Identity {
    pub const ALL: [Identity; 7] = [
        Identity::PowerShift,
        Identity::BinomialPowerSum,
        Identity::Gessel,
        Identity::BernoulliReflection,
        Identity::BernoulliBinomial,
        Identity::PowerSumSymmetry,
        Identity::BernoulliPolySymmetry,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::PowerShift => "power-shift",
            Identity::BinomialPowerSum => "binomial-power-sum",
            Identity::Gessel => "gessel",
            Identity::BernoulliReflection => "bernoulli-reflection",
            Identity::BernoulliBinomial => "bernoulli-binomial",
            Identity::PowerSumSymmetry => "symmetry",
            Identity::BernoulliPolySymmetry => "bernoulli-poly-symmetry",
        }
    }

    pub fn from_name(name: &str) -> Option<Identity> {
        Identity::ALL.into_iter().find(|i| i.name() == name)
    }

    /// Default sweep; for [`Identity::Gessel`] it bounds both indices.
    pub fn default_range(self) -> RangeInclusive<u32> {
        match self {
            Identity::PowerShift | Identity::BinomialPowerSum => 1..=40,
            Identity::Gessel => 0..=40,
            Identity::BernoulliReflection => 0..=80,
            Identity::BernoulliBinomial => 1..=60,
            Identity::PowerSumSymmetry => 1..=50,
            Identity::BernoulliPolySymmetry => 0..=60,
        }
    }

    pub fn check(
        self,
        range: RangeInclusive<u32>,
        sums: &PowerSums,
        table: &BernoulliTable,
    ) -> Result<VerificationReport> {
        match self {
            Identity::PowerShift => check_power_shift(range),
            Identity::BinomialPowerSum => check_binomial_power_sum(range),
            Identity::Gessel => {
                if !range.is_empty() && *range.start() != 0 {
                    return Err(Error::InvalidRange(format!(
                        "gessel sweeps both indices from 0, got {}",
                        describe("m, n", &range)
                    )));
                }
                Ok(check_gessel(*range.end(), *range.end(), table))
            }
            Identity::BernoulliReflection => Ok(check_bernoulli_reflection(range, table)),
            Identity::BernoulliBinomial => check_bernoulli_binomial(range, table),
            Identity::PowerSumSymmetry => check_symmetry(range, sums),
            Identity::BernoulliPolySymmetry => Ok(check_bernoulli_poly_symmetry(range, table)),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn describe(var: &str, range: &RangeInclusive<u32>) -> String {
    format!("{var} in {}..={}", range.start(), range.end())
}

fn require_min(var: &'static str, range: &RangeInclusive<u32>, min: u32) -> Result<()> {
    if !range.is_empty() && *range.start() < min {
        return Err(Error::InvalidRange(format!(
            "{var} must start at {min} or above, got {}",
            describe(var, range)
        )));
    }
    Ok(())
}

/// Runs `cell` over `params` in parallel and assembles a report ordered by parameter.
fn sweep<P, T>(
    identity: &str,
    range_text: String,
    params: Vec<P>,
    cell: impl Fn(&P) -> (T, T) + Sync,
    label: impl Fn(&P) -> String + Sync,
) -> VerificationReport
where
    P: Sync,
    T: PartialEq + fmt::Display + Send,
{
    let failures: Vec<Failure> = params
        .par_iter()
        .filter_map(|p| {
            let (left, right) = cell(p);
            (left != right).then(|| Failure {
                parameters: label(p),
                left: left.to_string(),
                right: right.to_string(),
            })
        })
        .collect();
    VerificationReport {
        identity_name: identity.to_string(),
        parameter_range: range_text,
        checked: params.len(),
        failures,
    }
}

fn shifted_power(p: u32) -> Polynomial {
    Polynomial::from_integers(&[1, 1]).pow(p)
}

pub fn check_power_shift(range: RangeInclusive<u32>) -> Result<VerificationReport> {
    require_min("p", &range, 1)?;
    let n = Polynomial::identity();
    let n1 = Polynomial::from_integers(&[1, 1]);
    let one = Polynomial::one();
    Ok(sweep(
        Identity::PowerShift.name(),
        describe("p", &range),
        range.clone().collect(),
        |&p| {
            let left = &n1 * &(shifted_power(p) - &one);
            let right = &n * &shifted_power(p) + &n1 * &(shifted_power(p - 1) - &one);
            (left, right)
        },
        |p| format!("p={p}"),
    ))
}

pub fn check_binomial_power_sum(range: RangeInclusive<u32>) -> Result<VerificationReport> {
    require_min("p", &range, 1)?;
    let n = Polynomial::identity();
    Ok(sweep(
        Identity::BinomialPowerSum.name(),
        describe("p", &range),
        range.clone().collect(),
        |&p| {
            let left = (1..=p as usize)
                .map(|i| Polynomial::monomial(choose(p as u64 + 1, i as i64 - 1).into(), i))
                .fold(Polynomial::zero(), |acc, t| acc + t);
            // p + n + 1
            let linear = Polynomial::new(vec![Rational::from(p as i64 + 1), Rational::one()]);
            let inner = shifted_power(p + 1) - &n.pow(p) * &linear;
            (left, &n * &inner)
        },
        |p| format!("p={p}"),
    ))
}

/// `sum_{i=0}^{m} C(m, i) B_{n+i} = (-1)^(m+n) sum_{j=0}^{n} C(n, j) B_{m+j}`
/// for every `0 <= m <= m_max`, `0 <= n <= n_max`.
pub fn check_gessel(m_max: u32, n_max: u32, table: &BernoulliTable) -> VerificationReport {
    let b = table.values_to((m_max + n_max) as usize);
    let cells: Vec<(u32, u32)> = (0..=m_max)
        .flat_map(|m| (0..=n_max).map(move |n| (m, n)))
        .collect();
    sweep(
        Identity::Gessel.name(),
        format!("m in 0..={m_max}, n in 0..={n_max}"),
        cells,
        |&(m, n)| {
            let left: Rational = (0..=m)
                .map(|i| Rational::from(choose(m as u64, i as i64)) * &b[(n + i) as usize])
                .sum();
            let right: Rational = (0..=n)
                .map(|j| Rational::from(choose(n as u64, j as i64)) * &b[(m + j) as usize])
                .sum();
            (left, sign_power((m + n) as u64) * right)
        },
        |(m, n)| format!("m={m}, n={n}"),
    )
}

/// `(-1)^m B_m = sum_{i=0}^{m} C(m, i) B_i`.
pub fn check_bernoulli_reflection(
    range: RangeInclusive<u32>,
    table: &BernoulliTable,
) -> VerificationReport {
    let b = table.values_to(*range.end() as usize);
    sweep(
        Identity::BernoulliReflection.name(),
        describe("m", &range),
        range.clone().collect(),
        |&m| {
            let right: Rational = (0..=m)
                .map(|i| Rational::from(choose(m as u64, i as i64)) * &b[i as usize])
                .sum();
            (sign_power(m as u64) * &b[m as usize], right)
        },
        |m| format!("m={m}"),
    )
}

/// `(-1)^(m-k) C(m, k) B_{m-k} = sum_{i=k}^{m} C(m, i) C(i, k) B_{m-i}` for all `0 <= k <= m`.
pub fn check_bernoulli_binomial(
    range: RangeInclusive<u32>,
    table: &BernoulliTable,
) -> Result<VerificationReport> {
    require_min("m", &range, 1)?;
    let b = table.values_to(*range.end() as usize);
    let cells: Vec<(u32, u32)> = range
        .clone()
        .flat_map(|m| (0..=m).map(move |k| (m, k)))
        .collect();
    Ok(sweep(
        Identity::BernoulliBinomial.name(),
        format!("{}, k in 0..=m", describe("m", &range)),
        cells,
        |&(m, k)| {
            let (m64, k64) = (m as u64, k as i64);
            let left = sign_power(m64 - k as u64)
                * Rational::from(choose(m64, k64))
                * &b[(m - k) as usize];
            let right: Rational = (k..=m)
                .map(|i| {
                    Rational::from(choose(m64, i as i64) * choose(i as u64, k64))
                        * &b[(m - i) as usize]
                })
                .sum();
            (left, right)
        },
        |(m, k)| format!("m={m}, k={k}"),
    ))
}

/// `S_p(-(n+1)) = (-1)^(p+1) S_p(n)` as polynomials, with `S_p` from the recursive construction.
pub fn check_symmetry(range: RangeInclusive<u32>, sums: &PowerSums) -> Result<VerificationReport> {
    require_min("p", &range, 1)?;
    let family = sums.family(*range.end() as i64)?;
    let minus_one = Rational::from(-1);
    Ok(sweep(
        Identity::PowerSumSymmetry.name(),
        describe("p", &range),
        range.clone().collect(),
        |&p| {
            let s = &family[p as usize - 1];
            (
                s.compose_affine(&minus_one, &minus_one),
                s.scale(&sign_power(p as u64 + 1)),
            )
        },
        |p| format!("p={p}"),
    ))
}

/// `B_m(1-x) = (-1)^m B_m(x)` as polynomials.
pub fn check_bernoulli_poly_symmetry(
    range: RangeInclusive<u32>,
    table: &BernoulliTable,
) -> VerificationReport {
    table.fill_to(*range.end() as usize);
    let (minus_one, one) = (Rational::from(-1), Rational::one());
    sweep(
        Identity::BernoulliPolySymmetry.name(),
        describe("m", &range),
        range.clone().collect(),
        |&m| {
            let bm = bernoulli_polynomial(m as i64, table).expect("nonnegative index");
            (
                bm.compose_affine(&minus_one, &one),
                bm.scale(&sign_power(m as u64)),
            )
        },
        |m| format!("m={m}"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn power_shift() {
        let r = check_power_shift(1..=40).unwrap();
        assert!(r.passed());
        assert_eq!(r.checked, 40);
        #[allow(clippy::reversed_empty_ranges)]
        let empty = check_power_shift(1..=0).unwrap();
        assert!(empty.passed());
        assert_eq!(empty.checked, 0);
        assert!(check_power_shift(0..=3).is_err());
    }

    #[test]
    fn power_shift_at_one_is_n_squared_plus_n() {
        let n1 = Polynomial::from_integers(&[1, 1]);
        let left = &n1 * &(shifted_power(1) - Polynomial::one());
        assert_eq!(left, Polynomial::from_integers(&[0, 1, 1]));
    }

    #[test]
    fn binomial_power_sum() {
        let r = check_binomial_power_sum(1..=40).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.checked, 40);
        let one = check_binomial_power_sum(1..=1).unwrap();
        assert!(one.passed());
    }

    #[test]
    fn gessel_cells() {
        let t = BernoulliTable::new();
        let b = t.values_to(2);
        // (m, n) = (2, 0): B_0 + 2 B_1 + B_2 against B_2
        assert_eq!(&b[0] + Rational::from(2) * &b[1] + &b[2], q(1, 6));
        let r = check_gessel(40, 40, &t);
        assert!(r.passed());
        assert_eq!(r.checked, 1681);
        let r = check_gessel(0, 0, &t);
        assert_eq!(r.checked, 1);
        assert!(r.passed());
    }

    #[test]
    fn reflection() {
        let t = BernoulliTable::new();
        let r = check_bernoulli_reflection(0..=80, &t);
        assert!(r.passed());
        assert_eq!(r.checked, 81);
    }

    #[test]
    fn bernoulli_binomial() {
        let t = BernoulliTable::new();
        let r = check_bernoulli_binomial(1..=60, &t).unwrap();
        assert!(r.passed());
        assert_eq!(r.checked, 1890);
        assert!(check_bernoulli_binomial(0..=3, &t).is_err());
    }

    #[test]
    fn symmetry_sweeps() {
        let r = check_symmetry(1..=50, &PowerSums::new()).unwrap();
        assert!(r.passed());
        assert_eq!(r.checked, 50);
        assert_eq!(
            r.to_string(),
            "symmetry [p in 1..=50]: 50 checked, 0 failures"
        );
        let t = BernoulliTable::new();
        let r = check_bernoulli_poly_symmetry(0..=60, &t);
        assert!(r.passed());
        assert_eq!(r.checked, 61);
    }

    #[test]
    fn perturbation_is_detected() {
        // both a prefilled table and one extended lazily after perturbation
        for (m, t) in (0..=20).flat_map(|m| {
            [
                (m, BernoulliTable::with_capacity(80)),
                (m, BernoulliTable::new()),
            ]
        }) {
            let bad = t.perturbed(m, &Rational::one());
            let eq = check_bernoulli_reflection(0..=80, &bad);
            assert!(!eq.passed(), "reflection missed B_{m}");
            let bb = check_bernoulli_binomial(1..=60, &bad).unwrap();
            assert!(!bb.passed(), "binomial identity missed B_{m}");
        }
    }

    #[test]
    fn failures_carry_both_sides() {
        let t = BernoulliTable::with_capacity(4).perturbed(1, &Rational::one());
        let r = check_bernoulli_reflection(1..=1, &t);
        assert_eq!(
            r.failures,
            vec![Failure {
                parameters: "m=1".into(),
                left: "-1/2".into(),
                right: "3/2".into()
            }]
        );
    }

    #[test]
    fn report_json_shape() {
        let r = check_power_shift(1..=2).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["identity"], "power-shift");
        assert_eq!(json["range"], "p in 1..=2");
        assert_eq!(json["checked"], 2);
        assert!(json["failures"].as_array().unwrap().is_empty());
    }

    #[test]
    fn identity_names_round_trip() {
        for id in Identity::ALL {
            assert_eq!(Identity::from_name(id.name()), Some(id));
        }
        assert_eq!(Identity::from_name("nope"), None);
    }
}
