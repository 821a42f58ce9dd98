//! `S_p(n) = 1^p + 2^p + ... + n^p` as a polynomial in `n`, built three ways:
//!
//! * recursively from `S_1, ..., S_{p-1}` ([`PowerSums::recursive`]),
//! * from Faulhaber's formula with Bernoulli-number coefficients ([`powersum_faulhaber`]),
//! * from the Bernoulli polynomial `B_{p+1}` ([`powersum_bernoulli_poly`]),
//!
//! plus the brute-force summation [`brute_force_sum`] used as the oracle for all three.

use std::sync::RwLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bernoulli::{bernoulli_polynomial, BernoulliTable};
use crate::error::{Error, Result};
use crate::numeric::{binomial_row, sign_power, Integer, Rational};
use crate::polynomial::Polynomial;

fn check_p(p: i64) -> Result<usize> {
    if p < 1 {
        return Err(Error::out_of_range("p", 1, p));
    }
    Ok(p as usize)
}

/// Cache of recursively constructed `S_1, S_2, ...`, sharing the idempotent-fill
/// behaviour of [`BernoulliTable`].
#[derive(Debug, Default)]
pub struct PowerSums {
    // index p - 1 holds S_p
    cache: RwLock<Vec<Polynomial>>,
}

impl PowerSums {
    pub fn new() -> Self {
        PowerSums::default()
    }

    /// `S_p` by the recursive construction over polynomials:
    /// `S_1 = n(n+1)/2` and, for `p >= 2`,
    /// `S_p = ((n+1)((n+1)^p - 1) - sum_{i=1}^{p-1} C(p+1, i) S_i) / (p+1)`.
    pub fn recursive(&self, p: i64) -> Result<Polynomial> {
        let p = check_p(p)?;
        {
            let cache = self.cache.read().expect("cache lock");
            if let Some(s) = cache.get(p - 1) {
                return Ok(s.clone());
            }
        }
        let mut cache = self.cache.write().expect("cache lock");
        let n_plus_1 = Polynomial::from_integers(&[1, 1]);
        while cache.len() < p {
            let next = cache.len() + 1;
            let s = if next == 1 {
                Polynomial::new(vec![
                    Rational::zero(),
                    Rational::frac(1, 2),
                    Rational::frac(1, 2),
                ])
            } else {
                let row = binomial_row(next as u64 + 1);
                let mut acc = &n_plus_1 * &(n_plus_1.pow(next as u32) - Polynomial::one());
                for (i, s_i) in cache.iter().enumerate() {
                    acc = acc - s_i.scale(&Rational::from(row[i + 1].clone()));
                }
                acc.scale(&Rational::frac(1, next as i64 + 1))
            };
            cache.push(s);
        }
        Ok(cache[p - 1].clone())
    }

    /// `S_1..=S_{p_max}`.
    pub fn family(&self, p_max: i64) -> Result<Vec<Polynomial>> {
        if p_max < 1 {
            return Ok(Vec::new());
        }
        self.recursive(p_max)?;
        Ok(self.cache.read().expect("cache lock")[..p_max as usize].to_vec())
    }
}

/// One-off recursive construction without a shared cache.
pub fn powersum_recursive(p: i64) -> Result<Polynomial> {
    PowerSums::new().recursive(p)
}

/// `S_p = (1/(p+1)) sum_{i=0}^{p} (-1)^i C(p+1, i) B_i n^(p+1-i)`.
pub fn powersum_faulhaber(p: i64, table: &BernoulliTable) -> Result<Polynomial> {
    let p = check_p(p)?;
    let bernoulli = table.values_to(p);
    let row = binomial_row(p as u64 + 1);
    let mut coeffs = vec![Rational::zero(); p + 2];
    for i in 0..=p {
        coeffs[p + 1 - i] = sign_power(i as u64) * Rational::from(row[i].clone()) * &bernoulli[i];
    }
    Ok(Polynomial::new(coeffs).scale(&Rational::frac(1, p as i64 + 1)))
}

/// `S_p = (B_{p+1}(n+1) - B_{p+1}(1)) / (p+1)`.
///
/// `B_{p+1}(1)` is taken by evaluating the constructed polynomial at 1.
pub fn powersum_bernoulli_poly(p: i64, table: &BernoulliTable) -> Result<Polynomial> {
    check_p(p)?;
    let bp = bernoulli_polynomial(p + 1, table)?;
    let at_one = bp.evaluate(&Rational::one());
    let shifted = bp.compose_affine(&Rational::one(), &Rational::one());
    Ok((shifted - Polynomial::constant(at_one)).scale(&Rational::frac(1, p + 1)))
}

/// `sum_{k=1}^{n} k^p`, zero for `n = 0`.
pub fn brute_force_sum(p: i64, n: i64) -> Result<Integer> {
    check_p(p)?;
    if n < 0 {
        return Err(Error::out_of_range("n", 0, n));
    }
    let mut total = Integer::zero();
    for k in 1..=n {
        total += num_traits::pow(Integer::from(k), p as usize);
    }
    Ok(total)
}

/// `S_1..=S_{p_max}` from each of the three constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSumFamily {
    pub p_max: usize,
    pub by_recursion: Vec<Polynomial>,
    pub by_faulhaber: Vec<Polynomial>,
    pub by_bernoulli_poly: Vec<Polynomial>,
}

/// One entry of the JSON family export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerSumEntry {
    pub p: usize,
    pub coefficients: Polynomial,
}

impl PowerSumFamily {
    pub fn build(p_max: usize, sums: &PowerSums, table: &BernoulliTable) -> Result<Self> {
        let by_recursion = sums.family(p_max as i64)?;
        let mut by_faulhaber = Vec::with_capacity(p_max);
        let mut by_bernoulli_poly = Vec::with_capacity(p_max);
        for p in 1..=p_max as i64 {
            by_faulhaber.push(powersum_faulhaber(p, table)?);
            by_bernoulli_poly.push(powersum_bernoulli_poly(p, table)?);
        }
        Ok(PowerSumFamily {
            p_max,
            by_recursion,
            by_faulhaber,
            by_bernoulli_poly,
        })
    }

    /// Values of `p` where the three constructions do not coincide.
    pub fn disagreements(&self) -> Vec<usize> {
        (0..self.p_max)
            .filter(|&i| {
                self.by_recursion[i] != self.by_faulhaber[i]
                    || self.by_recursion[i] != self.by_bernoulli_poly[i]
            })
            .map(|i| i + 1)
            .collect()
    }

    pub fn agree(&self) -> bool {
        self.disagreements().is_empty()
    }

    pub fn entries(&self) -> Vec<PowerSumEntry> {
        self.by_recursion
            .iter()
            .enumerate()
            .map(|(i, s)| PowerSumEntry {
                p: i + 1,
                coefficients: s.clone(),
            })
            .collect()
    }
}
