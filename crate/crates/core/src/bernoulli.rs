//! Bernoulli numbers from the recurrence `sum_{i=0}^{m} C(m+1, i) B_i = 0`, `B_0 = 1`,
//! and the Bernoulli polynomials built from them.
//!
//! The recurrence fixes `B_1 = -1/2`. Odd indices `>= 3` are computed through the
//! recurrence like every other index; nothing is short-circuited to zero.

use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::numeric::{binomial_row, Rational};
use crate::polynomial::Polynomial;

/// Memoized prefix `B_0, B_1, ..., B_{len-1}`.
///
/// Lookups extend the prefix on demand. Filling is idempotent: a value, once
/// stored, is never recomputed or replaced, and concurrent readers only ever
/// observe a complete prefix.
#[derive(Debug)]
pub struct BernoulliTable {
    values: RwLock<Vec<Rational>>,
    // (m, delta) added to B_m on every read; the stored values stay exact
    offsets: Vec<(usize, Rational)>,
}

impl Default for BernoulliTable {
    fn default() -> Self {
        BernoulliTable::new()
    }
}

impl Clone for BernoulliTable {
    fn clone(&self) -> Self {
        BernoulliTable {
            values: RwLock::new(self.values.read().expect("table lock").clone()),
            offsets: self.offsets.clone(),
        }
    }
}

impl BernoulliTable {
    pub fn new() -> Self {
        BernoulliTable::from_prefix(vec![Rational::one()])
    }

    /// A table pre-filled to `B_max`.
    pub fn with_capacity(max: usize) -> Self {
        let table = BernoulliTable::new();
        table.fill_to(max);
        table
    }

    /// Wraps an arbitrary prefix. Later extension runs the recurrence on top of
    /// whatever values are supplied.
    pub fn from_prefix(values: Vec<Rational>) -> Self {
        assert!(!values.is_empty(), "a Bernoulli prefix holds at least B_0");
        BernoulliTable {
            values: RwLock::new(values),
            offsets: Vec::new(),
        }
    }

    fn apply_offsets(&self, values: &mut [Rational]) {
        for (m, delta) in &self.offsets {
            if let Some(v) = values.get_mut(*m) {
                *v += delta;
            }
        }
    }

    /// Largest index currently stored.
    pub fn capacity(&self) -> usize {
        self.values.read().expect("table lock").len() - 1
    }

    /// Copy of the stored prefix.
    pub fn snapshot(&self) -> Vec<Rational> {
        let mut values = self.values.read().expect("table lock").clone();
        self.apply_offsets(&mut values);
        values
    }

    /// `B_m`, extending the table if needed.
    pub fn get(&self, m: usize) -> Rational {
        self.fill_to(m);
        let mut v = self.values.read().expect("table lock")[m].clone();
        for (_, delta) in self.offsets.iter().filter(|(i, _)| *i == m) {
            v += delta;
        }
        v
    }

    /// `B_0..=B_max`.
    pub fn values_to(&self, max: usize) -> Vec<Rational> {
        self.fill_to(max);
        let mut values = self.values.read().expect("table lock")[..=max].to_vec();
        self.apply_offsets(&mut values);
        values
    }

    pub fn fill_to(&self, max: usize) {
        if self.capacity() >= max {
            return;
        }
        let mut values = self.values.write().expect("table lock");
        // Another writer may have filled past `max` while we waited.
        while values.len() <= max {
            let m = values.len();
            // B_m = -(1/(m+1)) * sum_{i<m} C(m+1, i) B_i
            let row = binomial_row(m as u64 + 1);
            let partial: Rational = values
                .iter()
                .zip(&row)
                .map(|(b, c)| b * Rational::from(c.clone()))
                .sum();
            values.push(-partial * Rational::frac(1, m as i64 + 1));
        }
    }

    /// Test hook: a detached copy in which `B_m` reads as `B_m + delta`. Every
    /// other entry keeps its recurrence value, however far the copy is extended.
    pub fn perturbed(&self, m: usize, delta: &Rational) -> BernoulliTable {
        let mut copy = self.clone();
        copy.offsets.push((m, delta.clone()));
        copy
    }
}

/// `B_m` with a signed index check.
pub fn bernoulli_number(m: i64, table: &BernoulliTable) -> Result<Rational> {
    if m < 0 {
        return Err(Error::out_of_range("m", 0, m));
    }
    Ok(table.get(m as usize))
}

/// `B_m(x) = sum_{k=0}^{m} C(m, k) B_k x^(m-k)`.
pub fn bernoulli_polynomial(m: i64, table: &BernoulliTable) -> Result<Polynomial> {
    if m < 0 {
        return Err(Error::out_of_range("m", 0, m));
    }
    let m = m as usize;
    let numbers = table.values_to(m);
    let row = binomial_row(m as u64);
    let mut coeffs = vec![Rational::zero(); m + 1];
    for (k, (b, c)) in numbers.iter().zip(row).enumerate() {
        coeffs[m - k] = b * Rational::from(c);
    }
    Ok(Polynomial::new(coeffs))
}
