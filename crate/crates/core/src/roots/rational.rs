//! Rational roots with exact multiplicities.
//!
//! A rational root `u/v` (lowest terms) of an integer polynomial has `v` dividing
//! the leading coefficient `a`, so two distinct candidates are at least `1/a^2`
//! apart. Each real root of every square-free factor is isolated with a Sturm
//! sequence and narrowed below that width; the simplest fraction in the final
//! interval is then the only possible rational value of the root, and it is
//! tested exactly.

use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::numeric::{Integer, Rational};
use crate::polynomial::Polynomial;

use super::squarefree::square_free_decompose;
use super::sturm::isolate_real_roots;

/// All rational roots of a nonzero polynomial, ascending, with multiplicities.
pub fn rational_roots(p: &Polynomial) -> Result<Vec<(Rational, u32)>> {
    let decomposition = square_free_decompose(p)?;
    let mut roots = Vec::new();
    for (factor, multiplicity) in &decomposition.factors {
        for r in square_free_rational_roots(factor)? {
            roots.push((r, *multiplicity));
        }
    }
    roots.sort();
    Ok(roots)
}

/// `p / prod (n - r)^m`, checking that every division is exact.
pub fn deflate(p: &Polynomial, roots: &[(Rational, u32)]) -> Result<Polynomial> {
    roots.iter().try_fold(p.clone(), |acc, (r, m)| {
        acc.div_exact(&Polynomial::linear_factor(r).pow(*m))
    })
}

fn square_free_rational_roots(f: &Polynomial) -> Result<Vec<Rational>> {
    let ints = f.to_primitive_integer();
    let lead = ints.last().expect("nonzero factor").abs();
    let trailing = ints
        .iter()
        .find(|c| !c.is_zero())
        .expect("nonzero factor")
        .abs();
    // separation between distinct fractions whose denominators divide `lead`
    let width = Rational::new(1, &lead * &lead)?;

    let mut found = Vec::new();
    for (lo, hi) in isolate_real_roots(f)? {
        if let Some(r) = locate_rational(f, lo, hi, &width, &lead, &trailing) {
            found.push(r);
        }
    }
    Ok(found)
}

/// Narrows `(lo, hi]`, which holds exactly one simple root of `f`, and returns
/// the root if it is rational.
fn locate_rational(
    f: &Polynomial,
    mut lo: Rational,
    mut hi: Rational,
    width: &Rational,
    lead: &Integer,
    trailing: &Integer,
) -> Option<Rational> {
    let half = Rational::frac(1, 2);
    let f_hi = f.evaluate(&hi);
    if f_hi.is_zero() {
        return Some(hi);
    }
    let hi_sign = f_hi.signum();
    // The root lies strictly inside; step `lo` off any neighbouring root so
    // the signs at the two ends differ.
    while f.evaluate(&lo).is_zero() {
        let mid = (&lo + &hi) * &half;
        let f_mid = f.evaluate(&mid);
        if f_mid.is_zero() {
            return Some(mid);
        }
        if f_mid.signum() == hi_sign {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    while &hi - &lo >= *width {
        let mid = (&lo + &hi) * &half;
        let s = f.evaluate(&mid).signum();
        if s == 0 {
            return Some(mid);
        }
        if s == hi_sign {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let candidate = simplest_between(&lo, &hi);
    // rational root theorem: numerator | trailing, denominator | lead
    if !lead.is_multiple_of(candidate.denom()) {
        return None;
    }
    if !candidate.is_zero() && !trailing.is_multiple_of(&candidate.numer().abs()) {
        return None;
    }
    f.evaluate(&candidate).is_zero().then_some(candidate)
}

/// The fraction with the smallest denominator in `[lo, hi]`.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if lo.signum() <= 0 && hi.signum() >= 0 {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = lo.floor();
    let fl_q = Rational::from(fl.clone());
    if &fl_q == lo {
        return fl_q;
    }
    let next = Rational::from(fl + 1);
    if &next <= hi {
        return next;
    }
    // lo and hi share the integer part; recurse on the reciprocals of the
    // fractional parts.
    let inner_lo = (hi - &fl_q).recip().expect("positive fractional part");
    let inner_hi = (lo - &fl_q).recip().expect("positive fractional part");
    fl_q + simplest_between(&inner_lo, &inner_hi)
        .recip()
        .expect("positive")
}
