//! Exact sums of powers `S_p(n) = 1^p + ... + n^p` as polynomials in `n`.
//!
//! Everything is exact over the rationals except the numerical root
//! approximations in [`roots`], which carry certified error radii.
//!
//! ```
//! use faulhaber::{powersum_faulhaber, BernoulliTable, PowerSums, Rational};
//!
//! # fn main() -> faulhaber::Result<()> {
//! let table = BernoulliTable::new();
//! let s4 = powersum_faulhaber(4, &table)?;
//! assert_eq!(s4, PowerSums::new().recursive(4)?);
//! assert_eq!(s4.evaluate(&Rational::from(3)), Rational::from(98));
//!
//! let report = faulhaber::analyze(4, 256)?;
//! assert_eq!(report.distinct_real_root_count, 5);
//! # Ok(())
//! # }
//! ```

pub mod bernoulli;
pub mod error;
pub mod numeric;
pub mod polynomial;
pub mod powersum;
pub mod roots;
pub mod verify;

pub use bernoulli::{bernoulli_number, bernoulli_polynomial, BernoulliTable};
pub use error::{Error, Result};
pub use numeric::{binomial, Integer, Rational};
pub use polynomial::{poly_gcd, Polynomial};
pub use powersum::{
    brute_force_sum, powersum_bernoulli_poly, powersum_faulhaber, powersum_recursive,
    PowerSumFamily, PowerSums,
};
pub use roots::{analyze, RootReport};
pub use verify::{Identity, VerificationReport};
