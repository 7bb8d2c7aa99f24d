//! Exact-arithmetic toolkit for partition-number inequalities.
//!
//! Everything in this crate computes with arbitrary-precision rationals —
//! there is no floating point anywhere on a proof path. The crate provides:
//!
//! * [`exactnum`] — rational intervals, certified natural-log enclosures, and
//!   a sign oracle that refines precision until a sign is proven.
//! * [`partitions`] — partition numbers, divisor sums, k-colored partition
//!   numbers, and independent cross-check engines for each.
//! * [`darcais`] — the polynomial family `P_n` defined by the divisor-sum
//!   recurrence (whose value at a positive integer k is the k-colored
//!   partition number), products/differences of them, and a cached table.
//! * [`roots`] — Sturm-sequence root counting and largest-real-root isolation
//!   for exact rational polynomials.
//! * [`certify`] — replayable certificates for the induction proofs of
//!   Bessenrodt–Ono-type inequalities: base-case sweeps, per-step bound
//!   ledgers, threshold scans, and an all-the-way-to-infinity tail argument.
//!
//! The companion binary `bokit` exposes the same functionality as a CLI.

pub mod certify;
pub mod darcais;
pub mod exactnum;
pub mod guide;
pub mod partitions;
pub mod roots;

/// The workspace README's code example, compiled and run with the doc-tests
/// so it cannot drift from the library.
#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

/// Arbitrary-precision signed integer used throughout the crate.
pub type Int = num::BigInt;
/// Arbitrary-precision rational used throughout the crate. Values are always
/// stored gcd-reduced with a positive denominator; construction via
/// [`num::BigRational::new`] enforces this, and division by zero panics.
pub type Rat = num::BigRational;

use num::{BigInt, BigRational};

/// `i64 → Int` without type-annotation noise.
pub fn int(n: i64) -> Int {
    BigInt::from(n)
}

/// `i64 → Rat` without type-annotation noise.
pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// `num/den → Rat` (exact, reduced). Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
