//! Exact rational scalars, rational interval enclosures, certified natural-log
//! enclosures, and a sign oracle.
//!
//! The rule for this module (and everything built on it): no rounding, ever.
//! A quantity is either an exact [`crate::Rat`] or an interval with exact
//! rational endpoints proven to contain the true value. Signs of expressions
//! involving logarithms are decided by refining enclosures until zero is
//! excluded; a sign is never guessed.

mod expr;
mod interval;
mod ln;

pub use expr::{sign_of, sign_of_with, Expr, RefineSchedule, Sign};
pub use interval::RationalInterval;
pub use ln::{ln2_enclosure, ln_enclosure};

use crate::Rat;
use thiserror::Error;

/// Errors from enclosure construction and sign certification.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ExactNumError {
    /// `ln` was asked for a non-positive argument.
    #[error("logarithm argument {0} is not positive")]
    NonPositiveLog(Rat),
    /// The sign oracle reached its precision cap with zero still inside the
    /// enclosure. The true value may be zero, or may need more precision than
    /// the configured cap allows.
    #[error("sign undecided at precision cap {cap_bits} bits; enclosure was [{lo}, {hi}]")]
    Undecided { cap_bits: u32, lo: Rat, hi: Rat },
}
