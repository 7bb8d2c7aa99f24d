//! Expression trees over exact rationals and logarithms, and the sign oracle.

use super::{ln_enclosure, ExactNumError, RationalInterval};
use crate::Rat;
use num::Zero;
use std::fmt;
use std::ops;

/// A finite composition of exact rational constants and natural logarithms
/// under `+`, `−`, `×`, and negation.
///
/// Expressions are evaluated to [`RationalInterval`] enclosures at a chosen
/// precision; [`sign_of`] refines the precision until the sign is certain.
#[derive(Debug, Clone)]
pub enum Expr {
    Const(Rat),
    Ln(Rat),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn constant(r: Rat) -> Self {
        Expr::Const(r)
    }

    pub fn ln(q: Rat) -> Self {
        Expr::Ln(q)
    }

    /// Enclosure of the expression with every logarithm evaluated to
    /// `precision_bits`. Sub-enclosures combine by exact interval arithmetic,
    /// so the result is guaranteed to contain the true value.
    pub fn eval(&self, precision_bits: u32) -> Result<RationalInterval, ExactNumError> {
        Ok(match self {
            Expr::Const(r) => RationalInterval::point(r.clone()),
            Expr::Ln(q) => ln_enclosure(q, precision_bits)?,
            Expr::Neg(e) => -&e.eval(precision_bits)?,
            Expr::Add(a, b) => &a.eval(precision_bits)? + &b.eval(precision_bits)?,
            Expr::Sub(a, b) => &a.eval(precision_bits)? - &b.eval(precision_bits)?,
            Expr::Mul(a, b) => &a.eval(precision_bits)? * &b.eval(precision_bits)?,
        })
    }

    /// True when no logarithm occurs, i.e. evaluation is a single exact
    /// rational and every sign question is decidable at any precision.
    pub fn is_pure_rational(&self) -> bool {
        match self {
            Expr::Const(_) => true,
            Expr::Ln(_) => false,
            Expr::Neg(e) => e.is_pure_rational(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.is_pure_rational() && b.is_pure_rational()
            }
        }
    }
}

impl From<Rat> for Expr {
    fn from(r: Rat) -> Self {
        Expr::Const(r)
    }
}

impl ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }
}

impl ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }
}

impl ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

/// Certified sign of a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "negative",
            Sign::Zero => "zero",
            Sign::Positive => "positive",
        })
    }
}

/// Precision refinement schedule for [`sign_of_with`]: start at `start_bits`
/// and double until `cap_bits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RefineSchedule {
    pub start_bits: u32,
    pub cap_bits: u32,
}

impl Default for RefineSchedule {
    fn default() -> Self {
        RefineSchedule { start_bits: 32, cap_bits: 1 << 14 }
    }
}

/// [`sign_of_with`] under the default schedule (32 bits doubling to 2¹⁴).
pub fn sign_of(expr: &Expr) -> Result<Sign, ExactNumError> {
    sign_of_with(expr, RefineSchedule::default())
}

/// Certified sign of `expr`.
///
/// Evaluates the expression to an enclosure, doubling the precision until
/// zero is excluded or the enclosure collapses to an exact point (which
/// happens immediately for pure-rational expressions, including the exact
/// witness `0`). If the cap is reached with zero still inside, returns
/// [`ExactNumError::Undecided`] — never a guessed sign.
pub fn sign_of_with(expr: &Expr, schedule: RefineSchedule) -> Result<Sign, ExactNumError> {
    assert!(
        schedule.start_bits >= 1 && schedule.start_bits <= schedule.cap_bits,
        "refinement schedule out of order"
    );
    let mut bits = schedule.start_bits;
    loop {
        let enc = expr.eval(bits)?;
        if enc.is_strictly_positive() {
            return Ok(Sign::Positive);
        }
        if enc.is_strictly_negative() {
            return Ok(Sign::Negative);
        }
        if enc.is_point() {
            // Not strictly positive, not strictly negative, zero width:
            // the value is exactly zero.
            debug_assert!(enc.lo().is_zero());
            return Ok(Sign::Zero);
        }
        if bits >= schedule.cap_bits {
            let (lo, hi) = enc.into_parts();
            return Err(ExactNumError::Undecided { cap_bits: schedule.cap_bits, lo, hi });
        }
        bits = bits.saturating_mul(2).min(schedule.cap_bits);
    }
}
