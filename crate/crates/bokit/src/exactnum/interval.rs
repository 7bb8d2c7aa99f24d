use crate::{rat, Rat};
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A closed interval `[lo, hi]` with exact rational endpoints.
///
/// Arithmetic is exact outward-free interval arithmetic: because endpoints
/// are rationals, no rounding is introduced by the operations themselves, so
/// the result of an operation is the tightest interval containing the true
/// range. Widths only grow when a genuinely inexact quantity (a logarithm)
/// enters an expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalInterval {
    lo: Rat,
    hi: Rat,
}

impl RationalInterval {
    /// New interval; panics if `lo > hi` (always a programming error here).
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self { lo, hi }
    }

    /// The degenerate interval `[r, r]`.
    pub fn point(r: Rat) -> Self {
        Self { lo: r.clone(), hi: r }
    }

    pub fn zero() -> Self {
        Self::point(Rat::zero())
    }

    pub fn one() -> Self {
        Self::point(Rat::one())
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn into_parts(self) -> (Rat, Rat) {
        (self.lo, self.hi)
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, r: &Rat) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Every value in the interval is `> 0`.
    pub fn is_strictly_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// Every value in the interval is `< 0`.
    pub fn is_strictly_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat(2)
    }

    /// Multiply by an exact rational (sign-aware).
    pub fn scale(&self, f: &Rat) -> Self {
        if f.is_negative() {
            Self { lo: &self.hi * f, hi: &self.lo * f }
        } else {
            Self { lo: &self.lo * f, hi: &self.hi * f }
        }
    }

    /// Add an exact rational to both endpoints.
    pub fn shift(&self, f: &Rat) -> Self {
        Self { lo: &self.lo + f, hi: &self.hi + f }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "[{}]", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

impl Add for &RationalInterval {
    type Output = RationalInterval;
    fn add(self, rhs: Self) -> RationalInterval {
        RationalInterval { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }
}

impl Sub for &RationalInterval {
    type Output = RationalInterval;
    fn sub(self, rhs: Self) -> RationalInterval {
        RationalInterval { lo: &self.lo - &rhs.hi, hi: &self.hi - &rhs.lo }
    }
}

impl Neg for &RationalInterval {
    type Output = RationalInterval;
    fn neg(self) -> RationalInterval {
        RationalInterval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }
}

impl Mul for &RationalInterval {
    type Output = RationalInterval;
    fn mul(self, rhs: Self) -> RationalInterval {
        let mut products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        products.sort();
        let [lo, .., hi] = products;
        RationalInterval { lo, hi }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    #[test]
    fn arithmetic_is_exact_and_ordered() {
        let a = RationalInterval::new(ratio(1, 3), ratio(1, 2));
        let b = RationalInterval::new(ratio(-2, 1), ratio(5, 1));
        let sum = &a + &b;
        assert_eq!(sum.lo(), &ratio(-5, 3));
        assert_eq!(sum.hi(), &ratio(11, 2));

        let prod = &a * &b;
        assert_eq!(prod.lo(), &ratio(-1, 1)); // 1/2 * -2
        assert_eq!(prod.hi(), &ratio(5, 2)); // 1/2 * 5

        let neg = -&a;
        assert_eq!(neg.lo(), &ratio(-1, 2));
        assert!((&a - &a).contains_zero());
    }

    #[test]
    fn point_intervals_stay_points_under_arithmetic() {
        let p = RationalInterval::point(ratio(7, 4));
        let q = RationalInterval::point(ratio(-3, 2));
        assert!((&p + &q).is_point());
        assert!((&p * &q).is_point());
        assert_eq!((&p * &q).lo(), &ratio(-21, 8));
    }

    #[test]
    fn sign_queries() {
        let pos = RationalInterval::new(ratio(1, 1000), ratio(1, 2));
        assert!(pos.is_strictly_positive() && !pos.contains_zero());
        let straddle = RationalInterval::new(ratio(-1, 1000), ratio(1, 1000));
        assert!(straddle.contains_zero());
        assert!(!straddle.is_strictly_positive() && !straddle.is_strictly_negative());
    }

    #[test]
    #[should_panic(expected = "out of order")]
    fn rejects_inverted_endpoints() {
        RationalInterval::new(ratio(1, 2), ratio(1, 3));
    }
}
