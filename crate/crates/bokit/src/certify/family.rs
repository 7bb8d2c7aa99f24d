//! The four certified inequality families and their frozen constants.
//!
//! A family asserts `P_a(x)·P_b(x) > P_{a+b}(x)` for `a ≥ b ≥ a_min` with
//! `a + b > n_min` (small sums are handled by the base sweep up to `n0`).
//! Its closing expression is `−c·a²(1 + ln 2a) + Σ_{ℓ=1}^{m} C(a−2, ℓ−1)xˡ/ℓ!`;
//! the constant `c` absorbs the logarithmic loss terms of the step ledger,
//! and [`verify_constant_derivation`] re-derives it from exact values rather
//! than trusting the transcription.

use super::CertifyError;
use crate::darcais::darcais_values;
use crate::partitions::partition_numbers;
use crate::{rat, ratio, Rat};
use num::One;
use std::fmt;

/// The supported inequality families, named by their evaluation point:
/// plain partitions (`x = 1`), two and three colors (`x = 2`, `x = 3`),
/// and the fractional point `x = 9/5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Plain partition numbers: `p(a)p(b) > p(a+b)`.
    Bo,
    /// Two-colored: `P_a(2)P_b(2) > P_{a+b}(2)`.
    X2,
    /// Three-colored: `P_a(3)P_b(3) > P_{a+b}(3)`.
    X3,
    /// Fractional point: `P_a(9/5)P_b(9/5) > P_{a+b}(9/5)`.
    X18,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Bo, Family::X2, Family::X3, Family::X18];

    pub fn name(self) -> &'static str {
        match self {
            Family::Bo => "bo",
            Family::X2 => "x2",
            Family::X3 => "x3",
            Family::X18 => "x18",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s.to_ascii_lowercase().as_str() {
            "bo" => Some(Family::Bo),
            "x2" => Some(Family::X2),
            "x3" => Some(Family::X3),
            "x18" => Some(Family::X18),
            _ => None,
        }
    }

    /// Whether the exhaustive base sweep covers the full square
    /// `a, b ≤ n0` (otherwise it covers the triangle `a + b ≤ n0`).
    pub fn base_is_square(self) -> bool {
        matches!(self, Family::X3 | Family::X18)
    }

    pub fn params(self) -> FamilyParams {
        match self {
            Family::Bo => FamilyParams {
                family: self,
                x: rat(1),
                a_min: 2,
                n_min: 10,
                n0: 2184,
                constant: rat(48),
                bound_terms: 5,
                published_threshold: 1093,
                refined_threshold: None,
            },
            Family::X2 => FamilyParams {
                family: self,
                x: rat(2),
                a_min: 1,
                n_min: 5,
                n0: 28,
                constant: rat(3),
                bound_terms: 5,
                published_threshold: 15,
                refined_threshold: None,
            },
            Family::X3 => FamilyParams {
                family: self,
                x: rat(3),
                a_min: 1,
                n_min: 2,
                n0: 14,
                constant: rat(2),
                bound_terms: 6,
                published_threshold: 12,
                refined_threshold: Some(8),
            },
            Family::X18 => FamilyParams {
                family: self,
                x: ratio(9, 5),
                a_min: 1,
                n_min: 5,
                n0: 28,
                constant: ratio(19, 5),
                bound_terms: 9,
                published_threshold: 30,
                refined_threshold: Some(15),
            },
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String =
            s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_lowercase();
        match key.as_str() {
            "bo" => Ok(Family::Bo),
            "x2" => Ok(Family::X2),
            "x3" => Ok(Family::X3),
            "x18" => Ok(Family::X18),
            _ => Err(format!("unknown family {s:?}; expected one of bo, x2, x3, x18")),
        }
    }
}

/// Frozen constants of one family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyParams {
    pub family: Family,
    /// Evaluation point of the polynomial inequality.
    pub x: Rat,
    /// Smallest admissible part index: pairs satisfy `a ≥ b ≥ a_min`.
    pub a_min: usize,
    /// Sums `a + b ≤ n_min` are out of scope (or exceptional).
    pub n_min: usize,
    /// The base sweep covers `a + b ≤ n0` exhaustively; the induction step
    /// applies beyond it.
    pub n0: usize,
    /// Coefficient `c` of the logarithmic loss in the closing expression.
    pub constant: Rat,
    /// Number of binomial terms `m` kept in the closing expression.
    pub bound_terms: usize,
    /// Published start from which the closing expression is said to stay
    /// positive; the threshold scan verifies (or refutes) its minimality.
    pub published_threshold: usize,
    /// Published sharper start claimed for the untruncated intermediate
    /// expression, where one is stated; audited per-pair by the coverage
    /// audit rather than taken on faith.
    pub refined_threshold: Option<usize>,
}

impl FamilyParams {
    /// Smallest `a` in a canonical pair (`a ≥ b`) that the base sweep does
    /// not cover, i.e. from which the induction step must stand on its own.
    pub fn step_uncovered_from(&self) -> usize {
        if self.family.base_is_square() {
            self.n0 + 1
        } else {
            self.n0 / 2 + 1
        }
    }

    /// Canonical pairs `(a, b ≤ a)` at this `a` that the base sweep does not
    /// cover (empty when every pair at `a` is swept).
    pub fn uncovered_bs(&self, a: usize) -> std::ops::RangeInclusive<usize> {
        if self.family.base_is_square() {
            if a > self.n0 {
                self.a_min..=a
            } else {
                1..=0 // empty
            }
        } else {
            let lo = (self.n0 + 1).saturating_sub(a).max(self.a_min);
            lo..=a
        }
    }

    /// Values `v_n = P_n(x)` for `n = 0..=n_max`, exact. Plain partitions
    /// take the integer recurrence; other points the scalar rational one.
    pub fn values(&self, n_max: usize) -> Vec<Rat> {
        if self.x.is_one() {
            partition_numbers(n_max).into_iter().map(Rat::from_integer).collect()
        } else {
            darcais_values(&self.x, n_max)
        }
    }

    /// Whether `(a, b)` admits a step replay: `a ≥ b ≥ a_min` and
    /// `a > max(n_min − b, a_min)`, which makes the split point `k₀ ≥ 2`
    /// (and forces `a + b > n_min`).
    pub fn step_admissible(&self, a: usize, b: usize) -> bool {
        b >= self.a_min && a >= b && a > self.k0_offset(b)
    }

    fn k0_offset(&self, b: usize) -> usize {
        self.n_min.saturating_sub(b).max(self.a_min)
    }
}

/// The split point `k₀ = a − max(n_min − b, a_min) + 1` separating the
/// generic middle range of the step sum from its tail terms.
///
/// Errors unless `a ≥ b ≥ a_min` and `a + b ≥ n_min`. The value can be as
/// small as 1 on the boundary; a step replay additionally needs `k₀ ≥ 2`
/// (see [`FamilyParams::step_admissible`]).
pub fn k0(params: &FamilyParams, a: usize, b: usize) -> Result<usize, CertifyError> {
    if b < params.a_min || a < b || a + b < params.n_min {
        return Err(CertifyError::Domain(format!(
            "(a, b) = ({a}, {b}) is outside the {} split-point domain: \
             need a ≥ b ≥ {} and a + b ≥ {}",
            params.family, params.a_min, params.n_min
        )));
    }
    Ok(a + 1 - params.k0_offset(b))
}

/// Re-derive each family's loss constant `c` from exact small values,
/// confirming the frozen transcription. Returns the list of per-family
/// verdicts in `Family::ALL` order (all should be true).
pub fn verify_constant_derivation() -> Vec<(Family, bool)> {
    Family::ALL.iter().map(|&f| (f, constant_derivation_holds(f))).collect()
}

fn constant_derivation_holds(family: Family) -> bool {
    let p = family.params();
    // Smallest b·v_b over admissible b ≤ n_min (the worst factor when loss
    // terms are rescaled by 2a²/(b·v_b)).
    let values = p.values(p.n_min + 1);
    let min_bvb = (p.a_min..=p.n_min)
        .map(|b| rat(b as i64) * &values[b])
        .min()
        .expect("admissible b range is nonempty");
    match family {
        Family::Bo => {
            // c = 2 + 1 + 2·90/min(b·v_b): losses −2 from the head sum, −1
            // from the second-to-last term, and the middle-range constant 90
            // rescaled by 2/min(b·v_b) = 2/4.
            min_bvb == rat(4)
                && p.constant == rat(2) + rat(1) + rat(2) * rat(90) / &min_bvb
        }
        Family::X2 => {
            // c = 2 + 2·e/min(b·v_b) with e = −P_{1,1}(2) = 1 the sole
            // negative tail value.
            let e = -(&values[1] * &values[1] - &values[2]);
            min_bvb == rat(2) && e == rat(1) && p.constant == rat(2) + rat(2) * e / &min_bvb
        }
        Family::X3 => {
            // No negative tail terms: c = 2 exactly.
            p.constant == rat(2)
        }
        Family::X18 => {
            // c ≥ 2 + 2·e/min(b·v_b) with e = −(P_{2,1}(9/5) + P_{3,1}(9/5))
            // = 978/625 the total negative tail mass; 19/5 rounds it up.
            let p21 = &values[2] * &values[1] - &values[3];
            let p31 = &values[3] * &values[1] - &values[4];
            let e = -(p21 + p31);
            min_bvb == ratio(9, 5)
                && e == ratio(978, 625)
                && p.constant >= rat(2) + rat(2) * &e / &min_bvb
                && p.constant == ratio(19, 5)
        }
    }
}
