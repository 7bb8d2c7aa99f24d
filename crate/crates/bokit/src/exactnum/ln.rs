//! Certified enclosures of natural logarithms.
//!
//! `ln q` is computed by exact argument reduction `q = 2^k · r` with
//! `r ∈ [2/3, 4/3]`, followed by the series
//!
//! ```text
//! ln r = 2 · Σ_{i≥0} t^(2i+1) / (2i+1),   t = (r − 1)/(r + 1) ∈ [−1/5, 1/7],
//! ```
//!
//! whose truncation error is bounded by an explicit geometric series. `ln 2`
//! itself comes from the same series at `t = 1/3`. Partial sums are evaluated
//! by binary splitting so that high-precision requests stay close to linear in
//! the output size instead of paying a gcd per term.

use super::{ExactNumError, RationalInterval};
use crate::{rat, ratio, Int, Rat};
use num::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Enclosure of `ln q` with width at most `2^(−precision_bits)`.
///
/// Errors if `q ≤ 0`. Exact cases (`q` a power of two with zero reduction
/// remainder, and in particular `q = 1 → [0, 0]`) yield pointier intervals
/// than requested; that is never wrong, only better.
pub fn ln_enclosure(q: &Rat, precision_bits: u32) -> Result<RationalInterval, ExactNumError> {
    if !q.is_positive() {
        return Err(ExactNumError::NonPositiveLog(q.clone()));
    }
    if q.is_one() {
        return Ok(RationalInterval::zero());
    }

    let (k, r) = reduce_by_powers_of_two(q);
    if k == 0 {
        return Ok(ln_reduced(&r, precision_bits));
    }

    // Budget: half the width to k·ln2, half to ln r.
    let k_mag = k.unsigned_abs();
    let ln2_bits = precision_bits + 1 + ceil_log2(k_mag);
    let ln2_term = ln2_enclosure(ln2_bits).scale(&rat(k));
    let r_term = if r.is_one() {
        RationalInterval::zero()
    } else {
        ln_reduced(&r, precision_bits + 1)
    };
    Ok(&ln2_term + &r_term)
}

/// Enclosure of `ln 2` with width at most `2^(−precision_bits)`, from the
/// series at `t = 1/3`. Cached per precision: sweeps request the same handful
/// of precisions millions of times.
pub fn ln2_enclosure(precision_bits: u32) -> RationalInterval {
    static CACHE: OnceLock<Mutex<HashMap<u32, RationalInterval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&precision_bits) {
        return hit.clone();
    }
    let computed = atanh_times_two(&ratio(1, 3), precision_bits);
    cache
        .lock()
        .unwrap()
        .entry(precision_bits)
        .or_insert(computed)
        .clone()
}

/// Write `q = 2^k · r` with `r ∈ [2/3, 4/3]`, all exactly.
fn reduce_by_powers_of_two(q: &Rat) -> (i64, Rat) {
    let mut k = q.numer().bits() as i64 - q.denom().bits() as i64;
    let mut r = q * pow2(-k);
    let hi = ratio(4, 3);
    let lo = ratio(2, 3);
    while r > hi {
        r /= rat(2);
        k += 1;
    }
    while r < lo {
        r *= rat(2);
        k -= 1;
    }
    (k, r)
}

fn pow2(k: i64) -> Rat {
    if k >= 0 {
        Rat::from_integer(Int::one() << k as usize)
    } else {
        Rat::new(Int::one(), Int::one() << (-k) as usize)
    }
}

fn ceil_log2(m: u64) -> u32 {
    debug_assert!(m >= 1);
    64 - (m - 1).leading_zeros() as u32
}

/// Enclosure of `ln r` for `r ∈ [2/3, 4/3]`, width ≤ `2^(−bits)`.
fn ln_reduced(r: &Rat, bits: u32) -> RationalInterval {
    debug_assert!(r >= &ratio(2, 3) && r <= &ratio(4, 3));
    let t = (r - Rat::one()) / (r + Rat::one());
    atanh_times_two(&t, bits)
}

/// Enclosure of `2·atanh t` for `|t| ≤ 1/3`, width ≤ `2^(−bits)`.
///
/// With `|t| ≤ 2^(−e)` the remainder after `N` series terms satisfies
/// `|R_N| ≤ |t|^(2N+1) / ((2N+1)(1 − t²)) ≤ |t|^(2N+1)`, so the doubled
/// series is enclosed by its partial sum plus a one-sided error of
/// `2^(−e(2N+1)+2)` in the direction of `t`'s sign (we keep the crude two-bit
/// slack; it only makes the interval narrower than promised never wider).
fn atanh_times_two(t: &Rat, bits: u32) -> RationalInterval {
    if t.is_zero() {
        return RationalInterval::zero();
    }
    debug_assert!(t.abs() <= ratio(1, 3));

    // Largest e with |t| ≤ 2^(−e), from the integer part of 1/|t|.
    let inv_floor = t.denom() / t.numer().abs();
    let e = (inv_floor.bits() as u64).saturating_sub(1).max(1);

    let target = bits as u64 + 3;
    let mut n_terms = (target.div_ceil(e).saturating_sub(1)).div_ceil(2).max(1);
    while e * (2 * n_terms + 1) < target {
        n_terms += 1;
    }

    let xn = t.numer() * t.numer();
    let xd = t.denom() * t.denom();
    let (sum_n, sum_d) = split_sum(0, n_terms, &xn, &xd);

    // 2 · t · Σ x^i/(2i+1); BigRational::new reduces once at the end.
    let series = Rat::new(Int::from(2) * t.numer() * sum_n, t.denom() * sum_d);
    let err_exp = (e * (2 * n_terms + 1) - 2) as usize;
    let err = Rat::new(Int::one(), Int::one() << err_exp);

    if t.is_positive() {
        RationalInterval::new(series.clone(), series + err)
    } else {
        RationalInterval::new(&series - &err, series)
    }
}

/// Binary splitting of `Σ_{i=l}^{r−1} x^(i−l) / (2i+1)` as an unreduced
/// fraction, `x = xn/xd`.
fn split_sum(l: u64, r: u64, xn: &Int, xd: &Int) -> (Int, Int) {
    if r - l == 1 {
        return (Int::one(), Int::from(2 * l + 1));
    }
    let m = l + (r - l) / 2;
    let (n1, d1) = split_sum(l, m, xn, xd);
    let (n2, d2) = split_sum(m, r, xn, xd);
    let h = (m - l) as usize;
    let xnp = num::pow::pow(xn.clone(), h);
    let xdp = num::pow::pow(xd.clone(), h);
    (&n1 * &d2 * &xdp + xnp * n2 * &d1, d1 * d2 * xdp)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent `ln 2` bracket from the wholly different series
    /// `ln 2 = Σ_{k≥1} 1/(k·2^k)`, with tail `< 1/((N+1)·2^N)`.
    fn ln2_bracket_oracle(terms: usize) -> (Rat, Rat) {
        let mut s = Rat::zero();
        for k in 1..=terms {
            s += Rat::new(Int::one(), Int::from(k) * (Int::one() << k));
        }
        let tail = Rat::new(Int::one(), Int::from(terms + 1) * (Int::one() << terms));
        (s.clone(), s + tail)
    }

    fn width_bound(bits: u32) -> Rat {
        Rat::new(Int::one(), Int::one() << bits as usize)
    }

    #[test]
    fn ln2_matches_independent_series_oracle() {
        let (olo, ohi) = ln2_bracket_oracle(200);
        for bits in [8, 20, 64, 256] {
            let enc = ln2_enclosure(bits);
            assert!(enc.width() <= width_bound(bits), "width too large at {bits} bits");
            // Both intervals contain ln 2, so they must overlap.
            assert!(enc.lo() <= &ohi && &olo <= enc.hi(), "disjoint from oracle at {bits} bits");
        }
    }

    #[test]
    fn ln_one_is_exactly_zero() {
        let enc = ln_enclosure(&rat(1), 16).unwrap();
        assert!(enc.is_point() && enc.lo().is_zero());
    }

    #[test]
    fn ln_of_power_of_two_scales_ln2() {
        let enc = ln_enclosure(&rat(1024), 40).unwrap();
        let ten_ln2 = ln2_enclosure(48).scale(&rat(10));
        // Both contain ln 1024 = 10 ln 2.
        assert!(enc.lo() <= ten_ln2.hi() && ten_ln2.lo() <= enc.hi());
        assert!(enc.width() <= width_bound(40));
    }

    #[test]
    fn ln_of_reciprocal_negates() {
        let a = ln_enclosure(&ratio(7, 2), 32).unwrap();
        let b = ln_enclosure(&ratio(2, 7), 32).unwrap();
        let sum = &a + &b;
        assert!(sum.contains_zero());
        assert!(sum.width() <= width_bound(30));
    }

    #[test]
    fn widths_meet_the_contract_across_magnitudes() {
        for (n, d) in [(1i64, 999_983), (355, 113), (999_983, 1), (17, 12), (2, 3)] {
            for bits in [4u32, 12, 33, 80] {
                let enc = ln_enclosure(&ratio(n, d), bits).unwrap();
                assert!(
                    enc.width() <= width_bound(bits),
                    "ln({n}/{d}) at {bits} bits too wide"
                );
            }
        }
    }

    #[test]
    fn sign_agrees_with_argument_side_of_one() {
        let below = ln_enclosure(&ratio(99, 100), 20).unwrap();
        assert!(below.is_strictly_negative());
        let above = ln_enclosure(&ratio(101, 100), 20).unwrap();
        assert!(above.is_strictly_positive());
    }

    #[test]
    fn non_positive_arguments_are_domain_errors() {
        assert!(matches!(
            ln_enclosure(&rat(0), 8),
            Err(ExactNumError::NonPositiveLog(_))
        ));
        assert!(matches!(
            ln_enclosure(&rat(-3), 8),
            Err(ExactNumError::NonPositiveLog(_))
        ));
    }

    #[test]
    fn reduction_lands_in_the_contract_window() {
        for (n, d) in [(1i64, 3), (1000, 1), (5, 7), (123_456, 789), (1, 1_000_000)] {
            let q = ratio(n, d);
            let (k, r) = reduce_by_powers_of_two(&q);
            assert!(r >= ratio(2, 3) && r <= ratio(4, 3));
            assert_eq!(q, r * pow2(k));
        }
    }
}
