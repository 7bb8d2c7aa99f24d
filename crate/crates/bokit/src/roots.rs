//! Exact real-root isolation for rational polynomials.
//!
//! Sturm sequences over exact rationals: count distinct real roots in a
//! half-open interval `(lo, hi]`, isolate the largest real root to any
//! requested width by bisection from a Cauchy bound, certify "no roots
//! beyond t" (hence positivity beyond t for positive leading coefficient),
//! and reproduce the grid of largest real zeros of `P_a·P_b − P_{a+b}`.

use crate::darcais::{DarcaisTable, RatPoly};
use crate::{Int, Rat};
use num::{One, Signed, Zero};
use rayon::prelude::*;
use std::fmt;
use thiserror::Error;

/// Errors for root isolation.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RootsError {
    #[error("the zero polynomial has no well-defined root set")]
    ZeroPolynomial,
    #[error("isolation width must be positive, got {width}")]
    InvalidWidth { width: Rat },
}

// ---------------------------------------------------------------------------
// Sturm chains.
// ---------------------------------------------------------------------------

/// Canonical Sturm chain of the square-free part of a polynomial.
///
/// Every link is kept in primitive integer form (integer coefficients with
/// collective gcd 1, positive scaling), which controls coefficient growth
/// without changing signs. Root counts refer to *distinct* real roots of the
/// original polynomial.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    pub fn new(p: &RatPoly) -> Result<Self, RootsError> {
        if p.is_zero() {
            return Err(RootsError::ZeroPolynomial);
        }
        let head = square_free_part(p).primitive_integer_form();
        let mut chain = vec![head];
        if chain[0].degree().unwrap() >= 1 {
            chain.push(chain[0].derivative().primitive_integer_form());
            loop {
                let n = chain.len();
                let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(r.neg().primitive_integer_form());
            }
        }
        Ok(SturmChain { chain })
    }

    /// The square-free primitive polynomial heading the chain (same distinct
    /// roots as the input).
    pub fn polynomial(&self) -> &RatPoly {
        &self.chain[0]
    }

    /// Number of sign variations of the chain at `x` (zeros skipped).
    pub fn variations_at(&self, x: &Rat) -> usize {
        let mut variations = 0;
        let mut last = 0i32;
        for p in &self.chain {
            let s = sign_at(p, x);
            if s != 0 {
                if last != 0 && s != last {
                    variations += 1;
                }
                last = s;
            }
        }
        variations
    }

    /// Distinct real roots of the original polynomial in `(lo, hi]`.
    ///
    /// Endpoints are allowed to be roots: a root at `hi` counts, a root at
    /// `lo` does not. (Classic Sturm counting requires non-root endpoints;
    /// we deflate the offending linear factor first — the head polynomial is
    /// square-free, so one division per endpoint suffices.)
    pub fn count_in(&self, lo: &Rat, hi: &Rat) -> usize {
        if lo >= hi {
            return 0;
        }
        let p = &self.chain[0];
        if sign_at(p, lo) == 0 || sign_at(p, hi) == 0 {
            let mut q = p.clone();
            let mut bonus = 0;
            if sign_at(&q, lo) == 0 {
                q = q.div_rem(&linear_factor(lo)).0;
            }
            if sign_at(&q, hi) == 0 {
                q = q.div_rem(&linear_factor(hi)).0;
                bonus = 1;
            }
            if q.degree().map_or(true, |d| d == 0) {
                return bonus;
            }
            let chain = SturmChain::new(&q).expect("deflated polynomial is nonzero");
            debug_assert!(sign_at(chain.polynomial(), lo) != 0);
            debug_assert!(sign_at(chain.polynomial(), hi) != 0);
            return chain.count_in(lo, hi) + bonus;
        }
        let (va, vb) = (self.variations_at(lo), self.variations_at(hi));
        debug_assert!(va >= vb, "sign variations must not increase");
        va - vb
    }
}

fn linear_factor(root: &Rat) -> RatPoly {
    RatPoly::from_coeffs(vec![-root.clone(), Rat::one()])
}

/// Exact sign of `p(x)` as −1/0/+1, by homogeneous integer evaluation
/// (`p(n/d)·d^deg` via Horner) when the coefficients are integers.
fn sign_at(p: &RatPoly, x: &Rat) -> i32 {
    if p.is_zero() {
        return 0;
    }
    let d = p.degree().unwrap();
    if p.coeffs().iter().all(|c| c.denom().is_one()) {
        let (xn, xd) = (x.numer(), x.denom());
        let mut acc: Int = p.coeff(d).numer().clone();
        let mut dpow = Int::one();
        for i in (0..d).rev() {
            dpow *= xd;
            acc = acc * xn + p.coeff(i).numer() * &dpow;
        }
        sign_of_int(&acc)
    } else {
        let v = p.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }
}

fn sign_of_int(n: &Int) -> i32 {
    if n.is_zero() {
        0
    } else if n.is_positive() {
        1
    } else {
        -1
    }
}

fn poly_gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut a = a.primitive_integer_form();
    let mut b = b.primitive_integer_form();
    while !b.is_zero() {
        let r = a.div_rem(&b).1.primitive_integer_form();
        a = std::mem::replace(&mut b, r);
    }
    a
}

/// `p / gcd(p, p′)` — same distinct roots, all simple.
fn square_free_part(p: &RatPoly) -> RatPoly {
    let d = p.derivative();
    if d.is_zero() {
        return p.clone(); // nonzero constant
    }
    let g = poly_gcd(p, &d);
    if g.degree() == Some(0) {
        return p.clone();
    }
    let (q, r) = p.div_rem(&g);
    debug_assert!(r.is_zero(), "gcd must divide the polynomial");
    q
}

// ---------------------------------------------------------------------------
// Counting and isolation.
// ---------------------------------------------------------------------------

/// Number of distinct real roots of `p` in the half-open interval `(lo, hi]`
/// (0 if `lo ≥ hi`). Errors on the zero polynomial.
pub fn sturm_count(p: &RatPoly, lo: &Rat, hi: &Rat) -> Result<usize, RootsError> {
    Ok(SturmChain::new(p)?.count_in(lo, hi))
}

/// Total number of distinct real roots of `p`.
pub fn count_real_roots(p: &RatPoly) -> Result<usize, RootsError> {
    let chain = SturmChain::new(p)?;
    if chain.polynomial().degree() == Some(0) {
        return Ok(0);
    }
    let m = cauchy_root_bound(chain.polynomial())?;
    Ok(chain.count_in(&-m.clone(), &m))
}

/// The Cauchy bound `1 + max|cᵢ/c_deg|`: every real root `r` of `p`
/// satisfies `|r| < bound`. Returns 1 for nonzero constants (vacuous).
pub fn cauchy_root_bound(p: &RatPoly) -> Result<Rat, RootsError> {
    let d = p.degree().ok_or(RootsError::ZeroPolynomial)?;
    let lead = p.leading().unwrap().clone();
    let mut max = Rat::zero();
    for i in 0..d {
        let ratio = (p.coeff(i) / &lead).abs();
        if ratio > max {
            max = ratio;
        }
    }
    Ok(max + Rat::one())
}

/// Whether the chain's head equals the input up to degree — i.e. whether the
/// input was already square-free (every root simple).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultiplicityNote {
    /// All real roots of the polynomial are simple.
    Simple,
    /// The polynomial has repeated factors; the isolated root may be multiple.
    Unknown,
}

/// An isolating interval for a single real root: the root lies in `(lo, hi]`
/// and `hi − lo` is at most the requested width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    lo: Rat,
    hi: Rat,
    multiplicity_note: MultiplicityNote,
}

impl RootInterval {
    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(Int::from(2))
    }

    /// Whether `x` lies in the half-open enclosure `(lo, hi]`.
    pub fn contains(&self, x: &Rat) -> bool {
        *x > self.lo && *x <= self.hi
    }

    pub fn multiplicity_note(&self) -> MultiplicityNote {
        self.multiplicity_note
    }
}

impl fmt::Display for RootInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}]", self.lo, self.hi)
    }
}

/// Isolate the largest real root of `p` to an interval of width ≤ `width`.
///
/// Returns `None` when `p` has no real roots (including nonzero constants).
/// The enclosure is found by bisection from the Cauchy bound, maintaining
/// "the largest root lies in `(lo, hi]` and is the only root there" at exit.
pub fn largest_real_root(p: &RatPoly, width: &Rat) -> Result<Option<RootInterval>, RootsError> {
    if !width.is_positive() {
        return Err(RootsError::InvalidWidth { width: width.clone() });
    }
    let chain = SturmChain::new(p)?;
    let sf = chain.polynomial();
    if sf.degree() == Some(0) {
        return Ok(None);
    }
    let multiplicity_note = if sf.degree() == p.degree() {
        MultiplicityNote::Simple
    } else {
        MultiplicityNote::Unknown
    };
    let bound = cauchy_root_bound(sf)?;
    let mut lo = -bound.clone();
    let mut hi = bound;
    let mut count = chain.count_in(&lo, &hi);
    if count == 0 {
        return Ok(None);
    }
    let two = Rat::from_integer(Int::from(2));
    while count > 1 || &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        // (lo, hi] = (lo, mid] ⊔ (mid, hi] exactly, so counts split additively.
        let upper = chain.count_in(&mid, &hi);
        if upper > 0 {
            lo = mid;
            count = upper;
        } else {
            hi = mid;
        }
    }
    Ok(Some(RootInterval { lo, hi, multiplicity_note }))
}

/// Certifies `p(x) > 0` for every `x > from`: positive leading coefficient
/// and no real roots in `(from, ∞)`.
pub fn positive_beyond(p: &RatPoly, from: &Rat) -> Result<bool, RootsError> {
    let chain = SturmChain::new(p)?;
    if !p.leading().unwrap().is_positive() {
        return Ok(false);
    }
    if chain.polynomial().degree() == Some(0) {
        return Ok(true);
    }
    let bound = cauchy_root_bound(chain.polynomial())?;
    if bound <= *from {
        return Ok(true);
    }
    Ok(chain.count_in(from, &bound) == 0)
}

/// Whether `p` is strictly increasing on `[from, ∞)`: the derivative is
/// non-negative at `from`, has no real root beyond `from`, and has positive
/// leading coefficient (so it stays positive). Constants and the zero
/// polynomial are not increasing.
pub fn is_increasing_on(p: &RatPoly, from: &Rat) -> bool {
    let d = p.derivative();
    if d.is_zero() {
        return false;
    }
    if d.eval(from).is_negative() || !d.leading().unwrap().is_positive() {
        return false;
    }
    positive_beyond_or_zero_at(&d, from)
}

/// No roots of `d` strictly beyond `from` (a root at `from` itself is fine).
fn positive_beyond_or_zero_at(d: &RatPoly, from: &Rat) -> bool {
    let chain = SturmChain::new(d).expect("nonzero by caller");
    if chain.polynomial().degree() == Some(0) {
        return true;
    }
    let bound = cauchy_root_bound(chain.polynomial()).expect("nonzero");
    if bound <= *from {
        return true;
    }
    chain.count_in(from, &bound) == 0
}

// ---------------------------------------------------------------------------
// The grid of largest real zeros of P_a·P_b − P_{a+b}.
// ---------------------------------------------------------------------------

/// One cell of the root grid: the largest real zero of `P_a·P_b − P_{a+b}`,
/// isolated to the requested width, plus its one-decimal rounding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootTableEntry {
    pub a: usize,
    pub b: usize,
    pub interval: RootInterval,
    /// `round_half_up_1dp(midpoint)` — the printable one-decimal value.
    pub rounded: Rat,
}

/// Largest real zeros of `P_a·P_b − P_{a+b}` for all `1 ≤ a, b ≤ maxdim`,
/// row-major by `(a, b)`. Cells are symmetric in `(a, b)`; the lower
/// triangle is computed (in parallel) and mirrored exactly.
pub fn table3(maxdim: usize, width: &Rat) -> Result<Vec<RootTableEntry>, RootsError> {
    assert!(maxdim >= 1, "grid dimension must be at least 1");
    if !width.is_positive() {
        return Err(RootsError::InvalidWidth { width: width.clone() });
    }
    let mut table = DarcaisTable::new();
    table.ensure(2 * maxdim);
    let pairs: Vec<(usize, usize)> =
        (1..=maxdim).flat_map(|a| (1..=a).map(move |b| (a, b))).collect();
    let lower: Vec<RootTableEntry> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let poly = table.cached(a).unwrap().mul(table.cached(b).unwrap());
            let poly = poly.sub(table.cached(a + b).unwrap());
            let interval = largest_real_root(&poly, width)?
                .expect("P_a·P_b − P_{a+b} always has the real root 0");
            let rounded = round_half_up_1dp(&interval.midpoint());
            Ok(RootTableEntry { a, b, interval, rounded })
        })
        .collect::<Result<_, RootsError>>()?;
    let cell = |a: usize, b: usize| -> &RootTableEntry {
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        // lower triangle is stored as consecutive rows of lengths 1, 2, …
        &lower[hi * (hi - 1) / 2 + lo - 1]
    };
    let mut out = Vec::with_capacity(maxdim * maxdim);
    for a in 1..=maxdim {
        for b in 1..=maxdim {
            let src = cell(a, b);
            out.push(RootTableEntry {
                a,
                b,
                interval: src.interval.clone(),
                rounded: src.rounded.clone(),
            });
        }
    }
    Ok(out)
}

/// Round to one decimal place, halves toward +∞: `⌊10r + 1/2⌋ / 10`.
pub fn round_half_up_1dp(r: &Rat) -> Rat {
    let ten = Rat::from_integer(Int::from(10));
    let half = Rat::new(Int::one(), Int::from(2));
    (r * &ten + half).floor() / ten
}

/// Format a one-decimal rational (a multiple of 1/10) as e.g. "1.7".
pub fn format_1dp(r: &Rat) -> String {
    let scaled = r * Rat::from_integer(Int::from(10));
    assert!(scaled.is_integer(), "value {r} is not a multiple of 1/10");
    let n = scaled.to_integer();
    let sign = if n.is_negative() { "-" } else { "" };
    let abs = n.abs();
    let (q, r) = (abs.clone() / Int::from(10), abs % Int::from(10));
    format!("{sign}{q}.{r}")
}

/// CSV export: header plus one `a,b,lo,hi,rounded` row per cell, with exact
/// rational endpoints.
pub fn table3_csv(entries: &[RootTableEntry]) -> String {
    let mut out = String::from("a,b,lo,hi,rounded\n");
    for e in entries {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            e.a,
            e.b,
            e.interval.lo(),
            e.interval.hi(),
            format_1dp(&e.rounded)
        ));
    }
    out
}

/// Markdown export mirroring the square grid layout (rows `a`, columns `b`).
pub fn table3_markdown(entries: &[RootTableEntry], maxdim: usize) -> String {
    assert_eq!(entries.len(), maxdim * maxdim, "entries must form the full grid");
    let mut out = String::from("| a\\b |");
    for b in 1..=maxdim {
        out.push_str(&format!(" {b} |"));
    }
    out.push('\n');
    out.push_str("|---|");
    out.push_str(&"---|".repeat(maxdim));
    out.push('\n');
    for a in 1..=maxdim {
        out.push_str(&format!("| {a} |"));
        for b in 1..=maxdim {
            let e = &entries[(a - 1) * maxdim + (b - 1)];
            out.push_str(&format!(" {} |", format_1dp(&e.rounded)));
        }
        out.push('\n');
    }
    out
}

/// Published one-decimal values of the 14×14 grid (row `a`, column `b`),
/// reproduced for cross-checking a freshly computed grid.
pub const PUBLISHED_GRID_1DP: [[&str; 14]; 14] = [
    ["3.0", "2.0", "2.0", "1.7", "1.7", "1.6", "1.6", "1.5", "1.5", "1.4", "1.5", "1.4", "1.4", "1.4"],
    ["2.0", "1.4", "1.2", "1.1", "1.1", "1.0", "1.0", "0.9", "0.9", "0.9", "0.9", "0.9", "0.9", "0.8"],
    ["2.0", "1.2", "1.2", "1.0", "1.0", "0.9", "0.9", "0.8", "0.9", "0.8", "0.8", "0.8", "0.8", "0.8"],
    ["1.7", "1.1", "1.0", "0.9", "0.9", "0.8", "0.8", "0.7", "0.7", "0.7", "0.7", "0.6", "0.6", "0.6"],
    ["1.7", "1.1", "1.0", "0.9", "0.9", "0.7", "0.8", "0.7", "0.7", "0.7", "0.7", "0.6", "0.7", "0.6"],
    ["1.6", "1.0", "0.9", "0.8", "0.7", "0.7", "0.7", "0.6", "0.6", "0.6", "0.6", "0.5", "0.5", "0.5"],
    ["1.6", "1.0", "0.9", "0.8", "0.8", "0.7", "0.7", "0.6", "0.6", "0.6", "0.6", "0.5", "0.6", "0.5"],
    ["1.5", "0.9", "0.8", "0.7", "0.7", "0.6", "0.6", "0.6", "0.6", "0.5", "0.5", "0.5", "0.5", "0.5"],
    ["1.5", "0.9", "0.9", "0.7", "0.7", "0.6", "0.6", "0.6", "0.6", "0.5", "0.5", "0.5", "0.5", "0.5"],
    ["1.4", "0.9", "0.8", "0.7", "0.7", "0.6", "0.6", "0.5", "0.5", "0.5", "0.5", "0.5", "0.5", "0.4"],
    ["1.5", "0.9", "0.8", "0.7", "0.7", "0.6", "0.6", "0.5", "0.5", "0.5", "0.5", "0.5", "0.5", "0.4"],
    ["1.4", "0.9", "0.8", "0.6", "0.6", "0.5", "0.5", "0.5", "0.5", "0.5", "0.5", "0.4", "0.4", "0.4"],
    ["1.4", "0.9", "0.8", "0.6", "0.7", "0.5", "0.6", "0.5", "0.5", "0.5", "0.5", "0.4", "0.4", "0.4"],
    ["1.4", "0.8", "0.8", "0.6", "0.6", "0.5", "0.5", "0.5", "0.5", "0.4", "0.4", "0.4", "0.4", "0.4"],
];

/// Outcome of comparing a computed grid against [`PUBLISHED_GRID_1DP`].
///
/// Exact one-decimal agreement counts as a match; a difference of one final
/// ulp (0.1) is flagged separately — a value near a rounding boundary can
/// legitimately round the other way — and anything larger is a mismatch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridComparison {
    pub matches: usize,
    pub one_ulp: Vec<(usize, usize)>,
    pub mismatches: Vec<(usize, usize)>,
}

impl GridComparison {
    /// No disagreement beyond one final ulp.
    pub fn acceptable(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn tenths(s: &str) -> i64 {
    let (whole, frac) = s.split_once('.').expect("one-decimal literal");
    let sign = if whole.starts_with('-') { -1 } else { 1 };
    let whole: i64 = whole.parse().expect("integer part");
    let frac: i64 = frac.parse().expect("tenths digit");
    whole * 10 + sign * frac
}

/// Compare a computed grid against the published one-decimal values on
/// their overlap (the published table covers `a, b ≤ 14`). The entries must
/// form a full square grid, as produced by [`table3`].
pub fn compare_with_published(entries: &[RootTableEntry]) -> GridComparison {
    let dim = (entries.len() as f64).sqrt().round() as usize;
    assert_eq!(dim * dim, entries.len(), "entries must form a square grid");
    let side = dim.min(14);
    let mut cmp = GridComparison { matches: 0, one_ulp: Vec::new(), mismatches: Vec::new() };
    for a in 1..=side {
        for b in 1..=side {
            let e = &entries[(a - 1) * dim + (b - 1)];
            let got = tenths(&format_1dp(&e.rounded));
            let want = tenths(PUBLISHED_GRID_1DP[a - 1][b - 1]);
            match (got - want).abs() {
                0 => cmp.matches += 1,
                1 => cmp.one_ulp.push((a, b)),
                _ => cmp.mismatches.push((a, b)),
            }
        }
    }
    cmp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::darcais::bo_poly;
    use crate::{rat, ratio};

    #[test]
    fn published_grid_is_symmetric_and_one_decimal() {
        for a in 0..14 {
            for b in 0..14 {
                let v = tenths(PUBLISHED_GRID_1DP[a][b]);
                assert!((4..=30).contains(&v), "({a},{b}) out of range: {v}");
                assert_eq!(
                    PUBLISHED_GRID_1DP[a][b], PUBLISHED_GRID_1DP[b][a],
                    "grid must be symmetric at ({a},{b})"
                );
            }
        }
        assert_eq!(tenths("3.0"), 30);
        assert_eq!(tenths("0.4"), 4);
    }

    #[test]
    fn coarse_grid_agrees_with_published_to_one_ulp() {
        let entries = table3(14, &ratio(1, 100)).unwrap();
        let cmp = compare_with_published(&entries);
        assert!(
            cmp.acceptable(),
            "one-decimal mismatches beyond a single ulp: {:?}",
            cmp.mismatches
        );
        assert!(cmp.matches >= 180, "only {} of 196 matched", cmp.matches);
    }

    fn poly(pairs: &[(i64, i64)]) -> RatPoly {
        RatPoly::from_coeffs(pairs.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    #[test]
    fn counts_match_known_root_sets() {
        // x(x−3)/2 has roots {0, 3}.
        let p = bo_poly(1, 1);
        assert_eq!(sturm_count(&p, &rat(-1), &rat(4)).unwrap(), 2);
        assert_eq!(sturm_count(&p, &rat(0), &rat(3)).unwrap(), 1); // 0 excluded, 3 included
        assert_eq!(sturm_count(&p, &rat(-1), &rat(0)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &rat(3), &rat(10)).unwrap(), 0);
        assert_eq!(sturm_count(&p, &rat(4), &rat(2)).unwrap(), 0); // empty interval

        // x² + 1 has no real roots.
        let q = poly(&[(1, 1), (0, 1), (1, 1)]);
        assert_eq!(sturm_count(&q, &rat(-10), &rat(10)).unwrap(), 0);
        assert_eq!(count_real_roots(&q).unwrap(), 0);

        // x(x²−4)/3 has roots {−2, 0, 2}.
        let r = bo_poly(2, 1);
        assert_eq!(sturm_count(&r, &ratio(1, 2), &rat(3)).unwrap(), 1);
        assert_eq!(count_real_roots(&r).unwrap(), 3);

        assert_eq!(sturm_count(&RatPoly::zero(), &rat(0), &rat(1)), Err(RootsError::ZeroPolynomial));
    }

    #[test]
    fn repeated_roots_are_counted_once() {
        // (x−1)³
        let p = poly(&[(-1, 1), (3, 1), (-3, 1), (1, 1)]);
        assert_eq!(sturm_count(&p, &rat(0), &rat(2)).unwrap(), 1);
        assert_eq!(count_real_roots(&p).unwrap(), 1);
        let root = largest_real_root(&p, &ratio(1, 100)).unwrap().unwrap();
        assert!(root.contains(&rat(1)));
        assert_eq!(root.multiplicity_note(), MultiplicityNote::Unknown);
    }

    #[test]
    fn count_is_additive_across_a_split_point() {
        let p = bo_poly(3, 2); // degree 5, several real roots
        let (lo, hi) = (rat(-6), rat(6));
        let total = sturm_count(&p, &lo, &hi).unwrap();
        for mid in [rat(-1), rat(0), ratio(1, 3), rat(1), rat(2)] {
            let left = sturm_count(&p, &lo, &mid).unwrap();
            let right = sturm_count(&p, &mid, &hi).unwrap();
            assert_eq!(left + right, total, "split at {mid}");
        }
    }

    #[test]
    fn largest_root_isolation_hits_known_roots() {
        let w = ratio(1, 10_000);
        let r11 = largest_real_root(&bo_poly(1, 1), &w).unwrap().unwrap();
        assert!(r11.contains(&rat(3)), "largest zero of P_1·P_1 − P_2 is 3, got {r11}");
        assert!(r11.width() <= w);
        assert_eq!(r11.multiplicity_note(), MultiplicityNote::Simple);

        let r21 = largest_real_root(&bo_poly(2, 1), &w).unwrap().unwrap();
        assert!(r21.contains(&rat(2)), "largest zero of P_2·P_1 − P_3 is 2, got {r21}");

        // No real roots → None; constants → None; zero → error.
        assert!(largest_real_root(&poly(&[(1, 1), (0, 1), (1, 1)]), &w).unwrap().is_none());
        assert!(largest_real_root(&RatPoly::one(), &w).unwrap().is_none());
        assert!(largest_real_root(&RatPoly::zero(), &w).is_err());
        assert!(matches!(
            largest_real_root(&RatPoly::x(), &rat(0)),
            Err(RootsError::InvalidWidth { .. })
        ));
    }

    #[test]
    fn positivity_beyond_a_point_tracks_the_largest_root() {
        let p = bo_poly(1, 1); // largest root exactly 3
        assert!(positive_beyond(&p, &rat(3)).unwrap());
        assert!(positive_beyond(&p, &ratio(31, 10)).unwrap());
        assert!(!positive_beyond(&p, &ratio(29, 10)).unwrap());
        assert!(positive_beyond(&poly(&[(1, 1), (0, 1), (1, 1)]), &rat(-100)).unwrap());
        assert!(!positive_beyond(&poly(&[(0, 1), (-1, 1)]), &rat(0)).unwrap()); // −x
    }

    #[test]
    fn monotonicity_on_a_ray_is_detected() {
        assert!(is_increasing_on(&bo_poly(2, 1), &ratio(9, 5)));
        assert!(is_increasing_on(&bo_poly(3, 1), &ratio(9, 5)));
        assert!(!is_increasing_on(&poly(&[(0, 1), (-1, 1)]), &rat(0))); // −x
        assert!(is_increasing_on(&poly(&[(0, 1), (0, 1), (0, 1), (1, 1)]), &rat(0))); // x³
        assert!(!is_increasing_on(&poly(&[(0, 1), (0, 1), (1, 1)]), &rat(-1))); // x² from −1
        assert!(is_increasing_on(&poly(&[(0, 1), (0, 1), (1, 1)]), &rat(0))); // x² from 0
        assert!(!is_increasing_on(&RatPoly::one(), &rat(0)));
        assert!(!is_increasing_on(&RatPoly::zero(), &rat(0)));
    }

    #[test]
    fn root_grid_is_symmetric_and_matches_corner_cells() {
        let entries = table3(3, &ratio(1, 1000)).unwrap();
        assert_eq!(entries.len(), 9);
        let at = |a: usize, b: usize| &entries[(a - 1) * 3 + (b - 1)];
        assert!(at(1, 1).interval.contains(&rat(3)));
        assert!(at(2, 1).interval.contains(&rat(2)));
        for a in 1..=3 {
            for b in 1..=3 {
                assert_eq!(at(a, b).interval, at(b, a).interval);
                assert_eq!(at(a, b).rounded, at(b, a).rounded);
            }
        }
        assert_eq!(format_1dp(&at(1, 1).rounded), "3.0");
        assert_eq!(format_1dp(&at(2, 1).rounded), "2.0");

        // Determinism: a second run reproduces the same entries exactly.
        let again = table3(3, &ratio(1, 1000)).unwrap();
        assert_eq!(entries, again);
    }

    #[test]
    fn rounding_is_half_up_at_one_decimal() {
        assert_eq!(round_half_up_1dp(&ratio(1, 4)), ratio(3, 10)); // 0.25 → 0.3
        assert_eq!(round_half_up_1dp(&ratio(24, 100)), ratio(2, 10));
        assert_eq!(round_half_up_1dp(&ratio(-1, 4)), ratio(-2, 10)); // −0.25 → −0.2 (toward +∞)
        assert_eq!(round_half_up_1dp(&rat(3)), rat(3));
        assert_eq!(format_1dp(&ratio(17, 10)), "1.7");
        assert_eq!(format_1dp(&rat(2)), "2.0");
        assert_eq!(format_1dp(&ratio(-3, 10)), "-0.3");
    }

    #[test]
    fn exports_have_expected_shape() {
        let entries = table3(2, &ratio(1, 100)).unwrap();
        let csv = table3_csv(&entries);
        assert!(csv.starts_with("a,b,lo,hi,rounded\n"));
        assert_eq!(csv.lines().count(), 5);
        let md = table3_markdown(&entries, 2);
        assert!(md.contains("| a\\b | 1 | 2 |"));
        assert!(md.contains("3.0"));
    }
}
