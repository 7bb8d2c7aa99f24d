//! The divisor-sum polynomial family `P_n` and exact rational polynomials.
//!
//! `P_0 = 1` and `P_n(x) = (x/n) · Σ_{k=1}^{n} σ(k) · P_{n−k}(x)`. `P_n` has
//! degree `n`, leading coefficient `1/n!`, zero constant term for `n ≥ 1`,
//! and non-negative coefficients; its value at a positive integer `k` is the
//! k-colored partition number of `n`. Two derived families drive the
//! inequality work:
//!
//! * `bo_poly(a, b) = P_a·P_b − P_{a+b}`
//! * `delta_poly(a, b) = P_{a−1}·P_{b+1} − P_a·P_b` for `a > b ≥ 0`

use crate::partitions::{binomial, SigmaTable};
use crate::{Int, Rat};
use num::{Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::{self, BufRead, Write};
use thiserror::Error;

/// Errors for polynomial-family construction.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DarcaisError {
    #[error("delta_poly requires a > b ≥ 0, got a = {a}, b = {b}")]
    DeltaDomain { a: usize, b: usize },
    #[error("lower bound requires a non-negative base point, got {x}")]
    NegativeBase { x: Rat },
}

// ---------------------------------------------------------------------------
// Dense exact rational polynomials.
// ---------------------------------------------------------------------------

/// Dense polynomial with exact rational coefficients, lowest degree first.
/// Trailing zeros are trimmed; the zero polynomial stores no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

/// Degree above which multiplication switches from schoolbook to Karatsuba.
const KARATSUBA_ABOVE_DEGREE: usize = 64;

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly { coeffs: vec![Rat::one()] }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        RatPoly { coeffs: vec![Rat::zero(), Rat::one()] }
    }

    /// From `c_0, c_1, …` (lowest degree first); trailing zeros trimmed.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = RatPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero beyond the stored degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &RatPoly) -> RatPoly {
        let mut out = vec![Rat::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        RatPoly::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &RatPoly) -> RatPoly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, f: &Rat) -> RatPoly {
        if f.is_zero() {
            return RatPoly::zero();
        }
        RatPoly { coeffs: self.coeffs.iter().map(|c| c * f).collect() }
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        RatPoly { coeffs }
    }

    /// Product; schoolbook up to degree 64, Karatsuba above.
    pub fn mul(&self, rhs: &RatPoly) -> RatPoly {
        RatPoly::from_coeffs(mul_slices(&self.coeffs, &rhs.coeffs))
    }

    /// Horner evaluation at an exact rational point.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> RatPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(Int::from(i)))
            .collect();
        RatPoly::from_coeffs(coeffs)
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    /// Panics if `d` is zero.
    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead_inv = Rat::one() / d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() * &lead_inv;
            if !factor.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let delta = dc * &factor;
                    rem[k + i] -= delta;
                }
                quot[k] = factor;
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (RatPoly::from_coeffs(quot), RatPoly::from_coeffs(rem))
    }

    /// A positive rational multiple of `self` with integer coefficients whose
    /// collective gcd is 1. Same roots, same sign everywhere — the form the
    /// Sturm machinery prefers, since it caps coefficient growth.
    pub fn primitive_integer_form(&self) -> RatPoly {
        if self.is_zero() {
            return RatPoly::zero();
        }
        let mut den_lcm = Int::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = Int::zero();
        for c in &self.coeffs {
            num_gcd = num_gcd.gcd(&(c.numer() * &den_lcm / c.denom()));
        }
        debug_assert!(num_gcd.is_positive());
        let factor = Rat::new(den_lcm, num_gcd);
        self.scale(&factor)
    }
}

fn mul_slices(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().max(b.len()) <= KARATSUBA_ABOVE_DEGREE + 1 {
        mul_schoolbook(a, b)
    } else {
        mul_karatsuba(a, b)
    }
}

fn mul_schoolbook(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    out
}

fn mul_karatsuba(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let m = a.len().max(b.len()).div_ceil(2);
    let (a0, a1) = a.split_at(a.len().min(m));
    let (b0, b1) = b.split_at(b.len().min(m));

    let z0 = mul_slices(a0, b0);
    let z2 = mul_slices(a1, b1);
    let a01 = add_slices(a0, a1);
    let b01 = add_slices(b0, b1);
    let mut z1 = mul_slices(&a01, &b01);
    sub_assign_slices(&mut z1, &z0);
    sub_assign_slices(&mut z1, &z2);

    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, c) in z0.into_iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in z1.into_iter().enumerate() {
        if !c.is_zero() {
            out[i + m] += c;
        }
    }
    for (i, c) in z2.into_iter().enumerate() {
        if !c.is_zero() {
            out[i + 2 * m] += c;
        }
    }
    out
}

fn add_slices(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    out
}

fn sub_assign_slices(a: &mut Vec<Rat>, b: &[Rat]) {
    if a.len() < b.len() {
        a.resize(b.len(), Rat::zero());
    }
    for (i, c) in b.iter().enumerate() {
        a[i] -= c;
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let coeff_is_one = mag.is_one();
            match (i, coeff_is_one) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "({mag})")?,
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// The P_n family.
// ---------------------------------------------------------------------------

/// Memoized prefix `P_0, …, P_n` of the family, extended on demand.
///
/// Not internally synchronized: build (or load) the prefix you need, then
/// share immutable references freely across threads.
#[derive(Debug, Clone, Default)]
pub struct DarcaisTable {
    polys: Vec<RatPoly>,
}

impl DarcaisTable {
    pub fn new() -> Self {
        DarcaisTable { polys: vec![RatPoly::one()] }
    }

    /// Build the prefix up to `n` immediately.
    pub fn with_capacity(n: usize) -> Self {
        let mut t = Self::new();
        t.ensure(n);
        t
    }

    pub fn max_n(&self) -> usize {
        self.polys.len() - 1
    }

    /// Extend the table so `P_0..=P_n` are available.
    pub fn ensure(&mut self, n: usize) {
        if n < self.polys.len() {
            return;
        }
        let sigma = SigmaTable::up_to(n);
        for m in self.polys.len()..=n {
            let mut acc = vec![Rat::zero(); m]; // degrees 0..m−1 before the x shift
            for k in 1..=m {
                let s = Rat::from_integer(sigma.get(k).expect("sigma in range").clone());
                for (i, c) in self.polys[m - k].coeffs().iter().enumerate() {
                    acc[i] += c * &s;
                }
            }
            let inv_m = Rat::new(Int::one(), Int::from(m));
            let poly = RatPoly::from_coeffs(acc).shift_up(1).scale(&inv_m);
            debug_assert_eq!(poly.degree(), Some(m));
            self.polys.push(poly);
        }
    }

    /// `P_n`, extending the table if needed.
    pub fn poly(&mut self, n: usize) -> &RatPoly {
        self.ensure(n);
        &self.polys[n]
    }

    /// `P_n` if already present (no extension).
    pub fn cached(&self, n: usize) -> Option<&RatPoly> {
        self.polys.get(n)
    }

    /// `P_a·P_b − P_{a+b}`: positive values at `x` certify
    /// `p_{−x}(a)·p_{−x}(b) > p_{−x}(a+b)`. The leading coefficient
    /// `1/(a!b!) − 1/(a+b)!` is checked positive for `a, b ≥ 1`.
    pub fn bo_poly(&mut self, a: usize, b: usize) -> RatPoly {
        self.ensure(a + b);
        let prod = self.polys[a].mul(&self.polys[b]);
        let diff = prod.sub(&self.polys[a + b]);
        if a >= 1 && b >= 1 {
            debug_assert_eq!(diff.degree(), Some(a + b));
            assert!(
                diff.leading().is_some_and(Signed::is_positive),
                "leading coefficient of P_{a}·P_{b} − P_{} must be positive",
                a + b
            );
        }
        diff
    }

    /// `P_{a−1}·P_{b+1} − P_a·P_b` for `a > b ≥ 0`.
    pub fn delta_poly(&mut self, a: usize, b: usize) -> Result<RatPoly, DarcaisError> {
        if a <= b {
            return Err(DarcaisError::DeltaDomain { a, b });
        }
        self.ensure(a.max(b + 1));
        let left = self.polys[a - 1].mul(&self.polys[b + 1]);
        let right = self.polys[a].mul(&self.polys[b]);
        Ok(left.sub(&right))
    }
}

/// `P_n` as a one-off (builds a fresh prefix; use [`DarcaisTable`] in loops).
pub fn darcais_poly(n: usize) -> RatPoly {
    let mut t = DarcaisTable::new();
    t.poly(n).clone()
}

/// `P_a·P_b − P_{a+b}` as a one-off.
pub fn bo_poly(a: usize, b: usize) -> RatPoly {
    DarcaisTable::new().bo_poly(a, b)
}

/// `P_{a−1}·P_{b+1} − P_a·P_b` as a one-off.
pub fn delta_poly(a: usize, b: usize) -> Result<RatPoly, DarcaisError> {
    DarcaisTable::new().delta_poly(a, b)
}

/// Values `P_0(x), …, P_{n_max}(x)` at a fixed rational `x`, by running the
/// defining recurrence on scalars instead of polynomials. Much cheaper than
/// building polynomials when only values are needed, and an independent
/// cross-check for `RatPoly::eval`.
pub fn darcais_values(x: &Rat, n_max: usize) -> Vec<Rat> {
    let sigma = SigmaTable::up_to(n_max);
    let mut vals = Vec::with_capacity(n_max + 1);
    vals.push(Rat::one());
    for n in 1..=n_max {
        let mut acc = Rat::zero();
        for k in 1..=n {
            let s = Rat::from_integer(sigma.get(k).expect("sigma in range").clone());
            acc += s * &vals[n - k];
        }
        vals.push(acc * x / Rat::from_integer(Int::from(n)));
    }
    vals
}

/// The exact lower bound `Σ_{k=1}^{m} C(n−1, k−1) · x^k / k! ≤ P_n(x)`
/// for `x ≥ 0` (errors on negative `x`, where the bound does not hold).
pub fn laguerre_lower_bound(n: usize, m: usize, x: &Rat) -> Result<Rat, DarcaisError> {
    if x.is_negative() {
        return Err(DarcaisError::NegativeBase { x: x.clone() });
    }
    assert!(n >= 1 && m >= 1, "laguerre_lower_bound needs n ≥ 1 and m ≥ 1");
    let mut acc = Rat::zero();
    let mut factorial = Int::one();
    let mut x_pow = Rat::one();
    for k in 1..=m {
        factorial *= Int::from(k);
        x_pow *= x;
        acc += Rat::from_integer(binomial(n - 1, k - 1)) * &x_pow
            / Rat::from_integer(factorial.clone());
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Versioned polynomial cache file (JSON lines).
// ---------------------------------------------------------------------------

const POLY_CACHE_FORMAT: &str = "bokit-poly-cache";
const POLY_CACHE_VERSION: u32 = 1;

/// Errors for the polynomial cache file format.
#[derive(Debug, Error)]
pub enum PolyCacheError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("unsupported cache format {format:?} version {version}")]
    UnsupportedFormat { format: String, version: u32 },
    #[error("cache rows out of order: expected n = {expected}, found n = {found}")]
    RowOrder { expected: usize, found: usize },
    #[error("cached P_{n} fails a family invariant: {msg}")]
    Integrity { n: usize, msg: String },
}

#[derive(Serialize, Deserialize)]
struct CacheHeader {
    format: String,
    version: u32,
}

#[derive(Serialize, Deserialize)]
struct CacheRow {
    n: usize,
    /// `[numerator, denominator]` decimal-string pairs, lowest degree first.
    coeffs: Vec<[String; 2]>,
}

impl DarcaisTable {
    /// Write the cached prefix, one polynomial per line, after a header line.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<(), PolyCacheError> {
        let header =
            CacheHeader { format: POLY_CACHE_FORMAT.into(), version: POLY_CACHE_VERSION };
        writeln!(w, "{}", serde_json::to_string(&header).expect("header serialization"))?;
        for (n, p) in self.polys.iter().enumerate() {
            let coeffs = (0..=p.degree().unwrap_or(0))
                .map(|i| {
                    let c = p.coeff(i);
                    [c.numer().to_string(), c.denom().to_string()]
                })
                .collect();
            let row = CacheRow { n, coeffs };
            writeln!(w, "{}", serde_json::to_string(&row).expect("row serialization"))?;
        }
        Ok(())
    }

    /// Read a cache written by [`DarcaisTable::write_jsonl`], verifying the
    /// header, row order, and cheap per-polynomial invariants (degree,
    /// leading coefficient `1/n!`, zero constant term).
    pub fn read_jsonl<R: BufRead>(r: R) -> Result<Self, PolyCacheError> {
        let mut lines = r.lines();
        let header_line = lines
            .next()
            .ok_or_else(|| PolyCacheError::Malformed { line: 1, msg: "empty file".into() })??;
        let header: CacheHeader = serde_json::from_str(&header_line)
            .map_err(|e| PolyCacheError::Malformed { line: 1, msg: e.to_string() })?;
        if header.format != POLY_CACHE_FORMAT || header.version != POLY_CACHE_VERSION {
            return Err(PolyCacheError::UnsupportedFormat {
                format: header.format,
                version: header.version,
            });
        }
        let mut polys: Vec<RatPoly> = Vec::new();
        let mut factorial = Int::one();
        for (idx, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let row: CacheRow = serde_json::from_str(&line)
                .map_err(|e| PolyCacheError::Malformed { line: idx + 2, msg: e.to_string() })?;
            let n = polys.len();
            if row.n != n {
                return Err(PolyCacheError::RowOrder { expected: n, found: row.n });
            }
            let mut coeffs = Vec::with_capacity(row.coeffs.len());
            for [num, den] in &row.coeffs {
                let numer: Int = num.parse().map_err(|e| PolyCacheError::Malformed {
                    line: idx + 2,
                    msg: format!("bad numerator {num:?}: {e}"),
                })?;
                let denom: Int = den.parse().map_err(|e| PolyCacheError::Malformed {
                    line: idx + 2,
                    msg: format!("bad denominator {den:?}: {e}"),
                })?;
                if !denom.is_positive() {
                    return Err(PolyCacheError::Malformed {
                        line: idx + 2,
                        msg: format!("non-positive denominator {den}"),
                    });
                }
                coeffs.push(Rat::new(numer, denom));
            }
            let poly = RatPoly::from_coeffs(coeffs);
            if n > 0 {
                factorial *= Int::from(n);
            }
            if poly.degree() != Some(n) {
                return Err(PolyCacheError::Integrity { n, msg: "wrong degree".into() });
            }
            if poly.leading() != Some(&Rat::new(Int::one(), factorial.clone())) {
                return Err(PolyCacheError::Integrity {
                    n,
                    msg: "leading coefficient is not 1/n!".into(),
                });
            }
            if n >= 1 && !poly.coeff(0).is_zero() {
                return Err(PolyCacheError::Integrity {
                    n,
                    msg: "non-zero constant term".into(),
                });
            }
            polys.push(poly);
        }
        if polys.is_empty() {
            return Err(PolyCacheError::Malformed { line: 2, msg: "no rows".into() });
        }
        Ok(DarcaisTable { polys })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{colored_partition_numbers, partition_numbers};
    use crate::{rat, ratio};

    fn poly(pairs: &[(i64, i64)]) -> RatPoly {
        RatPoly::from_coeffs(pairs.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    #[test]
    fn first_family_members_are_the_classical_ones() {
        let mut t = DarcaisTable::new();
        assert_eq!(t.poly(0), &RatPoly::one());
        assert_eq!(t.poly(1), &RatPoly::x());
        // P_2 = x²/2 + 3x/2
        assert_eq!(t.poly(2), &poly(&[(0, 1), (3, 2), (1, 2)]));
        // P_3 = x³/6 + 3x²/2 + 4x/3
        assert_eq!(t.poly(3), &poly(&[(0, 1), (4, 3), (3, 2), (1, 6)]));
        // P_4 = x⁴/24 + 3x³/4 + 59x²/24 + 7x/4
        assert_eq!(t.poly(4), &poly(&[(0, 1), (7, 4), (59, 24), (3, 4), (1, 24)]));
    }

    #[test]
    fn family_invariants_hold_along_the_prefix() {
        let mut t = DarcaisTable::new();
        t.ensure(40);
        let mut factorial = Int::one();
        for n in 1..=40usize {
            factorial *= Int::from(n);
            let p = t.cached(n).unwrap();
            assert_eq!(p.degree(), Some(n));
            assert_eq!(p.leading().unwrap(), &Rat::new(Int::one(), factorial.clone()));
            assert!(p.coeff(0).is_zero());
            assert!(p.coeffs().iter().all(|c| !c.is_negative()), "negative coefficient in P_{n}");
        }
    }

    #[test]
    fn values_at_one_are_partition_numbers() {
        let mut t = DarcaisTable::new();
        t.ensure(60);
        let p = partition_numbers(60);
        for n in 0..=60 {
            assert_eq!(t.cached(n).unwrap().eval(&rat(1)), Rat::from_integer(p[n].clone()));
        }
    }

    #[test]
    fn values_at_k_are_colored_partition_numbers() {
        let mut t = DarcaisTable::new();
        t.ensure(30);
        for k in 2..=4u32 {
            let colored = colored_partition_numbers(k, 30).unwrap();
            for n in 0..=30 {
                assert_eq!(
                    t.cached(n).unwrap().eval(&rat(k as i64)),
                    Rat::from_integer(colored[n].clone()),
                    "P_{n}({k})"
                );
            }
        }
    }

    #[test]
    fn scalar_recurrence_matches_polynomial_evaluation() {
        let x = ratio(9, 5);
        let vals = darcais_values(&x, 25);
        let mut t = DarcaisTable::new();
        t.ensure(25);
        for n in 0..=25 {
            assert_eq!(vals[n], t.cached(n).unwrap().eval(&x), "P_{n}(9/5)");
        }
    }

    #[test]
    fn product_difference_polynomials_match_hand_expansions() {
        // P_1² − P_2 = x²/2 − 3x/2
        assert_eq!(bo_poly(1, 1), poly(&[(0, 1), (-3, 2), (1, 2)]));
        // P_2·P_1 − P_3 = x³/3 − 4x/3
        assert_eq!(bo_poly(2, 1), poly(&[(0, 1), (-4, 3), (0, 1), (1, 3)]));
        // P_3·P_1 − P_4 = x⁴/8 + 3x³/4 − 9x²/8 − 7x/4
        assert_eq!(bo_poly(3, 1), poly(&[(0, 1), (-7, 4), (-9, 8), (3, 4), (1, 8)]));
    }

    #[test]
    fn bo_leading_coefficient_is_factorial_gap() {
        for (a, b) in [(1usize, 1usize), (2, 1), (5, 3), (9, 9)] {
            let p = bo_poly(a, b);
            let fact = |n: usize| (1..=n).fold(Int::one(), |acc, i| acc * Int::from(i));
            let want = Rat::new(Int::one(), fact(a) * fact(b)) - Rat::new(Int::one(), fact(a + b));
            assert_eq!(p.leading(), Some(&want));
        }
    }

    #[test]
    fn delta_poly_domain_and_degenerate_case() {
        assert!(delta_poly(1, 0).unwrap().is_zero()); // P_0·P_1 − P_1·P_0
        assert_eq!(delta_poly(3, 3), Err(DarcaisError::DeltaDomain { a: 3, b: 3 }));
        assert_eq!(delta_poly(2, 5), Err(DarcaisError::DeltaDomain { a: 2, b: 5 }));
        // Δ_{6,4}(2) = P_5(2)² − P_6(2)·P_4(2) = 36² − 65·20 = −4.
        let d = delta_poly(6, 4).unwrap();
        assert_eq!(d.eval(&rat(2)), rat(-4));
    }

    #[test]
    fn laguerre_bound_stays_below_the_polynomial() {
        let mut t = DarcaisTable::new();
        t.ensure(30);
        for n in [1usize, 4, 11, 30] {
            for m in [1usize, 5, 9] {
                for x in [rat(1), ratio(9, 5), rat(3), ratio(1, 7)] {
                    let bound = laguerre_lower_bound(n, m, &x).unwrap();
                    let value = t.cached(n).unwrap().eval(&x);
                    assert!(bound <= value, "bound exceeded P_{n}({x}) with m = {m}");
                }
            }
        }
        assert!(matches!(
            laguerre_lower_bound(3, 2, &rat(-1)),
            Err(DarcaisError::NegativeBase { .. })
        ));
    }

    #[test]
    fn karatsuba_agrees_with_schoolbook() {
        // Degree 80 forces the Karatsuba path; compare against schoolbook.
        let a: Vec<Rat> = (0..=80).map(|i| ratio((i * 7 % 23) - 11, i + 1)).collect();
        let b: Vec<Rat> = (0..=77).map(|i| ratio((i * 5 % 19) - 9, 2 * i + 3)).collect();
        let fast = mul_slices(&a, &b);
        let slow = mul_schoolbook(&a, &b);
        assert_eq!(fast, slow);
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = poly(&[(1, 2), (0, 1), (-3, 1), (1, 1)]);
        let b = poly(&[(-1, 1), (1, 3)]);
        let prod = a.mul(&b);
        let (q, r) = prod.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q, a);
        let (q2, r2) = prod.add(&RatPoly::one()).div_rem(&b);
        assert_eq!(q2, a);
        assert_eq!(r2, RatPoly::one());
    }

    #[test]
    fn primitive_integer_form_preserves_sign_and_roots() {
        let p = poly(&[(-6, 35), (9, 14), (0, 1), (3, 10)]);
        let q = p.primitive_integer_form();
        for c in q.coeffs() {
            assert!(c.denom().is_one());
        }
        // Same sign at sample points.
        for x in [rat(-2), rat(0), ratio(1, 2), rat(7)] {
            assert_eq!(p.eval(&x).is_positive(), q.eval(&x).is_positive(), "at {x}");
            assert_eq!(p.eval(&x).is_zero(), q.eval(&x).is_zero(), "at {x}");
        }
    }

    #[test]
    fn cache_round_trip_and_integrity_checks() {
        let mut t = DarcaisTable::new();
        t.ensure(12);
        let mut buf = Vec::new();
        t.write_jsonl(&mut buf).unwrap();
        let back = DarcaisTable::read_jsonl(buf.as_slice()).unwrap();
        assert_eq!(back.max_n(), 12);
        for n in 0..=12 {
            assert_eq!(back.cached(n), t.cached(n));
        }

        // Corrupt a coefficient: integrity check must catch the bad leading term.
        let text = String::from_utf8(buf).unwrap();
        let corrupted = text.replace("[\"1\",\"2\"]", "[\"1\",\"3\"]");
        assert!(matches!(
            DarcaisTable::read_jsonl(corrupted.as_bytes()),
            Err(PolyCacheError::Integrity { .. }) | Err(PolyCacheError::Malformed { .. })
        ));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(bo_poly(3, 1).to_string(), "(1/8)x^4 + (3/4)x^3 - (9/8)x^2 - (7/4)x");
        assert_eq!(RatPoly::zero().to_string(), "0");
        assert_eq!(RatPoly::x().to_string(), "x");
    }
}
