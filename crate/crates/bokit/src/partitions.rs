//! Partition numbers and divisor sums, exactly.
//!
//! Every sequence here has two independent engines so that each can serve as
//! an oracle for the other:
//!
//! * plain partition numbers: the divisor-sum recurrence
//!   `n·p(n) = Σ_{k=1}^{n} σ(k)·p(n−k)` versus Euler's pentagonal-number
//!   recurrence;
//! * k-colored partition numbers: the same recurrence with an extra factor
//!   `k` versus direct expansion of the product `Π_j (1 − q^j)^(−k)`;
//! * divisor sums: a sieve versus per-number divisor enumeration.
//!
//! All values are arbitrary-precision integers; the recurrence's division by
//! `n` is asserted exact at every step, so a corrupted table aborts loudly
//! instead of propagating.

use crate::{Int, Rat};
use num::{Integer, One, Zero};
use serde::{Deserialize, Serialize};
use std::io::{self, BufRead, Write};
use thiserror::Error;

/// Errors for table construction and lookups.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("sigma(0) is undefined")]
    SigmaOfZero,
    #[error("index {n} exceeds table bound {n_max}")]
    OutOfRange { n: usize, n_max: usize },
    #[error("colored partition numbers need at least one color")]
    ZeroColors,
}

/// Sum of divisors `σ(n)` for one `n`, by divisor enumeration up to `√n`.
///
/// This is the slow, obviously-correct route; [`SigmaTable`] is the sieve.
pub fn sigma(n: usize) -> Result<Int, PartitionError> {
    if n == 0 {
        return Err(PartitionError::SigmaOfZero);
    }
    let mut total: u128 = 0;
    let mut d = 1usize;
    while d * d <= n {
        if n % d == 0 {
            total += d as u128;
            let other = n / d;
            if other != d {
                total += other as u128;
            }
        }
        d += 1;
    }
    Ok(Int::from(total))
}

/// Table of divisor sums `σ(1), …, σ(n_max)` built by a sieve in
/// `O(n_max log n_max)` additions.
#[derive(Debug, Clone)]
pub struct SigmaTable {
    /// `values[n] = σ(n)`; slot 0 is an unused placeholder.
    values: Vec<Int>,
}

impl SigmaTable {
    pub fn up_to(n_max: usize) -> Self {
        let mut raw = vec![0u64; n_max + 1];
        for d in 1..=n_max {
            for multiple in (d..=n_max).step_by(d) {
                raw[multiple] += d as u64;
            }
        }
        let values = raw.into_iter().map(Int::from).collect();
        SigmaTable { values }
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Result<&Int, PartitionError> {
        if n == 0 {
            return Err(PartitionError::SigmaOfZero);
        }
        self.values
            .get(n)
            .ok_or(PartitionError::OutOfRange { n, n_max: self.n_max() })
    }

    fn raw(&self) -> &[Int] {
        &self.values
    }
}

/// Which sequence a [`PartitionTable`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionKind {
    /// Plain partition numbers `p(n)`.
    Plain,
    /// k-colored partition numbers: coefficients of `Π (1 − q^j)^(−k)`.
    Colored(u32),
}

/// Exact table of (possibly colored) partition numbers `0..=n_max`.
#[derive(Debug, Clone)]
pub struct PartitionTable {
    kind: PartitionKind,
    values: Vec<Int>,
}

impl PartitionTable {
    /// Plain partition numbers via `n·p(n) = Σ σ(k)·p(n−k)`.
    pub fn plain(n_max: usize) -> Self {
        Self::by_recurrence(PartitionKind::Plain, 1, n_max)
    }

    /// k-colored partition numbers via `n·p(n) = k·Σ σ(j)·p(n−j)`, the same
    /// recurrence specialised to `k` colors. `k = 1` reproduces `plain`.
    pub fn colored(k: u32, n_max: usize) -> Result<Self, PartitionError> {
        if k == 0 {
            return Err(PartitionError::ZeroColors);
        }
        Ok(Self::by_recurrence(PartitionKind::Colored(k), k, n_max))
    }

    fn by_recurrence(kind: PartitionKind, k: u32, n_max: usize) -> Self {
        let sigma = SigmaTable::up_to(n_max);
        let sig = sigma.raw();
        let k_factor = Int::from(k);
        let mut values = Vec::with_capacity(n_max + 1);
        values.push(Int::one());
        for n in 1..=n_max {
            let mut acc = Int::zero();
            for j in 1..=n {
                acc += &sig[j] * &values[n - j];
            }
            acc *= &k_factor;
            let (q, r) = acc.div_rem(&Int::from(n));
            // A non-zero remainder can only mean the table is corrupt: the
            // recurrence provably divides exactly.
            assert!(r.is_zero(), "partition recurrence produced a non-integer at n = {n}");
            values.push(q);
        }
        PartitionTable { kind, values }
    }

    pub fn kind(&self) -> PartitionKind {
        self.kind
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Result<&Int, PartitionError> {
        self.values
            .get(n)
            .ok_or(PartitionError::OutOfRange { n, n_max: self.n_max() })
    }

    /// All values, indexed by `n`.
    pub fn values(&self) -> &[Int] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Int> {
        self.values
    }
}

/// Plain partition numbers `p(0..=n_max)` (the divisor-sum recurrence route).
pub fn partition_numbers(n_max: usize) -> Vec<Int> {
    PartitionTable::plain(n_max).into_values()
}

/// Independent engine: Euler's pentagonal-number recurrence
/// `p(n) = Σ_j (−1)^(j+1) [p(n − j(3j−1)/2) + p(n − j(3j+1)/2)]`.
///
/// Shares no code with the divisor-sum route, which makes the two mutual
/// oracles.
pub fn pentagonal_oracle(n_max: usize) -> Vec<Int> {
    let mut p: Vec<Int> = Vec::with_capacity(n_max + 1);
    p.push(Int::one());
    for n in 1..=n_max {
        let mut acc = Int::zero();
        let mut j = 1usize;
        loop {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > n {
                break;
            }
            let g2 = j * (3 * j + 1) / 2;
            let mut term = p[n - g1].clone();
            if g2 <= n {
                term += &p[n - g2];
            }
            if j % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
            j += 1;
        }
        p.push(acc);
    }
    p
}

/// k-colored partition numbers by the recurrence route.
pub fn colored_partition_numbers(k: u32, n_max: usize) -> Result<Vec<Int>, PartitionError> {
    Ok(PartitionTable::colored(k, n_max)?.into_values())
}

/// Independent engine for k-colored partition numbers: truncated expansion of
/// `Π_{j=1}^{n_max} (1 − q^j)^(−k)` by repeated series division, i.e. `k`
/// passes of the classic coin-counting update per factor. No divisor sums,
/// no recurrence.
pub fn euler_product_oracle(k: u32, n_max: usize) -> Result<Vec<Int>, PartitionError> {
    if k == 0 {
        return Err(PartitionError::ZeroColors);
    }
    let mut c: Vec<Int> = vec![Int::zero(); n_max + 1];
    c[0] = Int::one();
    for j in 1..=n_max {
        for _ in 0..k {
            // Multiply the series by 1/(1 − q^j) in place.
            for i in j..=n_max {
                let add = c[i - j].clone();
                c[i] += add;
            }
        }
    }
    Ok(c)
}

/// Binomial coefficient `C(n, k)` as an exact integer.
pub fn binomial(n: usize, k: usize) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 1..=k {
        acc = acc * Int::from(n - k + i) / Int::from(i);
    }
    acc
}

/// The exact lower bound `Σ_{k=1}^{m} C(n−1, k−1) / k!` for `p(n)`.
///
/// Requires `n ≥ 1` and `m ≥ 1` (asserted). The bound is what the final
/// positivity expressions of the certification pipeline feed on.
pub fn binomial_lower_bound(n: usize, m: usize) -> Rat {
    assert!(n >= 1 && m >= 1, "binomial_lower_bound needs n ≥ 1 and m ≥ 1");
    let mut factorial = Int::one();
    let mut acc = Rat::zero();
    for k in 1..=m {
        factorial *= Int::from(k);
        acc += Rat::new(binomial(n - 1, k - 1), factorial.clone());
    }
    acc
}

// ---------------------------------------------------------------------------
// Versioned JSON-lines dump/load.
// ---------------------------------------------------------------------------

const TABLE_FORMAT: &str = "bokit-table";
const TABLE_VERSION: u32 = 1;

/// Errors for the JSON-lines table format.
#[derive(Debug, Error)]
pub enum TableIoError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("unsupported table format {format:?} version {version}")]
    UnsupportedFormat { format: String, version: u32 },
    #[error("rows out of order: expected n = {expected}, found n = {found}")]
    RowOrder { expected: usize, found: usize },
}

#[derive(Serialize, Deserialize)]
struct TableHeader {
    format: String,
    version: u32,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    colors: Option<u32>,
}

#[derive(Serialize, Deserialize)]
struct TableRow {
    n: usize,
    value: String,
}

fn kind_tag(kind: PartitionKind) -> (&'static str, Option<u32>) {
    match kind {
        PartitionKind::Plain => ("plain", None),
        PartitionKind::Colored(k) => ("colored", Some(k)),
    }
}

impl PartitionTable {
    /// Write the table as one JSON object per line: a version header, then
    /// `{"n": …, "value": "…"}` rows with values as decimal strings.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<(), TableIoError> {
        let (kind, colors) = kind_tag(self.kind);
        let header = TableHeader {
            format: TABLE_FORMAT.to_string(),
            version: TABLE_VERSION,
            kind: kind.to_string(),
            colors,
        };
        writeln!(w, "{}", serde_json::to_string(&header).expect("header serialization"))?;
        for (n, v) in self.values.iter().enumerate() {
            let row = TableRow { n, value: v.to_string() };
            writeln!(w, "{}", serde_json::to_string(&row).expect("row serialization"))?;
        }
        Ok(())
    }

    /// Read a table produced by [`PartitionTable::write_jsonl`], verifying
    /// the version header and row order.
    pub fn read_jsonl<R: BufRead>(r: R) -> Result<Self, TableIoError> {
        let mut lines = r.lines();
        let header_line = lines
            .next()
            .ok_or_else(|| TableIoError::Malformed { line: 1, msg: "empty file".into() })??;
        let header: TableHeader = serde_json::from_str(&header_line)
            .map_err(|e| TableIoError::Malformed { line: 1, msg: e.to_string() })?;
        if header.format != TABLE_FORMAT || header.version != TABLE_VERSION {
            return Err(TableIoError::UnsupportedFormat {
                format: header.format,
                version: header.version,
            });
        }
        let kind = match (header.kind.as_str(), header.colors) {
            ("plain", None) => PartitionKind::Plain,
            ("colored", Some(k)) if k >= 1 => PartitionKind::Colored(k),
            _ => {
                return Err(TableIoError::Malformed {
                    line: 1,
                    msg: format!("unrecognised kind {:?}", header.kind),
                })
            }
        };
        let mut values = Vec::new();
        for (idx, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let row: TableRow = serde_json::from_str(&line)
                .map_err(|e| TableIoError::Malformed { line: idx + 2, msg: e.to_string() })?;
            if row.n != values.len() {
                return Err(TableIoError::RowOrder { expected: values.len(), found: row.n });
            }
            let value = row.value.parse::<Int>().map_err(|e| TableIoError::Malformed {
                line: idx + 2,
                msg: format!("bad integer {:?}: {e}", row.value),
            })?;
            values.push(value);
        }
        if values.is_empty() {
            return Err(TableIoError::Malformed { line: 2, msg: "no rows".into() });
        }
        Ok(PartitionTable { kind, values })
    }
}
