//! `bokit` — exact-arithmetic partition-inequality toolkit, CLI front end.
//!
//! Every subcommand computes with arbitrary-precision rationals and reports
//! its verdict through the exit code: `0` means everything checked out, `1`
//! means a counterexample, mismatch, or refuted published claim, and `2`
//! means the request itself failed (bad arguments, an undecidable sign, an
//! I/O problem).

use std::fs::File;
use std::io::{BufReader, BufWriter, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, ensure, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bokit::certify::{
    certify_family, report_json, report_markdown, sweep_json, sweep_markdown, theorem_sweep_full,
    CertifyError, CertifyOptions, Family, TheoremId,
};
use bokit::darcais::{darcais_poly, DarcaisTable, RatPoly};
use bokit::partitions::{
    colored_partition_numbers, partition_numbers, PartitionKind, PartitionTable, SigmaTable,
};
use bokit::roots::{compare_with_published, format_1dp, table3, table3_csv, table3_markdown};
use bokit::{rat, Int, Rat};

#[derive(Parser)]
#[command(
    name = "bokit",
    version,
    about = "Exact-arithmetic toolkit for partition-number inequalities",
    arg_required_else_help = true
)]
struct Cli {
    /// Worker threads for the parallel stages (default: all cores)
    #[arg(long, global = true, env = "BOKIT_WORKERS")]
    workers: Option<usize>,

    /// Emit machine-readable JSON instead of human-readable text
    #[arg(long, global = true, env = "BOKIT_JSON")]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print exact sequences, divisor sums, or polynomial data
    Compute {
        #[command(subcommand)]
        what: ComputeCmd,
    },
    /// Sweep a catalogued statement and compare against its stated exceptions
    Verify {
        /// Statement id: t1.1, t1.2, t1.3, t1.6, c1.4, c1.5, or `all`
        id: String,
        /// Ceiling on a + b (on n + m for c1.4; on a for c1.5);
        /// defaults to a per-statement value
        #[arg(long)]
        nmax: Option<usize>,
        /// Ceiling on the number of colors for the colored statements
        #[arg(long, default_value_t = 5)]
        kmax: u32,
    },
    /// Run a family's full certification chain: bo, x2, x3, x18, or `all`
    Certify {
        family: String,
        /// Threshold-scan ceiling (default: 1200 for bo, 50 otherwise)
        #[arg(long)]
        amax: Option<usize>,
        /// Stop at the threshold scan; skip the tail certificate
        #[arg(long)]
        no_tail: bool,
        /// Number of randomized induction-step replays
        #[arg(long, default_value_t = 6, env = "BOKIT_REPLAYS")]
        replays: usize,
        /// Seed for the replay sampler
        #[arg(long, default_value_t = 2026, env = "BOKIT_SEED")]
        seed: u64,
    },
    /// Tabulate the largest real zeros of the product-defect polynomials
    Roots {
        /// Grid dimension (rows and columns 1..=amax)
        #[arg(long, default_value_t = 14)]
        amax: usize,
        /// Width to which each zero is isolated (exact rational, e.g. 1/10000)
        #[arg(long, default_value = "1/10000", value_parser = parse_rat_arg, env = "BOKIT_WIDTH")]
        width: Rat,
        /// Flat a,b,lo,hi,rounded listing with exact interval endpoints
        #[arg(long)]
        csv: bool,
    },
    /// Write or check cached value tables (JSON Lines)
    Table {
        #[command(subcommand)]
        action: TableCmd,
    },
}

#[derive(Subcommand)]
enum ComputeCmd {
    /// Plain partition numbers p(0..=N)
    P {
        #[arg(long)]
        to: usize,
    },
    /// Divisor sums σ(1..=N)
    Sigma {
        #[arg(long)]
        to: usize,
    },
    /// k-colored partition numbers p_k(0..=N)
    Colored {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        to: usize,
    },
    /// The n-th polynomial of the divisor-sum recurrence, or its exact
    /// value at a rational point
    Darcais {
        #[arg(long)]
        n: usize,
        /// Evaluate at this exact rational (e.g. 3, 9/5, 1.8)
        #[arg(long, value_parser = parse_rat_arg)]
        at: Option<Rat>,
        /// JSON Lines polynomial cache to reuse and extend
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Plain,
    Colored,
}

#[derive(Subcommand)]
enum TableCmd {
    /// Compute a table and write it as JSON Lines
    Write {
        #[arg(long, value_enum, default_value_t = TableKind::Plain)]
        kind: TableKind,
        /// Number of colors (colored tables only)
        #[arg(long)]
        k: Option<u32>,
        /// Largest index to tabulate
        #[arg(long)]
        to: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-read a written table and re-derive every row
    Check { file: PathBuf },
}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let failed_certificate = matches!(
                e.downcast_ref::<CertifyError>(),
                Some(CertifyError::CertificateFailure { .. })
            );
            ExitCode::from(if failed_certificate { 1 } else { 2 })
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.workers {
        Some(n) => {
            ensure!(n >= 1, "--workers must be at least 1");
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .context("building the worker pool")?;
            pool.install(|| dispatch(cli))
        }
        None => dispatch(cli),
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Compute { what } => compute(what, cli.json),
        Command::Verify { id, nmax, kmax } => verify(&id, nmax, kmax, cli.json),
        Command::Certify { family, amax, no_tail, replays, seed } => {
            let options =
                CertifyOptions { a_max: amax, tail: !no_tail, replays, seed };
            certify(&family, &options, cli.json)
        }
        Command::Roots { amax, width, csv } => roots(amax, &width, csv, cli.json),
        Command::Table { action } => table(action),
    }
}

// ---------------------------------------------------------------------------
// compute
// ---------------------------------------------------------------------------

fn compute(what: ComputeCmd, json: bool) -> Result<ExitCode> {
    match what {
        ComputeCmd::P { to } => print_sequence(&partition_numbers(to), json)?,
        ComputeCmd::Sigma { to } => {
            let table = SigmaTable::up_to(to);
            let values: Vec<Int> =
                (1..=to).map(|n| table.get(n).expect("within table").clone()).collect();
            print_sequence(&values, json)?;
        }
        ComputeCmd::Colored { k, to } => {
            print_sequence(&colored_partition_numbers(k, to)?, json)?
        }
        ComputeCmd::Darcais { n, at, cache } => {
            let poly = match cache {
                Some(path) => cached_poly(&path, n)?,
                None => darcais_poly(n),
            };
            match at {
                Some(x) => {
                    let value = poly.eval(&x);
                    if json {
                        println!(
                            "{}",
                            json!({ "n": n, "at": x.to_string(), "value": value.to_string() })
                        );
                    } else {
                        println!("{value}");
                    }
                }
                None if json => {
                    let coeffs: Vec<String> =
                        poly.coeffs().iter().map(|c| c.to_string()).collect();
                    println!("{}", json!({ "n": n, "coefficients": coeffs }));
                }
                None => println!("{poly}"),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_sequence(values: &[Int], json: bool) -> Result<()> {
    if json {
        let strings: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        println!("{}", serde_json::to_string(&strings)?);
    } else {
        let line: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        println!("{}", line.join(","));
    }
    Ok(())
}

/// Load (or start) a polynomial cache, make sure it reaches `n`, and write
/// it back atomically if it grew.
fn cached_poly(path: &Path, n: usize) -> Result<RatPoly> {
    let mut table = if path.exists() {
        let file =
            File::open(path).with_context(|| format!("opening cache {}", path.display()))?;
        DarcaisTable::read_jsonl(BufReader::new(file))
            .with_context(|| format!("reading cache {}", path.display()))?
    } else {
        DarcaisTable::new()
    };
    let grew = n > table.max_n();
    let poly = table.poly(n).clone();
    if grew {
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir)
            .with_context(|| format!("creating a temporary file in {}", dir.display()))?;
        {
            let mut w = BufWriter::new(tmp.as_file_mut());
            table.write_jsonl(&mut w)?;
            w.flush()?;
        }
        tmp.persist(path).with_context(|| format!("replacing cache {}", path.display()))?;
    }
    Ok(poly)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn verify(id: &str, nmax: Option<usize>, kmax: u32, json: bool) -> Result<ExitCode> {
    let ids: Vec<TheoremId> = if id.eq_ignore_ascii_case("all") {
        TheoremId::ALL.to_vec()
    } else {
        vec![TheoremId::from_str(id).map_err(|e| anyhow!(e))?]
    };

    let mut all_clean = true;
    let mut docs = Vec::new();
    for id in ids {
        let report = theorem_sweep_full(id, nmax.unwrap_or_else(|| id.default_limit()), kmax)?;
        all_clean &= report.clean();
        if json {
            docs.push(sweep_json(&report));
        } else {
            println!("{}", sweep_markdown(&report));
        }
    }
    if json {
        let out = if docs.len() == 1 { docs.pop().expect("one doc") } else { Value::Array(docs) };
        println!("{}", serde_json::to_string_pretty(&out)?);
    }
    Ok(exit_flag(all_clean))
}

// ---------------------------------------------------------------------------
// certify
// ---------------------------------------------------------------------------

fn certify(family: &str, options: &CertifyOptions, json: bool) -> Result<ExitCode> {
    let families: Vec<Family> = if family.eq_ignore_ascii_case("all") {
        Family::ALL.to_vec()
    } else {
        vec![Family::from_str(family).map_err(|e| anyhow!(e))?]
    };

    let mut all_ok = true;
    let mut docs = Vec::new();
    for family in families {
        let report = certify_family(family, options)?;
        all_ok &= report.overall_ok;
        if json {
            docs.push(report_json(&report));
        } else {
            println!("{}", report_markdown(&report));
        }
    }
    if json {
        let out = if docs.len() == 1 { docs.pop().expect("one doc") } else { Value::Array(docs) };
        println!("{}", serde_json::to_string_pretty(&out)?);
    }
    Ok(exit_flag(all_ok))
}

// ---------------------------------------------------------------------------
// roots
// ---------------------------------------------------------------------------

fn roots(amax: usize, width: &Rat, csv: bool, json: bool) -> Result<ExitCode> {
    ensure!(amax >= 1, "--amax must be at least 1");
    let entries = table3(amax, width)?;

    if csv {
        print!("{}", table3_csv(&entries));
    } else if json {
        let rows: Vec<Value> = entries
            .iter()
            .map(|e| {
                json!({
                    "a": e.a,
                    "b": e.b,
                    "lo": e.interval.lo().to_string(),
                    "hi": e.interval.hi().to_string(),
                    "rounded": format_1dp(&e.rounded),
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&Value::Array(rows))?);
    } else {
        print!("{}", table3_markdown(&entries, amax));
    }

    let cmp = compare_with_published(&entries);
    let side = amax.min(14);
    eprintln!(
        "published {side}×{side} comparison: {} match, {} within one ulp, {} mismatch",
        cmp.matches,
        cmp.one_ulp.len(),
        cmp.mismatches.len()
    );
    for (a, b) in &cmp.one_ulp {
        eprintln!("  flagged (one ulp, near a rounding boundary): ({a}, {b})");
    }
    for (a, b) in &cmp.mismatches {
        eprintln!("  MISMATCH: ({a}, {b})");
    }
    Ok(exit_flag(cmp.acceptable()))
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

fn table(action: TableCmd) -> Result<ExitCode> {
    match action {
        TableCmd::Write { kind, k, to, out } => {
            let table = match (kind, k) {
                (TableKind::Plain, None) => PartitionTable::plain(to),
                (TableKind::Plain, Some(_)) => bail!("--k only applies to colored tables"),
                (TableKind::Colored, k) => PartitionTable::colored(k.unwrap_or(2), to)?,
            };
            let file = File::create(&out)
                .with_context(|| format!("creating {}", out.display()))?;
            let mut w = BufWriter::new(file);
            table.write_jsonl(&mut w)?;
            w.flush()?;
            eprintln!("wrote {} rows to {}", to + 1, out.display());
            Ok(ExitCode::SUCCESS)
        }
        TableCmd::Check { file } => {
            let opened =
                File::open(&file).with_context(|| format!("opening {}", file.display()))?;
            let table = PartitionTable::read_jsonl(BufReader::new(opened))?;
            let fresh = match table.kind() {
                PartitionKind::Plain => PartitionTable::plain(table.n_max()),
                PartitionKind::Colored(k) => PartitionTable::colored(k, table.n_max())?,
            };
            for n in 0..=table.n_max() {
                let stored = table.get(n).expect("within table");
                let derived = fresh.get(n).expect("within table");
                if stored != derived {
                    eprintln!(
                        "{}: row {n} disagrees — stored {stored}, re-derived {derived}",
                        file.display()
                    );
                    return Ok(ExitCode::from(1));
                }
            }
            println!("{}: {} rows, all re-derived exactly", file.display(), table.n_max() + 1);
            Ok(ExitCode::SUCCESS)
        }
    }
}

// ---------------------------------------------------------------------------
// shared helpers
// ---------------------------------------------------------------------------

fn exit_flag(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Die quietly when the reader of a pipe goes away (`bokit … | head`),
/// like any other line-oriented Unix tool.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

/// Parse an exact rational from an integer (`3`), a fraction (`9/5`), or a
/// decimal literal (`1.8`). No floating point is involved.
fn parse_rat_arg(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("{s:?} is not a decimal literal"));
        }
        let negative = whole.starts_with('-');
        let whole: Int = if whole == "-" || whole.is_empty() {
            Int::from(0)
        } else {
            whole.parse().map_err(|e| format!("{s:?}: {e}"))?
        };
        let whole = if negative { -whole } else { whole };
        let digits: Int = frac.parse().map_err(|e| format!("{s:?}: {e}"))?;
        let scale = (0..frac.len()).fold(rat(1), |acc, _| acc * rat(10));
        let magnitude = Rat::from_integer(whole) + Rat::from_integer(digits) / scale;
        Ok(if negative { -magnitude } else { magnitude })
    } else {
        Rat::from_str(s).map_err(|e| format!("{s:?}: {e}"))
    }
}
