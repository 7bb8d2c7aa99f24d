//! Whole-family certification: compose the constant re-derivations, the
//! base sweep, the threshold scan with its coverage audit, the tail
//! certificate, and a sample of step replays into one deterministic report.

use super::family::{verify_constant_derivation, Family};
use super::ledger::replay_step;
use super::sweeps::{base_case_sweep, SweepReport};
use super::threshold::{tail_certificate, threshold_scan, TailCertificate, ThresholdReport};
use super::CertifyError;
use crate::exactnum::Sign;
use serde_json::{json, Value};
use std::fmt::Write as _;

/// Tunables for [`certify_family`]. The defaults certify each family's full
/// published range and extend it with a tail certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Scan ceiling; defaults to a per-family value covering the published
    /// start with room to spare. The scan extends itself to the tail start
    /// when a tail certificate is requested.
    pub a_max: Option<usize>,
    /// Extend the scanned range to all `a` with a tail certificate.
    pub tail: bool,
    /// Number of step replays to sample.
    pub replays: usize,
    /// Seed for the replay sampler (fixed default keeps reports
    /// byte-reproducible).
    pub seed: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { a_max: None, tail: true, replays: 6, seed: 2026 }
    }
}

fn default_a_max(family: Family) -> usize {
    match family {
        Family::Bo => 1200,
        _ => 50,
    }
}

/// One sampled induction-step replay, condensed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplaySample {
    pub a: usize,
    pub b: usize,
    /// The sum lies beyond the base-sweep ceiling (the regime the step is
    /// actually invoked in).
    pub beyond_base: bool,
    /// `x·(L + R)` equals the product gap exactly.
    pub identity_exact: bool,
    /// Sign of the closing expression at this row (informational; the
    /// aggregate bound holds either way).
    pub final_sign: Sign,
    /// Every ledger verdict (term bounds, identity, aggregate) holds.
    pub all_verdicts_hold: bool,
}

/// Complete certification record for one family.
#[derive(Debug, Clone)]
pub struct CertifyReport {
    pub family: Family,
    pub options: CertifyOptions,
    /// The family's loss constant re-derives from exact small values.
    pub constants_rederived: bool,
    pub base: SweepReport,
    pub scan: ThresholdReport,
    pub tail: Option<TailCertificate>,
    /// When the scan and tail compose seamlessly, the row from which the
    /// closing expression is certified positive for ALL `a`.
    pub positive_for_all_from: Option<usize>,
    pub replays: Vec<ReplaySample>,
    pub replays_ok: bool,
    /// Published sentences the audit refuted (each bridged by the audit
    /// itself, or the chain would not certify).
    pub discrepancies: Vec<String>,
    /// The inequality chain is fully certified: floors, coverage,
    /// witnesses, tail, and replays all hold.
    pub chain_certified: bool,
    /// `chain_certified` and nothing published was refuted.
    pub overall_ok: bool,
}

/// Minimal deterministic generator for replay sampling (so the library
/// carries no RNG dependency and reports stay byte-reproducible).
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 11
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

/// Run the whole certification pipeline for one family.
///
/// Everything a report contains is deterministic in (family, options):
/// sweeps collect in index order, the sampler is seeded, and no timing or
/// machine information enters the record.
pub fn certify_family(family: Family, options: &CertifyOptions) -> Result<CertifyReport, CertifyError> {
    let params = family.params();
    let constants_rederived = verify_constant_derivation()
        .into_iter()
        .find(|(f, _)| *f == family)
        .map(|(_, ok)| ok)
        .unwrap_or(false);

    let base = base_case_sweep(family)?;

    let a_max = options.a_max.unwrap_or_else(|| default_a_max(family));
    let mut scan = threshold_scan(family, a_max)?;
    let mut tail = None;
    if options.tail {
        if let Some(minimal) = scan.minimal_all_positive {
            // The tail argument starts at a power of two at or above the
            // minimal start; the scan must reach it for seamless coverage.
            let from = minimal.next_power_of_two();
            if scan.a_max < from {
                scan = threshold_scan(family, from)?;
            }
            tail = Some(tail_certificate(family, from.max(scan.published_threshold))?);
        }
    }
    let positive_for_all_from = match (&tail, scan.minimal_all_positive) {
        (Some(t), Some(minimal)) if t.verdict && minimal <= t.from && t.from <= scan.a_max + 1 => {
            Some(minimal)
        }
        _ => None,
    };

    let mut replays = Vec::with_capacity(options.replays);
    let mut rng = Lcg(options.seed ^ (((family as u64) << 32) | 0x9E37));
    for _ in 0..options.replays {
        let n = params.n0 + 1 + rng.below(200) as usize;
        let b = params.a_min + rng.below((n / 2 - params.a_min + 1) as u64) as usize;
        let a = n - b;
        let ledger = replay_step(family, a, b)?;
        replays.push(ReplaySample {
            a,
            b,
            beyond_base: ledger.n0_satisfied,
            identity_exact: ledger.identity_ok,
            final_sign: ledger.final_sign,
            all_verdicts_hold: ledger.all_verdicts_hold(),
        });
    }
    let replays_ok = replays.iter().all(|r| r.all_verdicts_hold && r.identity_exact);

    let mut discrepancies = Vec::new();
    if !scan.matches_published {
        discrepancies.push(format!(
            "published closing-expression start {} is not where the expression turns \
             positive for good; the scan to {} finds {}",
            scan.published_threshold,
            scan.a_max,
            match scan.minimal_all_positive {
                Some(m) => format!("minimal start {m}"),
                None => "no all-positive suffix".to_string(),
            }
        ));
    }
    if scan.coverage.claim_holds == Some(false) {
        discrepancies.push(scan.coverage.note.clone());
    }

    let witnesses_ok = scan.witnesses.iter().all(|w| w.holds);
    let tail_ok = match (&tail, options.tail) {
        (Some(t), _) => t.verdict,
        (None, false) => true,
        // A tail was requested but no all-positive suffix exists to extend.
        (None, true) => false,
    };
    let chain_certified = constants_rederived
        && base.clean()
        && scan.minimal_all_positive.is_some()
        && scan.coverage.coverage_ok
        && witnesses_ok
        && tail_ok
        && replays_ok;
    let overall_ok = chain_certified && discrepancies.is_empty();

    Ok(CertifyReport {
        family,
        options: options.clone(),
        constants_rederived,
        base,
        scan,
        tail,
        positive_for_all_from,
        replays,
        replays_ok,
        discrepancies,
        chain_certified,
        overall_ok,
    })
}

/// Machine form of a sweep report. Deterministic, no timings.
pub fn sweep_json(s: &SweepReport) -> Value {
    json!({
        "schema": "bokit-sweep/1",
        "id": s.id,
        "description": s.description,
        "field_names": s.field_names,
        "cells_checked": s.cells_checked,
        "exceptions": s.exceptions.iter().map(|e| json!({
            "cell": e.cell,
            "detail": e.detail,
        })).collect::<Vec<_>>(),
        "expected_exceptions": s.expected_exceptions,
        "matches_expected": s.matches_expected,
        "scope_exercised": s.scope_exercised,
        "clean": s.clean(),
        "notes": s.notes,
    })
}

/// Human form of a sweep report.
pub fn sweep_markdown(s: &SweepReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# Sweep report: {}\n", s.id);
    let _ = writeln!(out, "{}\n", s.description);
    let _ = writeln!(
        out,
        "Verdict: **{}**\n",
        if s.clean() {
            "holds as stated"
        } else if !s.matches_expected {
            "EXCEPTION SET DIFFERS FROM THE STATED ONE"
        } else {
            "range too small — only stated exception territory was swept"
        }
    );
    let _ = writeln!(out, "- cells checked: {}", s.cells_checked);
    let cell = |c: &[String]| format!("({})", c.join(", "));
    let _ = writeln!(
        out,
        "- exceptions found (fields {}): {}",
        s.field_names.join(", "),
        if s.exceptions.is_empty() {
            "none".to_string()
        } else {
            s.exceptions.iter().map(|e| cell(&e.cell)).collect::<Vec<_>>().join(" ")
        }
    );
    let _ = writeln!(
        out,
        "- exceptions expected here: {}",
        if s.expected_exceptions.is_empty() {
            "none".to_string()
        } else {
            s.expected_exceptions.iter().map(|c| cell(c)).collect::<Vec<_>>().join(" ")
        }
    );
    let _ = writeln!(out, "- found set matches expected: {}", status(s.matches_expected));
    let _ = writeln!(
        out,
        "- statement scope exercised: {}",
        if s.scope_exercised { "yes" } else { "NO (raise the ceiling)" }
    );
    if !s.exceptions.is_empty() {
        let _ = writeln!(out, "\n## Exceptions\n");
        for e in &s.exceptions {
            let _ = writeln!(out, "- {}: {}", cell(&e.cell), e.detail);
        }
    }
    if !s.notes.is_empty() {
        let _ = writeln!(out, "\n## Notes\n");
        for n in &s.notes {
            let _ = writeln!(out, "- {n}");
        }
    }
    out
}

fn scan_json(s: &ThresholdReport) -> Value {
    json!({
        "a_max": s.a_max,
        "published_start": s.published_threshold,
        "minimal_all_positive": s.minimal_all_positive,
        "matches_published": s.matches_published,
        "sign_below": s.sign_below.map(|g| g.to_string()),
        "step_uncovered_from": s.step_uncovered_from,
        "coverage": {
            "claimed_from": s.coverage.claimed_from,
            "window": [s.coverage.window.0, s.coverage.window.1],
            "claim_holds": s.coverage.claim_holds,
            "failing_pairs": s.coverage.failing_pairs,
            "certified_from": s.coverage.certified_from,
            "direct_pairs": s.coverage.direct_pairs,
            "direct_ok": s.coverage.direct_ok,
            "coverage_ok": s.coverage.coverage_ok,
            "note": s.coverage.note,
        },
        "witnesses": s.witnesses.iter().map(|w| json!({
            "claim": w.claim,
            "holds": w.holds,
        })).collect::<Vec<_>>(),
    })
}

fn tail_json(t: &TailCertificate) -> Value {
    json!({
        "from": t.from,
        "stratum_of_from": t.j_from,
        "dominance_stratum": t.j_star,
        "finite_strata": t.finite_strata.iter().map(|s| json!({
            "j": s.j,
            "left": s.left,
            "right": s.right,
            "left_value_positive": s.left_value_positive,
            "root_free": s.root_free,
        })).collect::<Vec<_>>(),
        "dominance_base_ok": t.dominance_base_ok,
        "ratio_ok": t.ratio_ok,
        "increasing_ok": t.increasing_ok,
        "log_step_ok": t.log_step_ok,
        "values_match_ok": t.values_match_ok,
        "verdict": t.verdict,
    })
}

/// Machine form of a report. Deterministic: keys sort, values carry no
/// timings, and exact rationals render as decimal strings.
pub fn report_json(r: &CertifyReport) -> Value {
    let params = r.family.params();
    json!({
        "schema": "bokit-certify/1",
        "family": r.family.name(),
        "parameters": {
            "x": params.x.to_string(),
            "a_min": params.a_min,
            "n_min": params.n_min,
            "base_ceiling": params.n0,
            "loss_constant": params.constant.to_string(),
            "bound_terms": params.bound_terms,
            "published_start": params.published_threshold,
            "published_intermediate_start": params.refined_threshold,
            "step_uncovered_from": params.step_uncovered_from(),
        },
        "options": {
            "a_max_requested": r.options.a_max,
            "tail": r.options.tail,
            "replays": r.options.replays,
            "seed": r.options.seed,
        },
        "constants_rederived": r.constants_rederived,
        "base_sweep": sweep_json(&r.base),
        "threshold_scan": scan_json(&r.scan),
        "tail": r.tail.as_ref().map(tail_json),
        "positive_for_all_from": r.positive_for_all_from,
        "replays": r.replays.iter().map(|s| json!({
            "a": s.a,
            "b": s.b,
            "beyond_base": s.beyond_base,
            "identity_exact": s.identity_exact,
            "final_sign": s.final_sign.to_string(),
            "all_verdicts_hold": s.all_verdicts_hold,
        })).collect::<Vec<_>>(),
        "replays_ok": r.replays_ok,
        "discrepancies": r.discrepancies,
        "chain_certified": r.chain_certified,
        "overall_ok": r.overall_ok,
    })
}

fn status(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

/// Human form of a report.
pub fn report_markdown(r: &CertifyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# Certification report: family {}\n", r.family);
    let _ = writeln!(
        out,
        "Overall: **{}**\n",
        if r.overall_ok {
            "fully certified, all published sentences confirmed".to_string()
        } else if r.chain_certified {
            format!(
                "inequality chain fully certified; {} published sentence(s) refuted and bridged",
                r.discrepancies.len()
            )
        } else {
            "NOT certified".to_string()
        }
    );

    let _ = writeln!(out, "- constants re-derived: {}", status(r.constants_rederived));
    let _ = writeln!(
        out,
        "- base sweep `{}`: {} cells, {} exception(s), expected set {}",
        r.base.id,
        r.base.cells_checked,
        r.base.exceptions.len(),
        if r.base.matches_expected { "matched" } else { "NOT matched" },
    );
    let s = &r.scan;
    let _ = writeln!(
        out,
        "- threshold scan to {}: minimal all-positive start {} (published {}, {}), sign below: {}",
        s.a_max,
        s.minimal_all_positive.map_or("none".to_string(), |m| m.to_string()),
        s.published_threshold,
        if s.matches_published { "matches" } else { "differs" },
        s.sign_below.map_or("n/a".to_string(), |g| g.to_string()),
    );
    let _ = writeln!(out, "- coverage: {} — {}", status(s.coverage.coverage_ok), s.coverage.note);
    for w in &s.witnesses {
        let _ = writeln!(out, "- witness: {} — {}", w.claim, status(w.holds));
    }
    match &r.tail {
        Some(t) => {
            let _ = writeln!(
                out,
                "- tail from {}: {} ({} finite stratum/strata, dominance from stratum {})",
                t.from,
                status(t.verdict),
                t.finite_strata.len(),
                t.j_star,
            );
        }
        None => {
            let _ = writeln!(out, "- tail: not run");
        }
    }
    match r.positive_for_all_from {
        Some(m) => {
            let _ = writeln!(out, "- closing expression certified positive for ALL a ≥ {m}");
        }
        None => {
            let _ = writeln!(out, "- no unbounded positivity certificate composed");
        }
    }
    let _ = writeln!(out, "- replays ({}): {}", r.replays.len(), status(r.replays_ok));
    for p in &r.replays {
        let _ = writeln!(
            out,
            "    - (a, b) = ({}, {}): identity exact {}, verdicts {}, closing sign {}",
            p.a,
            p.b,
            p.identity_exact,
            status(p.all_verdicts_hold),
            p.final_sign,
        );
    }
    if !r.discrepancies.is_empty() {
        let _ = writeln!(out, "\n## Refuted published sentences\n");
        for d in &r.discrepancies {
            let _ = writeln!(out, "- {d}");
        }
    }
    out
}
