//! Mechanical certification of product–sum inequalities for partition
//! polynomials.
//!
//! Each supported inequality family asserts `P_a(x)·P_b(x) > P_{a+b}(x)` at a
//! fixed evaluation point `x` for all admissible `(a, b)`. The published
//! argument splits into a finite base sweep, a per-step bound ledger, a
//! threshold scan for the closing expression, and a tail certificate that
//! covers all remaining `a` at once. This module replays every numerical
//! claim of that pipeline in exact arithmetic:
//!
//! - [`family`]: the four families and their frozen constants.
//! - [`ledger`]: one induction step `(a, b)` decomposed into `L, R₁, R₂, R₃`
//!   with every claimed bound checked exactly.
//! - [`sweeps`]: exhaustive finite verification of base cases and of the
//!   stated theorems/conjectures, with expected exception sets.
//! - [`threshold`]: sign scans of the closing expression, refined-threshold
//!   witnesses, and the stratified tail certificate.
//! - [`report`]: deterministic JSON/markdown assembly of full family runs.

pub mod family;
pub mod ledger;
pub mod report;
pub mod sweeps;
pub mod threshold;

pub use family::{Family, FamilyParams};
pub use ledger::{replay_step, replay_step_with, CertificateLedger, Relation, TermRecord};
pub use report::{
    certify_family, report_json, report_markdown, sweep_json, sweep_markdown, CertifyOptions,
    CertifyReport,
};
pub use sweeps::{
    base_case_sweep, theorem_sweep, theorem_sweep_full, theorem_sweep_to, SweepException,
    SweepReport, TheoremId,
};
pub use threshold::{
    final_expression, final_expression_sign, tail_certificate, threshold_scan, CoverageAudit,
    StratumCheck, TailCertificate, ThresholdReport, WitnessFact,
};

use crate::exactnum::ExactNumError;
use thiserror::Error;

/// Errors raised while replaying a certification pipeline.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CertifyError {
    /// Inputs outside a routine's documented domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A claimed bound failed its exact check; names the offending term.
    #[error("certificate failure for {family} at (a, b) = ({a}, {b}): {term}: {detail}")]
    CertificateFailure { family: &'static str, a: usize, b: usize, term: String, detail: String },
    /// A tail certificate could not be established from the given start.
    #[error("tail certificate failure for {family} from {from}: {detail}")]
    TailFailure { family: &'static str, from: usize, detail: String },
    /// An exact sign query did not resolve within the refinement cap.
    #[error("exact sign query failed: {0}")]
    Sign(#[from] ExactNumError),
    /// Root isolation failed (zero polynomial or invalid width).
    #[error("root isolation failed: {0}")]
    Roots(#[from] crate::roots::RootsError),
}
