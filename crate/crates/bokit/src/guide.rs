//! The user guide, compiled from the `book/` sources.
//!
//! Each chapter of the rendered guide (`mdbook build book`) is included
//! here verbatim, so every fenced code block in the book is compiled and
//! run as a doc-test. The book cannot drift from the library: if an example
//! stops working, `cargo test` stops passing.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/exact-arithmetic.md")]
pub mod exact_arithmetic {}

#[doc = include_str!("../../../book/src/partition-engines.md")]
pub mod partition_engines {}

#[doc = include_str!("../../../book/src/polynomial-family.md")]
pub mod polynomial_family {}

#[doc = include_str!("../../../book/src/real-roots.md")]
pub mod real_roots {}

#[doc = include_str!("../../../book/src/certifying-proofs.md")]
pub mod certifying_proofs {}

#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
