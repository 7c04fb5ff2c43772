//! Locally repairable, partially maximally recoverable (PMR), and maximally
//! recoverable (MR) erasure codes over finite fields, together with the
//! brute-force oracles that certify every claimed property at desk scale.
//!
//! The crate is organised as a stack:
//!
//! * [`gf`] — exact arithmetic in GF(p^m), extension towers and embeddings;
//! * [`linalg`] — matrices, reduced echelon forms, null spaces, polynomials
//!   and elementary symmetric functions over a field;
//! * [`codes`] — linear-code semantics: duality, puncturing, minimum
//!   distance, locality and the two independent MR oracles;
//! * [`pmr`] — the canonical parity-check form, the parity-splitting
//!   construction, and the determinant-criterion experiment for the general
//!   approach;
//! * [`mr`] — the coset-selection MR construction with its greedy coset
//!   search, the field-size bound, the modified block construction with two
//!   global parities, and the empirical local-coefficient search;
//! * [`report`] — serialisable certificates and report payloads shared with
//!   the command-line tool.
//!
//! Everything is exact: no floating point, no sampling in any verdict. When
//! an enumeration would exceed the configured resource guards the operation
//! fails loudly instead of silently degrading.

// index loops mirror the row/column arithmetic they implement
#![allow(clippy::needless_range_loop)]

pub mod codes;
mod combi;
pub mod gf;
pub mod linalg;
pub mod mr;
pub mod pmr;
pub mod report;

pub use codes::{LinearCode, Limits, LocalityStructure, PuncturePattern};
pub use gf::{Field, FieldElement};
pub use linalg::{Matrix, Poly};
