//! Exact engines for digit-diagonal experiments.
//!
//! The crate provides five cooperating modules:
//!
//! * [`digits`]: eventually periodic digit expansions in a fixed base,
//!   canonicalized so that equal values have equal representations, with
//!   exact conversion to and from rationals in `[0, 1)`.
//! * [`list`]: ordinal-indexed lists of such expansions with order type
//!   omega plus a finite tail, built from a closed set of generator
//!   families with constant-time digit access.
//! * [`diagonal`]: fixed-point-free digit rules, diagonal streams with
//!   period detection and per-family symbolic certification, partial
//!   diagonals, and induction traces that fit position formulas.
//! * [`census`]: exhaustive, prefix-exhaustive, and seeded sampled counts
//!   of member diagonals over orderings of finite string sets.
//! * [`numerosity`]: partial count profiles of labelled integer sets,
//!   comparison verdicts, and audits of explicit pairing maps.
//!
//! Everything is computed with integer or rational arithmetic; no floating
//! point enters any reported value. All results are deterministic, and the
//! sampled paths take an explicit seed.

pub mod catalog;
pub mod census;
pub mod config;
pub mod diagonal;
pub mod digits;
pub mod error;
pub mod list;
pub mod numerosity;
pub(crate) mod serialize;

pub use error::{Error, ErrorKind, Result};
