//! Arithmetic multiplayer games `G(n, D, M)`.
//!
//! `n` players each receive a residue `x_j` in `[0, D)`, promised to sum to a
//! multiple of `D`, and answer residues `y_j` in `[0, M)`. They win when
//! `sum(y) = sum(x) / D (mod M)`. This crate simulates the GHZ-state strategy
//! that always wins, searches and bounds the classical strategies, and
//! evaluates the counting bounds that govern them.
//!
//! The crate is `no_std` and only needs `alloc`; IO, reports and the command
//! line live in `ghz-games-cli`.

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod classical;
mod error;
pub mod game;
pub mod quantum;

pub use error::{Error, ErrorKind, Result};
pub use game::{Digits, GameSpec, InputString, Limits, OutputString};

/// Exact rationals used by every report.
pub type Rational = num_rational::BigRational;
