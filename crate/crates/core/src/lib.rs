//! Exact arithmetic, Pellian-system machinery and explicit bound formulas
//! for D(4)-tuples: sets of positive integers in which the product of any
//! two elements increased by 4 is a perfect square.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`] — integer square roots, interval reals, continued fractions;
//! * [`tuples`] — pairs, triples, quadruples and their regular extensions;
//! * [`pell`] — fundamental solutions, recurrences and their intersections;
//! * [`bounds`] — linear-form and gap-principle bounds, threshold catalog;
//! * [`reduction`] — Baker–Davenport reduction of index bounds;
//! * [`search`] — brute-force oracles and exhaustive desk-scale checks;
//! * [`cli`] — the `d4lab` command-line front end.

pub mod arith;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod json;
pub mod pell;
pub mod reduction;
pub mod search;
pub mod tuples;

pub use error::{Error, Result};
