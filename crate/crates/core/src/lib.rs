//! Threshold dynamics on the d-dimensional torus `T_n^d`.
//!
//! This crate holds the pure algorithmic side of the lab: torus geometry and
//! the canonical vertex sets, a word-parallel synchronous update engine for
//! r-bootstrap percolation (irreversible and reversible) and the majority
//! rule, explicit dynamo constructions with predicted size bounds, and the
//! analysis tools used to check them (closed-form bounds, k-core peeling and
//! exhaustive minimum-dynamo search on tiny tori).
//!
//! Coordinates are 1-based in every public API (`x_j ∈ [1, n]`), vertex
//! indices are the mixed-radix encoding `Σ (x_j − 1)·n^(j−1)`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod analysis;
pub mod constructions;
pub mod dynamics;
mod error;
mod set;
pub mod sets;
mod torus;

pub use error::{Error, Result};
pub use set::{Configuration, VertexSet};
pub use torus::{Coord, TorusShape, VertexId, DEFAULT_MAX_CELLS};
