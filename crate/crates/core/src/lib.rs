//! Acyclic categories, regular trisps and trisp closure maps.
//!
//! The crate builds nerves of acyclic categories, quotients by finite group
//! actions, verifies trisp closure maps and turns them into explicit
//! elementary collapse certificates. The [`graphs`] module applies this to the
//! complexes of disconnected graphs.

// Incidence tables are indexed by pairs of elements; range loops read best.
#![allow(clippy::needless_range_loop)]

pub mod accat;
pub mod cli;
pub mod closure;
pub mod equivariant;
pub mod error;
pub mod fixtures;
pub mod formats;
pub mod graphs;
pub mod nerve;
pub mod symmetry;
pub mod trisp;
mod unionfind;

pub use error::{Error, Result};
