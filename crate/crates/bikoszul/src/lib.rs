//! Exact-arithmetic computation of bi-graded Koszul modules, bi-graded Weyman
//! modules, and the syzygies of K3 carpets, over the rationals or prime
//! fields.
//!
//! The crate is organized bottom-up:
//!
//! * [`field`], [`linalg`] — exact scalars and sparse linear algebra (rank,
//!   kernels, solving, homology of composable maps);
//! * [`spaces`], [`multilinear`] — canonical bases for symmetric, divided and
//!   exterior powers of a two-dimensional space and the structure maps
//!   between them (multiplication, comultiplication, Hermite reciprocity);
//! * [`koszul`] — the bi-graded Koszul module engine `W(V, K)`;
//! * [`weyman`] — Weyman modules as Koszul instances;
//! * [`carpet`] — rational normal scrolls, K3 carpets, their Tor modules and
//!   Betti tables;
//! * [`report`], [`sweep`], [`verify`] — persistence, the parallel sweep
//!   harness, and the verification suite behind `bikoszul verify`.

pub mod actions;
pub mod carpet;
pub mod error;
pub mod field;
pub mod koszul;
pub mod linalg;
pub mod multilinear;
pub mod report;
pub mod spaces;
pub mod sweep;
pub mod verify;
pub mod weyman;

pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use linalg::{homology_dim, Matrix, Subspace};
