//! Positivity analysis for linear maps between complex matrix algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`] — dense complex matrices, a self-contained Hermitian
//!   eigensolver, and bipartite (tensor-product) operations such as partial
//!   transpose and partial trace.
//! * [`choi`] — map representations (Kraus families, Choi matrices) and the
//!   correspondence between maps and bipartite operators.
//! * [`cones`] — membership oracles for the cone hierarchy on bipartite
//!   Hermitian operators: positive semidefinite, partially-transposed
//!   positive, their intersection, block-positive, and separable.
//! * [`solver`] — the numerical workhorses behind the oracles: alternating
//!   projections, bilinear see-saw searches over product vectors, Schmidt-rank
//!   constrained minimisation, decomposability splits, and greedy separable
//!   fits.
//! * [`classify`] — runs the whole battery against a single map and fuses the
//!   verdicts into one report.
//! * [`gallery`] — named example maps and states with known classification,
//!   used for tests, demos and as regression anchors.
//!
//! Every negative verdict produced by the oracles carries a certificate that
//! can be re-verified from the input alone; see [`cones::Certificate`].

#![forbid(unsafe_code)]

pub mod choi;
pub mod classify;
pub mod cones;
pub mod error;
pub mod gallery;
pub mod linalg;
pub mod solver;

pub use error::{Error, Result};
pub use num_complex::Complex64;
