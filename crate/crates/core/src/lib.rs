//! Bipartite no-signalling boxes and n-cycle inequalities.
//!
//! The crate is organised around five pieces:
//!
//! - [`nsboxes`] — conditional probability tables for two-outcome
//!   no-signalling resources (KS boxes, generalised PR boxes), with
//!   exact-rational or floating-point entries, verification and sampling.
//! - [`chartsim`] — classical simulation of KS boxes by shared charts:
//!   per-chart success probability, the optimal degree mixture, an
//!   independent linear-programming oracle and a Monte Carlo cross-check.
//! - [`ncycle`] — odd-cycle (KCBS) and even-cycle (chained Bell)
//!   inequality engines: projector/observable construction, qutrit and
//!   two-qubit violation thresholds, and a small Hermitian eigensolver.
//! - [`cvchain`] — the chained construction realised on a discrete
//!   lattice of localised packets, reproducing the finite-size
//!   `(N-1)/N` expectation values and their large-`N` limit.
//! - [`reduction`] — simulating a generalised PR box from a `KS_{1/2}`
//!   box by input relabelling, plus the marginal thresholds at which a
//!   `KS_p`-backed strategy meets the classical, quantum and
//!   no-signalling bounds of the chained inequality.
//!
//! Quantities that are rational in the inputs (box tables, chart
//! mixtures, the reduction) support exact arithmetic via
//! [`scalar::Rational`]; spectral quantities are `f64`.

pub mod chartsim;
pub mod cvchain;
pub mod error;
pub mod linalg;
pub mod ncycle;
pub mod nsboxes;
pub mod reduction;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
