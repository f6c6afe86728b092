use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type. Every variant names the precondition or
/// invariant that was violated so callers can surface it verbatim.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension for {what}: n = {n}, minimum is {min}")]
    InvalidDimension {
        what: &'static str,
        n: u32,
        min: u32,
    },

    #[error("invalid marginal: p = {p} lies outside [0, 1/2]")]
    InvalidMarginal { p: String },

    #[error("{what} requires {parity} n >= {min}, got n = {n}")]
    InvalidCycle {
        what: &'static str,
        parity: &'static str,
        min: u32,
        n: u32,
    },

    #[error("chart degree M = {degree} exceeds dimension N = {n}")]
    DegreeTooLarge { degree: u32, n: u32 },

    #[error("infeasible mean degree: N*p = {mean} exceeds N = {n}")]
    InfeasibleMean { mean: String, n: u32 },

    #[error("input pair ({x}, {y}) out of range for a {n_alice}x{n_bob}-input box")]
    InputOutOfRange {
        x: u32,
        y: u32,
        n_alice: u32,
        n_bob: u32,
    },

    #[error("block ({x}, {y}) violates {invariant}")]
    InvalidBlock {
        x: u32,
        y: u32,
        invariant: String,
    },

    #[error("block ({x}, {y}) received no samples")]
    EmptyBlock { x: u32, y: u32 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix violates hermiticity: max |H - H^dag| = {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error("density matrix violates trace normalisation: trace = {trace}")]
    TraceNotOne { trace: f64 },

    #[error("density matrix violates positive semidefiniteness: min eigenvalue = {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("matrix dimension {dim} exceeds eigensolver limit {max}")]
    MatrixTooLarge { dim: usize, max: usize },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: u32 },

    #[error("invalid packet count: M must be >= 1")]
    InvalidPacketCount,

    #[error("malformed input: {0}")]
    Parse(String),
}
