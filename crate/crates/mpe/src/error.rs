//! Crate-wide error type.

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("input contains non-finite values")]
    NonFinite,

    #[error("matrix is not Hermitian within tolerance (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("iterative decomposition failed to converge")]
    NoConvergence,

    #[error("bond dimension must be at least 1 (got {0})")]
    InvalidChi(usize),

    #[error("{n} qubits exceeds the dense-state cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("cut {cut} out of range for {n} qubits (expected 1..={max})")]
    CutOutOfRange { cut: usize, n: usize, max: usize },

    #[error("state is not normalized (norm {norm:.6e})")]
    NotNormalized { norm: f64 },

    #[error("zero-norm state")]
    ZeroNorm,

    #[error("states are orthogonal: overlap magnitude below {threshold:.1e}")]
    Orthogonal { threshold: f64 },

    #[error("circuit depth must be exactly 1 (got {0})")]
    DepthNotOne(usize),

    #[error("bond dimension {0} exceeds 2")]
    BondExceedsTwo(usize),

    #[error("gauge-fixed site {site} is not an isometry (residual {residual:.3e})")]
    NotIsometric { site: usize, residual: f64 },

    #[error("gate (layer {layer}, pos {pos}) is not unitary (residual {residual:.3e})")]
    NotUnitary {
        layer: usize,
        pos: usize,
        residual: f64,
    },

    #[error("gate index out of range (layer {layer}, pos {pos})")]
    GateIndexOutOfRange { layer: usize, pos: usize },

    #[error("oracle limited to {cap} qubits (got {n})")]
    OracleTooLarge { n: usize, cap: usize },

    #[error("degenerate regression input: {0}")]
    DegenerateFit(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("JSON error on {path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
