//! Recognition, decomposition and exact solvers for graphs of linear rankwidth
//! at most one ("thread graphs"), plus the vertex-deletion problem to that
//! class: branching solvers, a clique-width-expression solver, and a
//! sunflower-based kernelization, all validated against brute-force oracles.

pub mod cwx;
pub mod gen;
pub mod graph;
pub mod io;
pub mod kernel;
pub mod necklace;
pub mod obstructions;
pub mod oracle;
pub mod solver;
pub mod split;

pub use graph::{BlockCutStructure, Graph, VertexSet};

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not a thread graph")]
    NotThreadGraph,
    #[error("thread blocks are not mergeable with the given digraph: {0}")]
    NotMergeable(String),
    #[error("graph contains a small obstruction (not obstruction-free)")]
    NotObnFree,
    #[error("{op}: input size {n} exceeds limit {limit}")]
    TooLarge { op: &'static str, n: usize, limit: usize },
    #[error("occurrence cap {cap} exceeded")]
    CapExceeded { cap: usize },
    #[error("unknown vertex name `{0}`")]
    UnknownVertex(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{file}:{line}: {msg}")]
    Format { file: String, line: usize, msg: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
