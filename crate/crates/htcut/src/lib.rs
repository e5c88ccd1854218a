//! Library half of the `htcut` binary: everything the command line does is
//! exposed here as ordinary functions so integration tests can drive the
//! pipeline in-process and golden-file tests can replay outputs.
//!
//! The conventions shared by every subcommand live in this module: the
//! exit-code contract (0 ok, 1 usage/input, 2 numerical failure,
//! 3 verification failure), seed resolution through the `HTCUT_SEED`
//! environment variable, and the stable JSON/CSV output schemas.

pub mod experiment;
pub mod verify;

use std::path::{Path, PathBuf};

use htcut_core::Hypergraph;
use htcut_eigen::{EigenError, SolverConfig};
use htcut_partition::{PartitionError, PartitionResult};
use htcut_tensor::LaplacianKind;
use serde_json::{json, Value};
use thiserror::Error;

/// Failures surfaced to the user. Each variant owns one process exit code
/// so scripts can branch on what went wrong.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, unreadable input, or a request outside a method's
    /// supported range. Exit code 1.
    #[error("{0}")]
    Usage(String),

    /// The solver gave up: no restart converged or no positive eigenvalue
    /// was found. Exit code 2.
    #[error("{0}")]
    Numerical(String),

    /// A property suite or a benchmark assertion found a counterexample.
    /// Exit code 3.
    #[error("{message}")]
    Verification {
        message: String,
        /// Where the failing instance was written, when there is one.
        dump: Option<PathBuf>,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::Verification { .. } => 3,
        }
    }

    /// Map solver errors onto the exit-code contract: configuration and
    /// sizing problems are the caller's fault, convergence problems are
    /// numerical.
    pub fn from_eigen(err: EigenError) -> Self {
        match err {
            EigenError::NoConvergence { .. } | EigenError::NoPositivePair { .. } => {
                CliError::Numerical(err.to_string())
            }
            EigenError::Tensor(inner) => CliError::Numerical(inner.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }

    pub fn from_partition(err: PartitionError) -> Self {
        match err {
            PartitionError::Eigen(inner) => CliError::from_eigen(inner),
            PartitionError::Tensor(inner) => CliError::Numerical(inner.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// Resolve the effective seed: an explicit flag wins, then the
/// `HTCUT_SEED` environment variable, then zero. A set-but-unparsable
/// variable is an input error rather than a silent fallback.
pub fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("HTCUT_SEED") {
        Ok(raw) => raw.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "HTCUT_SEED is set to {raw:?}, which is not an unsigned integer"
            ))
        }),
        Err(_) => Ok(0),
    }
}

/// Solver flags shared by several subcommands; `None` keeps the solver's
/// default for that knob.
#[derive(Debug, Clone, Copy, Default)]
pub struct SolverOverrides {
    pub seed: Option<u64>,
    pub restarts: Option<usize>,
    pub max_iters: Option<usize>,
    pub tol: Option<f64>,
}

impl SolverOverrides {
    pub fn to_config(self) -> Result<SolverConfig, CliError> {
        let mut cfg = SolverConfig::default();
        cfg.seed = resolve_seed(self.seed)?;
        if let Some(restarts) = self.restarts {
            cfg.restarts = restarts;
        }
        if let Some(max_iters) = self.max_iters {
            cfg.max_iters = max_iters;
        }
        if let Some(tol) = self.tol {
            cfg.tol = tol;
        }
        cfg.validate().map_err(CliError::from_eigen)?;
        Ok(cfg)
    }
}

pub fn laplacian_kind(normalized: bool) -> LaplacianKind {
    if normalized {
        LaplacianKind::Normalized
    } else {
        LaplacianKind::Unnormalized
    }
}

/// Read a hypergraph from the text format, turning IO and parse problems
/// into usage errors that name the offending path.
pub fn load_hypergraph(path: &Path) -> Result<Hypergraph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    Hypergraph::parse(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Write to the path, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, contents)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

/// Format a real for CSV output with 17 significant digits, enough to
/// round-trip an `f64` exactly.
pub fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

/// Render one method's outcome as the stable JSON schema: `method`,
/// `lambda` (null when the method used no eigenpair), `removed`
/// (1-indexed hyperedges in removal order), `clusters` (1-indexed node
/// ids), the cut metrics, and `pi` (null outside comparisons).
pub fn partition_json(result: &PartitionResult, pi: Option<f64>) -> Value {
    let clusters: Vec<Vec<usize>> = result
        .partition
        .clusters()
        .into_iter()
        .map(|c| c.into_iter().map(|v| v + 1).collect())
        .collect();
    json!({
        "method": result.method.to_string(),
        "lambda": result.fiedler.as_ref().map(|p| p.lambda),
        "removed": result.removed_edges.iter().map(|e| e + 1).collect::<Vec<_>>(),
        "clusters": clusters,
        "ratio_cut": result.metrics.ratio_cut,
        "n_cut": result.metrics.n_cut,
        "pi": pi,
    })
}

/// The eigenpair dump schema: `lambda`, `vector`, `residual`, and how many
/// restarts agreed with the reported eigenvalue.
pub fn eigen_json(pair: &htcut_eigen::EigenPair, restarts_agreeing: usize) -> Value {
    json!({
        "lambda": pair.lambda,
        "vector": pair.vector,
        "residual": pair.residual,
        "restarts_agreeing": restarts_agreeing,
    })
}
