//! Hypergraph partitioning: the score-based cut, the Fiedler-sign
//! baseline, and a brute-force optimum oracle.
//!
//! All three methods produce a [`PartitionResult`] carrying the grouping,
//! the removal trace, the eigenpair that drove it (where one exists), and
//! the cut metrics, so downstream comparisons never recompute anything
//! inconsistently.
//!
//! The score method works in score *tiers*: the minimum-positive eigenpair
//! of the Laplacian assigns every hyperedge a score, and all edges tied
//! for the current maximum are removed together before components are
//! recounted. Tied removals matter — on symmetric inputs the optimal cut
//! is itself symmetric, and peeling tied edges one at a time would stop at
//! a lopsided intermediate. When a tier overshoots and leaves more than
//! the requested number of components, the smallest components are merged
//! pairwise until exactly `p` clusters remain.

use htcut_core::{Hypergraph, Partition};
use htcut_cuts::{cut_cost, ratio_cut, CutReport};
use htcut_eigen::{fiedler_of, solve, EigenError, EigenPair, SolverConfig};
use htcut_tensor::{LaplacianKind, LaplacianOp, TensorError};
use thiserror::Error;

/// Relative tolerance under which two edge scores count as tied.
const SCORE_TIE_TOL: f64 = 1e-9;
/// Size limits for the brute-force oracle: bipartitions up to this many
/// nodes…
const ORACLE_BIPARTITION_LIMIT: usize = 16;
/// …and three-way partitions up to this many.
const ORACLE_TRIPARTITION_LIMIT: usize = 10;

/// Errors raised by the partitioning methods.
#[derive(Debug, Error, PartialEq)]
pub enum PartitionError {
    #[error("cluster count must be at least 2, got {0}")]
    ClusterCountTooSmall(usize),

    #[error("cannot split {n} nodes into {p} non-empty clusters")]
    ClusterCountTooLarge { p: usize, n: usize },

    #[error(
        "brute-force oracle supports p=2 with n ≤ {ORACLE_BIPARTITION_LIMIT} \
         or p=3 with n ≤ {ORACLE_TRIPARTITION_LIMIT}, got p={p}, n={n}"
    )]
    OracleTooLarge { p: usize, n: usize },

    #[error(transparent)]
    Eigen(#[from] EigenError),

    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// Which algorithm produced a [`PartitionResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Edge-score removal driven by the minimum-positive eigenpair.
    ScoreCut,
    /// Signs of the Fiedler vector, the classical spectral baseline.
    SignCut,
    /// Exhaustive minimum-ratio-cut search.
    Oracle,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::ScoreCut => "score",
            Method::SignCut => "sign",
            Method::Oracle => "oracle",
        })
    }
}

/// One method's answer on one hypergraph.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionResult {
    pub method: Method,
    pub partition: Partition,
    /// Edges deleted to form the partition, 0-based, in removal order.
    /// Empty for the sign and oracle methods, which do not delete edges.
    pub removed_edges: Vec<usize>,
    /// The eigenpair the method was driven by; `None` for the oracle.
    pub fiedler: Option<EigenPair>,
    /// Set when the sign method found no negative entries and fell back
    /// to splitting at the median value.
    pub used_median_fallback: bool,
    pub metrics: CutReport,
}

/// Side-by-side run of the sign baseline and the score method, with the
/// oracle included on instances small enough to enumerate.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodComparison {
    pub sign: PartitionResult,
    pub score: PartitionResult,
    pub oracle: Option<PartitionResult>,
    /// Ratio cut of the sign baseline.
    pub r_f: f64,
    /// Ratio cut of the score method.
    pub r_p: f64,
    /// Percentage improvement (r_f − r_p)/r_f·100, or 0 when the baseline
    /// cut is zero (see `reference_degenerate`).
    pub pi: f64,
    /// True when r_f ≤ 0 made the improvement undefined and `pi` was
    /// pinned to 0.
    pub reference_degenerate: bool,
    /// Minimum positive eigenvalue both methods were driven by.
    pub lambda1: f64,
}

/// Partitions by removing hyperedges in descending score order until at
/// least `p` components exist, then merging the smallest components until
/// exactly `p` clusters remain.
pub fn score_partition(
    h: &Hypergraph,
    p: usize,
    kind: LaplacianKind,
    cfg: &SolverConfig,
) -> Result<PartitionResult, PartitionError> {
    check_cluster_count(h, p)?;
    let pair = solve_fiedler(h, kind, cfg)?;
    score_partition_with(h, p, kind, pair)
}

fn score_partition_with(
    h: &Hypergraph,
    p: usize,
    kind: LaplacianKind,
    pair: EigenPair,
) -> Result<PartitionResult, PartitionError> {
    let op = LaplacianOp::new(h, kind)?;
    let scored = op.edge_scores(&pair.vector)?;

    let mut removed: Vec<usize> = Vec::new();
    let mut components = h.connected_components(&removed);
    let mut cursor = 0;
    while components.p() < p && cursor < scored.len() {
        let tier_score = scored[cursor].score;
        let tol = SCORE_TIE_TOL * tier_score.abs().max(1.0);
        while cursor < scored.len() && (tier_score - scored[cursor].score).abs() <= tol {
            removed.push(scored[cursor].edge_index);
            cursor += 1;
        }
        components = h.connected_components(&removed);
    }
    let partition = merge_to(components, p);
    let metrics = cut_cost(h, &partition);
    Ok(PartitionResult {
        method: Method::ScoreCut,
        partition,
        removed_edges: removed,
        fiedler: Some(pair),
        used_median_fallback: false,
        metrics,
    })
}

/// Splits on the sign of the Fiedler vector: negative entries against the
/// rest. When no entry is negative the split falls back to the median
/// value, flagged in the result.
pub fn sign_partition(
    h: &Hypergraph,
    kind: LaplacianKind,
    cfg: &SolverConfig,
) -> Result<PartitionResult, PartitionError> {
    check_cluster_count(h, 2)?;
    let pair = solve_fiedler(h, kind, cfg)?;
    Ok(sign_partition_with(h, pair))
}

fn sign_partition_with(h: &Hypergraph, pair: EigenPair) -> PartitionResult {
    let (labels, used_median_fallback) = sign_labels(&pair.vector);
    let partition = Partition::from_labels(labels).expect("two non-empty label classes");
    let metrics = cut_cost(h, &partition);
    PartitionResult {
        method: Method::SignCut,
        partition,
        removed_edges: Vec::new(),
        fiedler: Some(pair),
        used_median_fallback,
        metrics,
    }
}

/// Labels each entry by sign (zeros count as nonnegative); when one side
/// would be empty, re-splits at the median, and as a last resort against a
/// constant vector, at the index midpoint.
fn sign_labels(vector: &[f64]) -> (Vec<usize>, bool) {
    let n = vector.len();
    let negatives = vector.iter().filter(|&&v| v < 0.0).count();
    if negatives > 0 && negatives < n {
        return (vector.iter().map(|&v| usize::from(v >= 0.0)).collect(), false);
    }
    let mut sorted: Vec<f64> = vector.to_vec();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[n / 2];
    let below = vector.iter().filter(|&&v| v < median).count();
    if below > 0 {
        return (vector.iter().map(|&v| usize::from(v >= median)).collect(), true);
    }
    ((0..n).map(|i| usize::from(i >= n / 2)).collect(), true)
}

/// Exhaustive minimum-ratio-cut search. Feasible for bipartitions of up
/// to 16 nodes and three-way partitions of up to 10; ties are broken by
/// the lexicographically smallest canonical label vector, which the
/// enumeration order yields for free.
pub fn oracle_min_ratio_cut(h: &Hypergraph, p: usize) -> Result<PartitionResult, PartitionError> {
    check_cluster_count(h, p)?;
    let n = h.n();
    let feasible = (p == 2 && n <= ORACLE_BIPARTITION_LIMIT)
        || (p == 3 && n <= ORACLE_TRIPARTITION_LIMIT);
    if !feasible {
        return Err(PartitionError::OracleTooLarge { p, n });
    }
    let mut best: Option<(f64, Partition)> = None;
    let mut labels = vec![0usize; n];
    enumerate_partitions(&mut labels, 1, 0, p, h, &mut best);
    let (_, partition) = best.expect("p ≤ n guarantees at least one partition");
    let metrics = cut_cost(h, &partition);
    Ok(PartitionResult {
        method: Method::Oracle,
        partition,
        removed_edges: Vec::new(),
        fiedler: None,
        used_median_fallback: false,
        metrics,
    })
}

/// Recursively assigns labels in restricted-growth order (each new label
/// may exceed the running maximum by at most one, and node 0 is fixed at
/// label 0), which enumerates every set partition exactly once and in
/// lexicographic label order.
fn enumerate_partitions(
    labels: &mut Vec<usize>,
    node: usize,
    max_used: usize,
    p: usize,
    h: &Hypergraph,
    best: &mut Option<(f64, Partition)>,
) {
    let n = labels.len();
    if node == n {
        if max_used + 1 != p {
            return;
        }
        let partition =
            Partition::from_labels(labels.clone()).expect("restricted growth labels are canonical");
        let value = ratio_cut(h, &partition);
        if best.as_ref().map_or(true, |(b, _)| value < *b) {
            *best = Some((value, partition));
        }
        return;
    }
    // Prune: the remaining nodes must be able to open the missing labels.
    let remaining = n - node;
    let missing = p.saturating_sub(max_used + 1);
    if missing > remaining {
        return;
    }
    let cap = (max_used + 1).min(p - 1);
    for label in 0..=cap {
        labels[node] = label;
        enumerate_partitions(labels, node + 1, max_used.max(label), p, h, best);
    }
    labels[node] = 0;
}

/// Runs the sign baseline and the score method on the same eigenpair,
/// adds the oracle when the instance is small enough, and reports the
/// percentage improvement of score over sign. A zero baseline cut pins
/// the improvement to 0 and flags the record.
pub fn compare_methods(
    h: &Hypergraph,
    p: usize,
    kind: LaplacianKind,
    cfg: &SolverConfig,
) -> Result<MethodComparison, PartitionError> {
    check_cluster_count(h, p)?;
    let pair = solve_fiedler(h, kind, cfg)?;
    let lambda1 = pair.lambda;
    let sign = sign_partition_with(h, pair.clone());
    let score = score_partition_with(h, p, kind, pair)?;
    let oracle = match oracle_min_ratio_cut(h, p) {
        Ok(result) => Some(result),
        Err(PartitionError::OracleTooLarge { .. }) => None,
        Err(other) => return Err(other),
    };
    let r_f = sign.metrics.ratio_cut;
    let r_p = score.metrics.ratio_cut;
    let (pi, reference_degenerate) = improvement(r_f, r_p);
    Ok(MethodComparison {
        sign,
        score,
        oracle,
        r_f,
        r_p,
        pi,
        reference_degenerate,
        lambda1,
    })
}

/// Percentage improvement of the score method over the baseline, with the
/// convention that a non-positive baseline cut yields 0 and a raised flag
/// (the ratio is undefined there).
fn improvement(r_f: f64, r_p: f64) -> (f64, bool) {
    if r_f > 0.0 {
        ((r_f - r_p) / r_f * 100.0, false)
    } else {
        (0.0, true)
    }
}

fn check_cluster_count(h: &Hypergraph, p: usize) -> Result<(), PartitionError> {
    if p < 2 {
        return Err(PartitionError::ClusterCountTooSmall(p));
    }
    if p > h.n() {
        return Err(PartitionError::ClusterCountTooLarge { p, n: h.n() });
    }
    Ok(())
}

fn solve_fiedler(
    h: &Hypergraph,
    kind: LaplacianKind,
    cfg: &SolverConfig,
) -> Result<EigenPair, PartitionError> {
    let solution = solve(h, kind, cfg)?;
    Ok(fiedler_of(&solution, cfg)?)
}

/// Merges the two smallest clusters (ties by smallest member) until
/// exactly `p` remain.
fn merge_to(mut partition: Partition, p: usize) -> Partition {
    while partition.p() > p {
        let sizes = partition.sizes();
        let mut order: Vec<usize> = (0..partition.p()).collect();
        // Canonical cluster indices are already ordered by smallest
        // member, so a stable sort by size keeps that as the tiebreak.
        order.sort_by_key(|&c| sizes[c]);
        partition = partition.merge(order[0], order[1]);
    }
    partition
}
