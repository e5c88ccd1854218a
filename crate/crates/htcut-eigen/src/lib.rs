//! Z-eigenpair solver for hypergraph Laplacian operators.
//!
//! A Z-eigenpair of the order-k Laplacian is a unit vector x and scalar λ
//! with apply(x) = λx. Every connected hypergraph has the exact pair
//! (0, flat vector); the pair of interest for partitioning is the one with
//! the *minimum positive* eigenvalue, whose vector plays the role the
//! Fiedler vector plays for graphs.
//!
//! Graphs (k = 2) are solved exactly by a dense symmetric
//! eigendecomposition. For k ≥ 3 the solver runs multi-start
//! gentlest-ascent walks out of the flat minimum (see [`sphere`]), polishes
//! each endpoint with a damped Newton iteration, and merges the results
//! with deterministic deduplication, so equal seeds give bit-identical
//! spectra. Disconnected inputs are solved per component and re-embedded.

mod sphere;

use htcut_core::Hypergraph;
use htcut_tensor::{LaplacianKind, LaplacianOp, TensorError};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use sphere::{dot, norm, normalize};
use thiserror::Error;

/// Residual bound every returned eigenpair satisfies.
const RESIDUAL_ACCEPT: f64 = 1e-8;
/// Residual bound for the dense matrix Fiedler path.
const MATRIX_RESIDUAL_ACCEPT: f64 = 1e-10;
/// Vector distance (up to sign) under which two pairs with clustered
/// eigenvalues are considered the same.
const VECTOR_MERGE_TOL: f64 = 1e-4;
/// Mixing weight of the random tangent noise in each restart direction.
const NOISE_WEIGHT: f64 = 0.3;
/// How far from the flat vector each walk begins.
const LAUNCH_OFFSET: f64 = 0.05;
/// Brute-force conductance is limited to this many nodes.
const BRUTE_FORCE_LIMIT: usize = 16;

/// Errors raised by the eigensolver.
#[derive(Debug, Error, PartialEq)]
pub enum EigenError {
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("hypergraph needs at least 2 nodes, got {0}")]
    TooSmall(usize),

    #[error("no restart converged; best residual {best_residual:.3e}")]
    NoConvergence { best_residual: f64 },

    #[error("no eigenvalue above the positivity threshold {threshold:.1e} was found")]
    NoPositivePair { threshold: f64 },

    #[error("the conductance bound is defined for even k, got k={0}")]
    OddOrder(usize),

    #[error("conductance is brute-forced over bipartitions; n={n} exceeds the limit of {limit}")]
    TooLargeForBruteForce { n: usize, limit: usize },

    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// One Z-eigenpair: apply(vector) = lambda · vector with ‖vector‖₂ = 1.
///
/// Canonical orientation: for odd k a pair with lambda below the negative
/// positivity threshold is flipped to (−lambda, −vector), so reported
/// spectra are nonnegative; wherever the equation leaves the vector sign
/// free (even k, or lambda ≈ 0), the largest-magnitude entry is made
/// positive, earliest such entry deciding ties.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub lambda: f64,
    pub vector: Vec<f64>,
    /// ‖apply(vector) − lambda·vector‖₂, recomputed from the stored fields.
    pub residual: f64,
    /// Whether the residual meets the solver's acceptance bound.
    pub converged: bool,
}

/// Knobs for the multi-start solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Independent walk restarts per connected component.
    pub restarts: usize,
    /// Iteration budget per walk.
    pub max_iters: usize,
    /// Iterate-movement tolerance; a walk moving less than this stalls out.
    pub tol: f64,
    /// Eigenvalues closer than this are candidates for deduplication.
    pub cluster_tol: f64,
    /// Eigenvalues above this threshold count as positive.
    pub positivity: f64,
    /// Seed for the restart directions.
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            restarts: 64,
            max_iters: 5000,
            tol: 1e-12,
            cluster_tol: 1e-6,
            positivity: 1e-8,
            seed: 0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), EigenError> {
        if self.restarts == 0 {
            return Err(EigenError::InvalidConfig("restarts must be at least 1".into()));
        }
        if self.max_iters == 0 {
            return Err(EigenError::InvalidConfig("max_iters must be at least 1".into()));
        }
        for (name, value) in [
            ("tol", self.tol),
            ("cluster_tol", self.cluster_tol),
            ("positivity", self.positivity),
        ] {
            if !(value > 0.0) {
                return Err(EigenError::InvalidConfig(format!(
                    "{name} must be positive, got {value}"
                )));
            }
        }
        Ok(())
    }
}

/// Everything one solver run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    /// Distinct eigenpairs, ascending by eigenvalue then lexicographically
    /// by vector.
    pub pairs: Vec<EigenPair>,
    /// The smallest positive eigenvalue each restart settled on (`None`
    /// when a restart found no positive pair). Empty for the dense k = 2
    /// path, which needs no restarts. On disconnected inputs this reports
    /// the component that produced the overall minimum positive eigenvalue.
    pub restart_lambdas: Vec<Option<f64>>,
}

impl Solution {
    /// Restarts whose settled eigenvalue lies within `window` of `lambda`.
    pub fn restarts_agreeing(&self, lambda: f64, window: f64) -> usize {
        self.restart_lambdas
            .iter()
            .flatten()
            .filter(|&&l| (l - lambda).abs() <= window)
            .count()
    }

    /// Restarts that settled on a positive eigenvalue below `cap`.
    pub fn restarts_positive_below(&self, cap: f64) -> usize {
        self.restart_lambdas.iter().flatten().filter(|&&l| l < cap).count()
    }
}

/// Outcome of the Cheeger-type bound check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCheck {
    /// Minimum positive eigenvalue of the normalized operator.
    pub lambda1: f64,
    /// Conductance, brute-forced over all bipartitions.
    pub phi: f64,
    /// Whether lambda1 ≤ k·phi held (with 1e-9 slack).
    pub holds: bool,
}

/// All distinct eigenpairs the solver found, ascending by eigenvalue.
pub fn find_eigenpairs(
    h: &Hypergraph,
    kind: LaplacianKind,
    cfg: &SolverConfig,
) -> Result<Vec<EigenPair>, EigenError> {
    Ok(solve(h, kind, cfg)?.pairs)
}

/// The eigenpair with the smallest eigenvalue above the positivity
/// threshold.
pub fn fiedler(
    h: &Hypergraph,
    kind: LaplacianKind,
    cfg: &SolverConfig,
) -> Result<EigenPair, EigenError> {
    fiedler_of(&solve(h, kind, cfg)?, cfg)
}

/// Picks the minimum-positive pair out of an existing solution.
pub fn fiedler_of(solution: &Solution, cfg: &SolverConfig) -> Result<EigenPair, EigenError> {
    solution
        .pairs
        .iter()
        .find(|p| p.lambda > cfg.positivity)
        .cloned()
        .ok_or(EigenError::NoPositivePair {
            threshold: cfg.positivity,
        })
}

/// Full solver entry point; see the module docs for the strategy.
pub fn solve(h: &Hypergraph, kind: LaplacianKind, cfg: &SolverConfig) -> Result<Solution, EigenError> {
    cfg.validate()?;
    if h.n() < 2 {
        return Err(EigenError::TooSmall(h.n()));
    }
    let op = LaplacianOp::new(h, kind)?;

    if h.k() == 2 {
        let mut candidates = vec![exact_flat_pair(&op)];
        candidates.extend(dense_spectrum(&op, cfg));
        return Ok(Solution {
            pairs: dedup_pairs(candidates, cfg.cluster_tol),
            restart_lambdas: Vec::new(),
        });
    }

    let components = h.connected_components(&[]);
    if components.p() == 1 {
        return walk_component(&op, cfg);
    }

    let mut candidates = vec![exact_flat_pair(&op)];
    let mut winner: Option<(f64, Vec<Option<f64>>)> = None;
    for cluster in components.clusters() {
        if cluster.len() == 1 {
            // An isolated node (degree zero, unnormalized kind only): its
            // indicator vector is an exact zero-eigenvalue pair.
            let mut e = vec![0.0; h.n()];
            e[cluster[0]] = 1.0;
            candidates.push(make_pair(&op, e, cfg.positivity));
            continue;
        }
        let mut to_local = vec![usize::MAX; h.n()];
        for (local, &global) in cluster.iter().enumerate() {
            to_local[global] = local;
        }
        let sub_edges = h
            .edges()
            .iter()
            .filter(|e| to_local[e.nodes()[0]] != usize::MAX)
            .map(|e| {
                (
                    e.nodes().iter().map(|&v| to_local[v]).collect::<Vec<_>>(),
                    e.weight(),
                )
            });
        let sub = Hypergraph::new(cluster.len(), h.k(), sub_edges)
            .expect("a connected component is a valid hypergraph");
        let sub_op = LaplacianOp::new(&sub, kind)?;
        let solved = walk_component(&sub_op, cfg)?;
        let mut component_min: Option<f64> = None;
        for pair in solved.pairs {
            let mut padded = vec![0.0; h.n()];
            for (local, &global) in cluster.iter().enumerate() {
                padded[global] = pair.vector[local];
            }
            let embedded = make_pair(&op, padded, cfg.positivity);
            if embedded.lambda > cfg.positivity {
                component_min = Some(component_min.map_or(embedded.lambda, |m: f64| m.min(embedded.lambda)));
            }
            candidates.push(embedded);
        }
        if let Some(lambda) = component_min {
            if winner.as_ref().map_or(true, |(best, _)| lambda < *best) {
                winner = Some((lambda, solved.restart_lambdas));
            }
        }
    }
    Ok(Solution {
        pairs: dedup_pairs(candidates, cfg.cluster_tol),
        restart_lambdas: winner.map(|(_, l)| l).unwrap_or_default(),
    })
}

/// Second-smallest eigenpair of a symmetric matrix with near-zero row sums,
/// obtained by shifting the constant vector out of the bottom of the
/// spectrum and taking the smallest remaining pair.
pub fn matrix_fiedler(rows: &[Vec<f64>], cfg: &SolverConfig) -> Result<EigenPair, EigenError> {
    cfg.validate()?;
    let n = rows.len();
    if n < 2 {
        return Err(EigenError::TooSmall(n));
    }
    if rows.iter().any(|r| r.len() != n) {
        return Err(EigenError::InvalidConfig(
            "matrix_fiedler needs a square matrix".into(),
        ));
    }
    let l = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let shift = l.trace() + 1.0;
    let deflated = &l + DMatrix::from_element(n, n, shift / n as f64);
    let sym = nalgebra::SymmetricEigen::new(deflated);
    let mut idx = 0;
    for i in 1..n {
        if sym.eigenvalues[i] < sym.eigenvalues[idx] {
            idx = i;
        }
    }
    let mut vector: Vec<f64> = sym.eigenvectors.column(idx).iter().copied().collect();
    refine_dense_vector(&l, &mut vector);
    normalize(&mut vector);
    orient_largest_entry(&mut vector);
    let v = DVector::from_column_slice(&vector);
    let lambda = (v.transpose() * &l * &v)[(0, 0)];
    let residual = (&l * &v - lambda * &v).norm();
    if residual > MATRIX_RESIDUAL_ACCEPT {
        return Err(EigenError::NoConvergence {
            best_residual: residual,
        });
    }
    Ok(EigenPair {
        lambda,
        vector,
        residual,
        converged: true,
    })
}

/// Verifies the Cheeger-type bound λ1(normalized) ≤ k·φ on an even-order
/// hypergraph, brute-forcing the conductance over all 2^{n−1} − 1
/// bipartitions.
pub fn check_bound(h: &Hypergraph, cfg: &SolverConfig) -> Result<BoundCheck, EigenError> {
    if h.k() % 2 != 0 {
        return Err(EigenError::OddOrder(h.k()));
    }
    if h.n() > BRUTE_FORCE_LIMIT {
        return Err(EigenError::TooLargeForBruteForce {
            n: h.n(),
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let lambda1 = fiedler(h, LaplacianKind::Normalized, cfg)?.lambda;
    let phi = brute_force_conductance(h);
    Ok(BoundCheck {
        lambda1,
        phi,
        holds: lambda1 <= h.k() as f64 * phi + 1e-9,
    })
}

/// Minimum over all bipartitions of boundary weight / smaller volume.
/// Node 0 stays on the complement side, which covers every bipartition
/// once.
fn brute_force_conductance(h: &Hypergraph) -> f64 {
    let n = h.n();
    let incidence = h.incidence();
    let degrees = incidence.degrees();
    let total_volume: f64 = degrees.iter().sum();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let edge_masks: Vec<(u32, f64)> = h
        .edges()
        .iter()
        .map(|e| {
            (
                e.nodes().iter().fold(0u32, |m, &v| m | (1 << v)),
                e.weight(),
            )
        })
        .collect();
    let mut phi = f64::INFINITY;
    for subset in 1u32..(1 << (n - 1)) {
        let mask = subset << 1;
        let mut boundary = 0.0;
        for &(em, w) in &edge_masks {
            if em & mask != 0 && em & !mask & full != 0 {
                boundary += w;
            }
        }
        let mut vol = 0.0;
        for (i, d) in degrees.iter().enumerate() {
            if mask & (1 << i) != 0 {
                vol += d;
            }
        }
        let small = vol.min(total_volume - vol);
        if small > 0.0 {
            phi = phi.min(boundary / small);
        }
    }
    phi
}

/// The exact zero-eigenvalue pair the operator is built to annihilate:
/// the uniform vector for the unnormalized kind, degrees^{1/k} for the
/// normalized kind.
fn exact_flat_pair(op: &LaplacianOp<'_>) -> EigenPair {
    let vector = flat_vector(op);
    let applied = op.apply(&vector).expect("flat vector has matching length");
    let residual = norm(&applied);
    EigenPair {
        lambda: 0.0,
        vector,
        residual,
        converged: residual <= RESIDUAL_ACCEPT,
    }
}

fn flat_vector(op: &LaplacianOp<'_>) -> Vec<f64> {
    let h = op.hypergraph();
    let mut v = match op.kind() {
        LaplacianKind::Unnormalized => vec![1.0; h.n()],
        LaplacianKind::Normalized => {
            let incidence = h.incidence();
            incidence
                .degrees()
                .iter()
                .map(|&d| d.powf(1.0 / h.k() as f64))
                .collect()
        }
    };
    normalize(&mut v);
    v
}

/// Normalizes, orients, and measures a candidate vector as an eigenpair.
fn make_pair(op: &LaplacianOp<'_>, mut vector: Vec<f64>, positivity: f64) -> EigenPair {
    normalize(&mut vector);
    let k = op.hypergraph().k();
    let mut lambda = op.rayleigh(&vector).expect("vector length matches");
    if k % 2 == 1 && lambda < -positivity {
        // For odd k, (λ, x) and (−λ, −x) are the same pair; report the
        // nonnegative representative.
        vector.iter_mut().for_each(|e| *e = -*e);
        lambda = -lambda;
    }
    if k % 2 == 0 || lambda.abs() <= positivity {
        orient_largest_entry(&mut vector);
    }
    let applied = op.apply(&vector).expect("vector length matches");
    let residual = applied
        .iter()
        .zip(&vector)
        .map(|(&a, &v)| (a - lambda * v) * (a - lambda * v))
        .sum::<f64>()
        .sqrt();
    EigenPair {
        lambda,
        vector,
        residual,
        converged: residual <= RESIDUAL_ACCEPT,
    }
}

/// Flips the vector so its largest-magnitude entry (earliest on ties) is
/// positive. Only valid where the eigen-equation leaves the sign free.
fn orient_largest_entry(vector: &mut [f64]) {
    let mut idx = 0;
    for i in 1..vector.len() {
        if vector[i].abs() > vector[idx].abs() {
            idx = i;
        }
    }
    if vector[idx] < 0.0 {
        vector.iter_mut().for_each(|e| *e = -*e);
    }
}

/// Dense exact spectrum for graphs: the k = 2 operator is an ordinary
/// symmetric matrix.
/// Sharpens a dense eigenvector with up to two inverse-iteration steps,
/// keeping each step only when it lowers the residual.
///
/// The QR eigensolver's per-coordinate error (~n·ε·‖L‖) swamps the
/// smallest coordinates of Fiedler vectors on long path-like graphs —
/// they decay geometrically to ~1e-13 — and sign-based partitions read
/// exactly those signs. Positive-eigenvalue pairs of a Laplacian are
/// orthogonal to the flat vector in exact arithmetic, so that component
/// is projected out as pure noise.
fn refine_dense_vector(l: &DMatrix<f64>, vector: &mut [f64]) {
    let n = l.nrows();
    for _ in 0..2 {
        let v = DVector::from_column_slice(vector);
        let lambda = (v.transpose() * l * &v)[(0, 0)];
        let before = (l * &v - lambda * &v).norm();
        if before == 0.0 {
            return;
        }
        let mut shifted = l.clone();
        for i in 0..n {
            shifted[(i, i)] -= lambda;
        }
        let Some(mut y) = shifted.lu().solve(&v) else {
            return;
        };
        if lambda.abs() > 1e-8 {
            let mean = y.mean();
            y.add_scalar_mut(-mean);
        }
        let norm = y.norm();
        if !norm.is_finite() || norm == 0.0 {
            return;
        }
        y /= norm;
        let mu = (y.transpose() * l * &y)[(0, 0)];
        let after = (l * &y - mu * &y).norm();
        if after >= before {
            return;
        }
        vector.copy_from_slice(y.as_slice());
    }
}

fn dense_spectrum(op: &LaplacianOp<'_>, cfg: &SolverConfig) -> Vec<EigenPair> {
    let h = op.hypergraph();
    let n = h.n();
    let mut l = DMatrix::zeros(n, n);
    for (i, &kappa) in op.diagonal().iter().enumerate() {
        l[(i, i)] = kappa;
    }
    for (e, &c) in h.edges().iter().zip(op.edge_coefficients()) {
        let (a, b) = (e.nodes()[0], e.nodes()[1]);
        l[(a, b)] -= c;
        l[(b, a)] -= c;
    }
    let sym = nalgebra::SymmetricEigen::new(l.clone());
    (0..n)
        .map(|i| {
            let mut column: Vec<f64> = sym.eigenvectors.column(i).iter().copied().collect();
            refine_dense_vector(&l, &mut column);
            make_pair(op, column, cfg.positivity)
        })
        .collect()
}

struct RestartOutcome {
    pairs: Vec<EigenPair>,
    min_positive: Option<f64>,
    best_residual: f64,
}

/// Budget multipliers tried in turn when the configured iteration cap leaves
/// every walk short of an accepted positive pair.  Nearly decoupled
/// components flatten the landscape around the anchor so severely that walks
/// cut off mid-descent strand the polisher outside its basin; rerunning the
/// same seeded walks with more headroom lets them finish.  Healthy instances
/// accept a pair on the first attempt and never pay for the retries.
const BUDGET_SCHEDULE: [usize; 3] = [1, 4, 16];

/// Multi-start saddle search on one connected component of order k ≥ 3.
fn walk_component(op: &LaplacianOp<'_>, cfg: &SolverConfig) -> Result<Solution, EigenError> {
    let anchor = flat_vector(op);
    let launch_mode = sphere::lowest_tangent_mode(op, &anchor, 0.0, &anchor_free_hint(&anchor));

    let mut best_residual = f64::INFINITY;
    let mut fallback: Option<Solution> = None;
    for (attempt, scale) in BUDGET_SCHEDULE.iter().enumerate() {
        let budget = cfg.max_iters.saturating_mul(*scale);
        let outcomes: Vec<RestartOutcome> = (0..cfg.restarts)
            .into_par_iter()
            .map(|r| run_restart(op, &anchor, &launch_mode, cfg, budget, r as u64))
            .collect();

        let mut candidates = vec![exact_flat_pair(op)];
        let mut restart_lambdas = Vec::with_capacity(cfg.restarts);
        let mut any_converged = false;
        let mut any_positive = false;
        for outcome in outcomes {
            any_converged |= !outcome.pairs.is_empty();
            any_positive |= outcome.min_positive.is_some();
            best_residual = best_residual.min(outcome.best_residual);
            candidates.extend(outcome.pairs);
            restart_lambdas.push(outcome.min_positive);
        }
        let solution = Solution {
            pairs: dedup_pairs(candidates, cfg.cluster_tol),
            restart_lambdas,
        };
        if any_positive || attempt + 1 == BUDGET_SCHEDULE.len() {
            if any_converged {
                return Ok(solution);
            }
            break;
        }
        if any_converged {
            fallback = Some(solution);
        }
    }
    // Every budget failed to surface a positive pair; report whatever
    // converged so the caller can distinguish "only the flat pair" from
    // "nothing at all".
    fallback.ok_or(EigenError::NoConvergence { best_residual })
}

/// An arbitrary fixed tangent direction used only to fix the launch mode's
/// sign deterministically.
fn anchor_free_hint(anchor: &[f64]) -> Vec<f64> {
    let mut hint = vec![0.0; anchor.len()];
    hint[0] = 1.0;
    let radial = dot(&hint, anchor);
    hint.iter_mut().zip(anchor).for_each(|(e, &a)| *e -= radial * a);
    normalize(&mut hint);
    hint
}

fn run_restart(
    op: &LaplacianOp<'_>,
    anchor: &[f64],
    launch_mode: &[f64],
    cfg: &SolverConfig,
    max_iters: usize,
    restart: u64,
) -> RestartOutcome {
    let n = anchor.len();
    let mut rng = ChaCha8Rng::seed_from_u64(
        cfg.seed ^ (restart.wrapping_add(1)).wrapping_mul(0x9E37_79B9_7F4A_7C15),
    );
    let mut noise: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    let radial = dot(&noise, anchor);
    noise.iter_mut().zip(anchor).for_each(|(e, &a)| *e -= radial * a);
    normalize(&mut noise);

    let mut outcome = RestartOutcome {
        pairs: Vec::new(),
        min_positive: None,
        best_residual: f64::INFINITY,
    };
    for sign in [1.0, -1.0] {
        let mut direction: Vec<f64> = launch_mode
            .iter()
            .zip(&noise)
            .map(|(&m, &z)| sign * m + NOISE_WEIGHT * z)
            .collect();
        let radial = dot(&direction, anchor);
        direction
            .iter_mut()
            .zip(anchor)
            .for_each(|(e, &a)| *e -= radial * a);
        normalize(&mut direction);
        let x0: Vec<f64> = anchor
            .iter()
            .zip(&direction)
            .map(|(&a, &d)| a + LAUNCH_OFFSET * d)
            .collect();

        let endpoint = sphere::gentlest_ascent(op, &x0, &direction, anchor, max_iters, cfg.tol);
        let (x, _) = sphere::polish(op, &endpoint);
        let pair = make_pair(op, x, cfg.positivity);
        if !pair.converged {
            outcome.best_residual = outcome.best_residual.min(pair.residual);
            continue;
        }
        if pair.lambda > cfg.positivity {
            outcome.min_positive = Some(
                outcome
                    .min_positive
                    .map_or(pair.lambda, |m: f64| m.min(pair.lambda)),
            );
        }
        outcome.pairs.push(pair);
    }
    outcome
}

fn lex_compare(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let ord = x.total_cmp(y);
        if ord != std::cmp::Ordering::Equal {
            return ord;
        }
    }
    std::cmp::Ordering::Equal
}

fn same_pair(a: &EigenPair, b: &EigenPair, cluster_tol: f64) -> bool {
    if (a.lambda - b.lambda).abs() > cluster_tol {
        return false;
    }
    let mut direct = 0.0;
    let mut flipped = 0.0;
    for (x, y) in a.vector.iter().zip(&b.vector) {
        direct += (x - y) * (x - y);
        flipped += (x + y) * (x + y);
    }
    direct.sqrt().min(flipped.sqrt()) <= VECTOR_MERGE_TOL
}

/// Keeps one representative per (eigenvalue, vector-up-to-sign) cluster,
/// preferring the smallest residual, then orders by eigenvalue and vector.
fn dedup_pairs(mut candidates: Vec<EigenPair>, cluster_tol: f64) -> Vec<EigenPair> {
    candidates.sort_by(|a, b| {
        a.residual
            .total_cmp(&b.residual)
            .then(a.lambda.total_cmp(&b.lambda))
            .then_with(|| lex_compare(&a.vector, &b.vector))
    });
    let mut kept: Vec<EigenPair> = Vec::new();
    for candidate in candidates {
        if !kept.iter().any(|k| same_pair(k, &candidate, cluster_tol)) {
            kept.push(candidate);
        }
    }
    kept.sort_by(|a, b| {
        a.lambda
            .total_cmp(&b.lambda)
            .then_with(|| lex_compare(&a.vector, &b.vector))
    });
    kept
}
