//! Saddle search on the unit sphere for orders k ≥ 3.
//!
//! The Laplacian objective restricted to the sphere has its global minimum
//! at the flat vector, and the eigenpair driving the partition is the
//! *lowest saddle* adjacent to it. Plain gradient descent can never reach a
//! saddle, so the walker uses gentlest-ascent dynamics: it follows the
//! negative gradient with its component along the softest Hessian mode
//! reversed, which climbs the shallowest valley out of the minimum and
//! settles on the index-1 stationary point at its top. A damped
//! least-squares iteration on the eigenpair equations then sharpens the
//! endpoint to full precision; the damping keeps the polish convergent even
//! on degenerate eigenpairs, where whole manifolds of eigenvectors share
//! one eigenvalue and an undamped Newton step has a singular system.

use htcut_tensor::LaplacianOp;
use nalgebra::{DMatrix, DVector};

/// Gradient norm below which the walker hands over to the polish.
const GRAD_TOL: f64 = 1e-10;
/// Nominal step size of the walker.
const ETA: f64 = 0.02;
/// Hard cap on the distance moved per step.
const STEP_CAP: f64 = 0.05;
/// Largest dimension for which the softest Hessian mode is recomputed by a
/// dense eigendecomposition every step; above it a warm-started shifted
/// power iteration is used instead.
const DENSE_MODE_LIMIT: usize = 64;
/// The walker gives up early when the gradient norm is already below this
/// and has not improved for [`STALL_PATIENCE`] steps; near a degenerate
/// stationary point first-order dynamics crawl, and the polish finishes
/// the job far faster.
const STALL_GRAD: f64 = 1e-4;
const STALL_PATIENCE: usize = 500;
/// Polish damping: update steps larger than this norm are scaled down.
const POLISH_CAP: f64 = 0.5;
const POLISH_MAX_ITERS: usize = 200;
const POLISH_TOL: f64 = 1e-13;

pub(crate) fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn normalize(x: &mut [f64]) {
    let n = norm(x);
    if n > 0.0 {
        x.iter_mut().for_each(|v| *v /= n);
    }
}

/// Jacobian M(x) of the operator application, M_ij = ∂ apply_i / ∂ x_j.
/// It is symmetric, and the objective's Hessian is k·M.
pub(crate) fn jacobian(op: &LaplacianOp<'_>, x: &[f64]) -> DMatrix<f64> {
    let h = op.hypergraph();
    let (n, k) = (h.n(), h.k());
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = op.diagonal()[i] * (k as f64 - 1.0) * x[i].powi(k as i32 - 2);
    }
    for (e, c) in h.edges().iter().zip(op.edge_coefficients()) {
        let nodes = e.nodes();
        for a in 0..k {
            for b in (a + 1)..k {
                let mut prod = 1.0;
                for (t, &v) in nodes.iter().enumerate() {
                    if t != a && t != b {
                        prod *= x[v];
                    }
                }
                m[(nodes[a], nodes[b])] -= c * prod;
                m[(nodes[b], nodes[a])] -= c * prod;
            }
        }
    }
    m
}

/// Matrix-free product z ↦ M(x)·z, accumulated edge by edge.
fn jacobian_vec(op: &LaplacianOp<'_>, x: &[f64], z: &[f64], out: &mut [f64]) {
    let h = op.hypergraph();
    let k = h.k();
    for (i, o) in out.iter_mut().enumerate() {
        *o = op.diagonal()[i] * (k as f64 - 1.0) * x[i].powi(k as i32 - 2) * z[i];
    }
    for (e, c) in h.edges().iter().zip(op.edge_coefficients()) {
        let nodes = e.nodes();
        for (a, &i) in nodes.iter().enumerate() {
            let mut acc = 0.0;
            for (b, &s) in nodes.iter().enumerate() {
                if a == b {
                    continue;
                }
                let mut prod = z[s];
                for (t, &v) in nodes.iter().enumerate() {
                    if t != a && t != b {
                        prod *= x[v];
                    }
                }
                acc += prod;
            }
            out[i] -= c * acc;
        }
    }
}

/// Softest mode of the projected Hessian P(k·M(x) − k·λ·I)P at `x`, where
/// P = I − xxᵀ. The returned vector is a unit tangent direction; `hint`
/// fixes its sign and warm-starts the iterative path.
pub(crate) fn lowest_tangent_mode(
    op: &LaplacianOp<'_>,
    x: &[f64],
    lambda: f64,
    hint: &[f64],
) -> Vec<f64> {
    let n = x.len();
    let mut v = if n <= DENSE_MODE_LIMIT {
        lowest_mode_dense(op, x, lambda)
    } else {
        lowest_mode_power(op, x, lambda, hint)
    };
    if dot(&v, hint) < 0.0 {
        v.iter_mut().for_each(|e| *e = -*e);
    }
    v
}

fn lowest_mode_dense(op: &LaplacianOp<'_>, x: &[f64], lambda: f64) -> Vec<f64> {
    let n = x.len();
    let k = op.hypergraph().k() as f64;
    let mut hess = jacobian(op, x) * k;
    for i in 0..n {
        hess[(i, i)] -= k * lambda;
    }
    let xv = DVector::from_column_slice(x);
    let p = DMatrix::identity(n, n) - &xv * xv.transpose();
    let projected = &p * hess * &p;
    let sym = nalgebra::SymmetricEigen::new(projected);
    let mut best: Option<(f64, usize)> = None;
    for i in 0..n {
        let col = sym.eigenvectors.column(i);
        // Skip the radial direction that projection maps to zero.
        if dot(col.as_slice(), x).abs() > 0.9 {
            continue;
        }
        if best.map_or(true, |(val, _)| sym.eigenvalues[i] < val) {
            best = Some((sym.eigenvalues[i], i));
        }
    }
    let idx = best.map_or(0, |(_, i)| i);
    sym.eigenvectors.column(idx).as_slice().to_vec()
}

/// Warm-started power iteration on (cI − H) with H the projected Hessian;
/// its dominant mode is H's softest one when c clears the spectrum.
fn lowest_mode_power(op: &LaplacianOp<'_>, x: &[f64], lambda: f64, hint: &[f64]) -> Vec<f64> {
    let n = x.len();
    let k = op.hypergraph().k() as f64;
    // Gershgorin-style bound on ‖H‖ from the largest absolute row sum of M.
    let mut row_bound = 0.0f64;
    {
        let h = op.hypergraph();
        let mut rows = vec![0.0f64; n];
        for (i, r) in rows.iter_mut().enumerate() {
            *r = (op.diagonal()[i] * (h.k() as f64 - 1.0) * x[i].powi(h.k() as i32 - 2)).abs();
        }
        for (e, c) in h.edges().iter().zip(op.edge_coefficients()) {
            let nodes = e.nodes();
            for (a, &i) in nodes.iter().enumerate() {
                for (b, _) in nodes.iter().enumerate() {
                    if a == b {
                        continue;
                    }
                    let mut prod = c.abs();
                    for (t, &v) in nodes.iter().enumerate() {
                        if t != a && t != b {
                            prod *= x[v].abs();
                        }
                    }
                    rows[i] += prod;
                }
            }
        }
        for r in rows {
            row_bound = row_bound.max(r);
        }
    }
    let c_shift = k * (row_bound + lambda.abs()) + 1.0;

    let mut v: Vec<f64> = hint.to_vec();
    let radial = dot(&v, x);
    v.iter_mut().zip(x).for_each(|(e, &xi)| *e -= radial * xi);
    normalize(&mut v);
    let mut work = vec![0.0; n];
    for _ in 0..24 {
        // H v = P (k·M − k·λ) P v; v is already tangent.
        jacobian_vec(op, x, &v, &mut work);
        let mut hv: Vec<f64> = work.iter().zip(&v).map(|(&mv, &vi)| k * (mv - lambda * vi)).collect();
        let r = dot(&hv, x);
        hv.iter_mut().zip(x).for_each(|(e, &xi)| *e -= r * xi);
        // next = (cI − H) v
        let mut next: Vec<f64> = v
            .iter()
            .zip(&hv)
            .map(|(&vi, &hvi)| c_shift * vi - hvi)
            .collect();
        let radial = dot(&next, x);
        next.iter_mut().zip(x).for_each(|(e, &xi)| *e -= radial * xi);
        normalize(&mut next);
        v = next;
    }
    v
}

/// Gentlest-ascent walk from `x0`, with `v0` as the initial softest-mode
/// guess and `anchor` the flat stationary point the walk must escape.
/// Returns the endpoint, which the caller hands to [`polish`]; the walk
/// stops when the tangent gradient vanishes away from the anchor, when it
/// stalls, or when the iteration budget runs out.
pub(crate) fn gentlest_ascent(
    op: &LaplacianOp<'_>,
    x0: &[f64],
    v0: &[f64],
    anchor: &[f64],
    max_iters: usize,
    move_tol: f64,
) -> Vec<f64> {
    let k = op.hypergraph().k() as f64;
    let n = x0.len();
    let mut x = x0.to_vec();
    normalize(&mut x);
    let mut v = v0.to_vec();
    let mut grad = vec![0.0; n];
    let mut best_gn = f64::INFINITY;
    let mut last_gain = 0;
    for it in 0..max_iters {
        op.apply_into(&x, &mut grad);
        let lambda = dot(&x, &grad);
        let mut tg: Vec<f64> = grad.iter().map(|&g| k * g).collect();
        let radial = dot(&tg, &x);
        tg.iter_mut().zip(&x).for_each(|(e, &xi)| *e -= radial * xi);
        let gn = norm(&tg);
        let from_anchor: f64 = x
            .iter()
            .zip(anchor)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        if gn < GRAD_TOL && from_anchor > 1e-3 {
            break;
        }
        if gn < 0.9 * best_gn {
            best_gn = gn;
            last_gain = it;
        }
        if gn < STALL_GRAD && it - last_gain > STALL_PATIENCE {
            break;
        }
        v = lowest_tangent_mode(op, &x, lambda, &v);
        let along = dot(&tg, &v);
        let d: Vec<f64> = tg
            .iter()
            .zip(&v)
            .map(|(&g, &vi)| -g + 2.0 * along * vi)
            .collect();
        let dn = norm(&d);
        if dn * ETA < move_tol {
            // The walk has stalled without meeting the gradient tolerance.
            break;
        }
        let step = if dn * ETA < STEP_CAP { ETA } else { STEP_CAP / dn };
        x.iter_mut().zip(&d).for_each(|(e, &di)| *e += step * di);
        normalize(&mut x);
    }
    x
}

/// Levenberg–Marquardt iteration on F(x, λ) = (apply(x) − λx, (xᵀx − 1)/2):
/// each step solves (JᵀJ + μI)·δ = −JᵀF with damping μ = ‖F‖, which stays
/// quadratically convergent on isolated roots and still converges when the
/// solution set is a manifold and J is singular there. Returns the last
/// iterate unconditionally; a residual check decides acceptance upstream.
pub(crate) fn polish(op: &LaplacianOp<'_>, x0: &[f64]) -> (Vec<f64>, f64) {
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut lambda = op.rayleigh(&x).expect("polish start has matching length");
    let mut applied = vec![0.0; n];
    for _ in 0..POLISH_MAX_ITERS {
        op.apply_into(&x, &mut applied);
        let mut f = DVector::zeros(n + 1);
        for i in 0..n {
            f[i] = applied[i] - lambda * x[i];
        }
        f[n] = (dot(&x, &x) - 1.0) / 2.0;
        let fn_ = f.norm();
        if fn_ < POLISH_TOL {
            break;
        }
        let m = jacobian(op, &x);
        let mut j = DMatrix::zeros(n + 1, n + 1);
        for r in 0..n {
            for c in 0..n {
                j[(r, c)] = m[(r, c)];
            }
            j[(r, r)] -= lambda;
            j[(r, n)] = -x[r];
            j[(n, r)] = x[r];
        }
        let mut a = j.transpose() * &j;
        for d in 0..(n + 1) {
            a[(d, d)] += fn_;
        }
        let rhs = j.transpose() * (-f);
        let Some(delta) = a.lu().solve(&rhs) else {
            break;
        };
        let mut step = delta;
        let s = step.norm();
        if s > POLISH_CAP {
            step *= POLISH_CAP / s;
        }
        for i in 0..n {
            x[i] += step[i];
        }
        lambda += step[n];
    }
    (x, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use htcut_core::Hypergraph;
    use htcut_tensor::LaplacianKind;

    fn sample() -> Hypergraph {
        Hypergraph::new(
            5,
            3,
            vec![
                (vec![0, 1, 2], 1.0),
                (vec![1, 2, 3], 0.5),
                (vec![2, 3, 4], 2.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let h = sample();
        for kind in [LaplacianKind::Unnormalized, LaplacianKind::Normalized] {
            let op = LaplacianOp::new(&h, kind).unwrap();
            let x = [0.3, -0.5, 0.7, 0.2, -0.4];
            let m = jacobian(&op, &x);
            let eps = 1e-6;
            for j in 0..5 {
                let mut hi = x;
                let mut lo = x;
                hi[j] += eps;
                lo[j] -= eps;
                let fhi = op.apply(&hi).unwrap();
                let flo = op.apply(&lo).unwrap();
                for i in 0..5 {
                    let fd = (fhi[i] - flo[i]) / (2.0 * eps);
                    assert!(
                        (m[(i, j)] - fd).abs() < 1e-6,
                        "jacobian entry ({i},{j}) = {} but finite difference gives {fd}",
                        m[(i, j)]
                    );
                }
            }
        }
    }

    #[test]
    fn jacobian_is_exactly_symmetric() {
        let h = sample();
        let op = LaplacianOp::new(&h, LaplacianKind::Unnormalized).unwrap();
        let x = [0.9, -0.1, 0.42, -0.77, 0.13];
        let m = jacobian(&op, &x);
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(m[(i, j)], m[(j, i)], "asymmetry at ({i},{j})");
            }
        }
    }

    #[test]
    fn power_iteration_agrees_with_dense_mode() {
        let h = sample();
        let op = LaplacianOp::new(&h, LaplacianKind::Unnormalized).unwrap();
        let mut x = vec![0.21, 0.81, -0.11, 0.44, 0.3];
        normalize(&mut x);
        let lambda = op.rayleigh(&x).unwrap();
        let dense = lowest_mode_dense(&op, &x, lambda);
        let mut hint = dense.clone();
        // Start the power iteration from a deliberately imperfect hint.
        hint[0] += 0.4;
        normalize(&mut hint);
        let mut power = lowest_mode_power(&op, &x, lambda, &hint);
        if dot(&power, &dense) < 0.0 {
            power.iter_mut().for_each(|e| *e = -*e);
        }
        let diff: f64 = power
            .iter()
            .zip(&dense)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        assert!(diff < 1e-3, "power mode drifted {diff} from the dense mode");
    }

    #[test]
    fn polish_recovers_matrix_eigenpair_on_graph() {
        // Path 1-2-3 as a 2-uniform operator: polishing a rough guess of
        // the (1, (1,0,-1)/√2) eigenpair must land on it exactly.
        let h = Hypergraph::new(3, 2, vec![(vec![0, 1], 1.0), (vec![1, 2], 1.0)]).unwrap();
        let op = LaplacianOp::new(&h, LaplacianKind::Unnormalized).unwrap();
        let rough = [0.7, 0.05, -0.72];
        let (x, lambda) = polish(&op, &rough);
        assert!((lambda - 1.0).abs() < 1e-12);
        let s = 0.5f64.sqrt();
        for (got, want) in x.iter().zip([s, 0.0, -s]) {
            assert!((got - want).abs() < 1e-10);
        }
    }

    #[test]
    fn polish_handles_a_degenerate_eigenpair_manifold() {
        // On a single 4-edge the eigenvectors at λ = 1/2 form a continuum
        // (any (a, -a, b, b) pattern), so the bordered Jacobian is singular
        // at the solution. The damped polish must still converge onto the
        // manifold from a nearby start.
        let h = Hypergraph::new(4, 4, vec![(vec![0, 1, 2, 3], 1.0)]).unwrap();
        let op = LaplacianOp::new(&h, LaplacianKind::Unnormalized).unwrap();
        let rough = [0.5005, -0.4981, 0.5008, 0.5006];
        let (x, lambda) = polish(&op, &rough);
        assert!((lambda - 0.5).abs() < 1e-10, "eigenvalue {lambda} is not 1/2");
        let applied = op.apply(&x).unwrap();
        let residual: f64 = applied
            .iter()
            .zip(&x)
            .map(|(&a, &v)| (a - lambda * v) * (a - lambda * v))
            .sum::<f64>()
            .sqrt();
        assert!(residual < 1e-12, "residual {residual} after polishing");
    }
}
