//! Laplacian tensor operators for k-uniform hypergraphs.
//!
//! A weighted k-uniform hypergraph induces an order-k symmetric tensor
//! Laplacian whose quadratic-form analogue over a vector `x` is
//!
//! ```text
//! f(x) = Σ_e w_e · ( Σ_{i∈e} y_i^k − k·Π_{i∈e} y_i )
//! ```
//!
//! with `y = x` for the unnormalized operator and `y_i = x_i / d_i^{1/k}`
//! for the degree-normalized one. Everything in this crate evaluates that
//! form and its relatives (per-edge scores, the polynomial map whose
//! fixed directions are Z-eigenvectors, contractions down to ordinary
//! graph Laplacians) in O(m·k) time without materializing the tensor.
//! The [`dense`] module holds a brute-force O(n^k) oracle for tests.
//!
//! The central type is [`LaplacianOp`], a prepared operator that caches
//! degrees and per-edge coefficients so repeated evaluations (as in an
//! eigensolver inner loop) cost no setup. The free functions
//! [`objective`], [`apply`], and [`edge_scores`] are one-shot wrappers.

pub mod dense;

use htcut_core::Hypergraph;
use thiserror::Error;

/// Which Laplacian tensor to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplacianKind {
    /// Degree diagonal minus adjacency; zero eigenvector is the uniform
    /// vector.
    Unnormalized,
    /// Unit diagonal with edge entries scaled by Π d_t^{−1/k}; requires
    /// every node to have positive degree.
    Normalized,
}

/// Errors raised by tensor evaluations.
#[derive(Debug, Error, PartialEq)]
pub enum TensorError {
    #[error("vector has length {got}, hypergraph has {expected} nodes")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("node {node} has zero degree; the normalized operator needs positive degrees")]
    ZeroDegree { node: usize },

    #[error("dense tensor of dimension {n}^{k} exceeds the oracle size guard")]
    TensorTooLarge { n: usize, k: usize },
}

/// One hyperedge together with its score `l_e(x) = w_e(Σ y_i^k − k·Π y_i)`.
///
/// Node ids here are 1-based, ready for reports; `edge_index` is the
/// 0-based position in the hypergraph's canonical edge list.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredHyperedge {
    pub edge_index: usize,
    /// 1-based node ids of the edge.
    pub nodes: Vec<usize>,
    pub score: f64,
}

/// A Laplacian tensor prepared for repeated evaluation against vectors.
///
/// Holds, per node, the diagonal coefficient κ_i (the degree for the
/// unnormalized kind, 1 for the normalized kind) and the entry scaling
/// s_i (1 or d_i^{−1/k}); per edge, the product coefficient
/// c_e = w_e·Π_{t∈e} s_t. In these terms
///
/// ```text
/// apply(x)_i  = κ_i·x_i^{k−1} − Σ_{e∋i} c_e · Π_{t∈e∖i} x_t
/// f(x)        = Σ_e [ w_e·Σ_{i∈e} (s_i·x_i)^k − k·c_e·Π_{t∈e} x_t ]
/// ```
///
/// and the gradient of `f` is exactly `k·apply(x)`.
pub struct LaplacianOp<'h> {
    h: &'h Hypergraph,
    kind: LaplacianKind,
    kappa: Vec<f64>,
    scale: Vec<f64>,
    coef: Vec<f64>,
}

impl<'h> LaplacianOp<'h> {
    pub fn new(h: &'h Hypergraph, kind: LaplacianKind) -> Result<Self, TensorError> {
        let degrees = h.incidence().degrees().to_vec();
        let k = h.k() as f64;
        let (kappa, scale) = match kind {
            LaplacianKind::Unnormalized => (degrees, vec![1.0; h.n()]),
            LaplacianKind::Normalized => {
                if let Some(node) = degrees.iter().position(|&d| d <= 0.0) {
                    return Err(TensorError::ZeroDegree { node: node + 1 });
                }
                let scale: Vec<f64> = degrees.iter().map(|&d| d.powf(-1.0 / k)).collect();
                (vec![1.0; h.n()], scale)
            }
        };
        let coef: Vec<f64> = h
            .edges()
            .iter()
            .map(|e| e.weight() * e.nodes().iter().map(|&t| scale[t]).product::<f64>())
            .collect();
        Ok(LaplacianOp {
            h,
            kind,
            kappa,
            scale,
            coef,
        })
    }

    pub fn kind(&self) -> LaplacianKind {
        self.kind
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        self.h
    }

    /// Diagonal coefficients κ_i: node degrees for the unnormalized kind,
    /// all ones for the normalized kind.
    pub fn diagonal(&self) -> &[f64] {
        &self.kappa
    }

    /// Per-edge coefficients c_e: the edge weight, folded with the degree
    /// normalization of every endpoint for the normalized kind. The
    /// operator subtracts c_e · Π_{t∈e∖i} x_t from coordinate i.
    pub fn edge_coefficients(&self) -> &[f64] {
        &self.coef
    }

    fn check_len(&self, x: &[f64]) -> Result<(), TensorError> {
        if x.len() != self.h.n() {
            return Err(TensorError::DimensionMismatch {
                expected: self.h.n(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// The form `f(x)`, accumulated edge-major with Kahan compensation so
    /// the result is deterministic and accurate for large edge counts.
    pub fn objective(&self, x: &[f64]) -> Result<f64, TensorError> {
        self.check_len(x)?;
        let k = self.h.k() as i32;
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for (j, e) in self.h.edges().iter().enumerate() {
            let term = self.edge_score(j, e.weight(), e.nodes(), x, k);
            // Kahan step
            let t = term - comp;
            let s = sum + t;
            comp = (s - sum) - t;
            sum = s;
        }
        Ok(sum)
    }

    fn edge_score(&self, j: usize, w: f64, nodes: &[usize], x: &[f64], k: i32) -> f64 {
        let mut powers = 0.0;
        let mut product = 1.0;
        for &t in nodes {
            let y = self.scale[t] * x[t];
            powers += w * y.powi(k);
            product *= x[t];
        }
        powers - k as f64 * self.coef[j] * product
    }

    /// Per-edge scores, sorted descending (ties broken by ascending edge
    /// index). Their sum equals [`LaplacianOp::objective`] up to
    /// accumulation error.
    pub fn edge_scores(&self, x: &[f64]) -> Result<Vec<ScoredHyperedge>, TensorError> {
        self.check_len(x)?;
        let k = self.h.k() as i32;
        let mut scored: Vec<ScoredHyperedge> = self
            .h
            .edges()
            .iter()
            .enumerate()
            .map(|(j, e)| ScoredHyperedge {
                edge_index: j,
                nodes: e.nodes().iter().map(|&v| v + 1).collect(),
                score: self.edge_score(j, e.weight(), e.nodes(), x, k),
            })
            .collect();
        scored.sort_by(|a, b| {
            b.score
                .partial_cmp(&a.score)
                .expect("scores are finite")
                .then(a.edge_index.cmp(&b.edge_index))
        });
        Ok(scored)
    }

    /// The degree-(k−1) polynomial map `x ↦ 𝓛x^{k−1}`; a unit vector `x`
    /// with `apply(x) = λx` is a Z-eigenvector. Also `∇f(x) = k·apply(x)`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>, TensorError> {
        self.check_len(x)?;
        let mut out = vec![0.0; x.len()];
        self.apply_into(x, &mut out);
        Ok(out)
    }

    /// Allocation-free [`LaplacianOp::apply`] for solver inner loops.
    /// Panics on length mismatch instead of returning an error.
    pub fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        let n = self.h.n();
        assert_eq!(x.len(), n, "input length must match node count");
        assert_eq!(out.len(), n, "output length must match node count");
        let k = self.h.k() as i32;
        for i in 0..n {
            out[i] = self.kappa[i] * x[i].powi(k - 1);
        }
        let mut prefix = vec![1.0; self.h.k() + 1];
        let mut suffix = vec![1.0; self.h.k() + 1];
        for (j, e) in self.h.edges().iter().enumerate() {
            let nodes = e.nodes();
            let k = nodes.len();
            // Leave-one-out products via prefix/suffix scans, avoiding
            // division so zero entries stay exact.
            prefix[0] = 1.0;
            for t in 0..k {
                prefix[t + 1] = prefix[t] * x[nodes[t]];
            }
            suffix[k] = 1.0;
            for t in (0..k).rev() {
                suffix[t] = suffix[t + 1] * x[nodes[t]];
            }
            for t in 0..k {
                out[nodes[t]] -= self.coef[j] * prefix[t] * suffix[t + 1];
            }
        }
    }

    /// Rayleigh value `xᵀ·apply(x)`; equals `f(x)` for unit `x` up to
    /// rounding, and equals λ exactly at an eigenvector.
    pub fn rayleigh(&self, x: &[f64]) -> Result<f64, TensorError> {
        let ax = self.apply(x)?;
        Ok(x.iter().zip(&ax).map(|(a, b)| a * b).sum())
    }
}

/// One-shot [`LaplacianOp::objective`].
pub fn objective(h: &Hypergraph, kind: LaplacianKind, x: &[f64]) -> Result<f64, TensorError> {
    LaplacianOp::new(h, kind)?.objective(x)
}

/// One-shot [`LaplacianOp::edge_scores`].
pub fn edge_scores(
    h: &Hypergraph,
    kind: LaplacianKind,
    x: &[f64],
) -> Result<Vec<ScoredHyperedge>, TensorError> {
    LaplacianOp::new(h, kind)?.edge_scores(x)
}

/// One-shot [`LaplacianOp::apply`].
pub fn apply(h: &Hypergraph, kind: LaplacianKind, x: &[f64]) -> Result<Vec<f64>, TensorError> {
    LaplacianOp::new(h, kind)?.apply(x)
}

/// Contract the unnormalized Laplacian tensor against the all-ones vector
/// down to an n×n matrix: diagonal d_i, off-diagonal −Σ_{e⊇{i,j}} w_e/(k−1).
///
/// The result is the degree-preserving clique reduction of the hypergraph
/// (each edge spread over its node pairs at weight w_e/(k−1), which keeps
/// node degrees intact); rows sum to zero.
pub fn contract_to_matrix(h: &Hypergraph) -> Vec<Vec<f64>> {
    let n = h.n();
    let mut m = vec![vec![0.0; n]; n];
    let pair_w = 1.0 / (h.k() as f64 - 1.0);
    for e in h.edges() {
        let w = e.weight() * pair_w;
        for (a, &i) in e.nodes().iter().enumerate() {
            for &j in &e.nodes()[a + 1..] {
                m[i][j] -= w;
                m[j][i] -= w;
            }
        }
    }
    let degrees = h.incidence();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = degrees.degrees()[i];
    }
    m
}

/// The clique-expansion graph Laplacian: every hyperedge becomes a clique
/// with pairwise weight w_e, so this equals (k−1) times
/// [`contract_to_matrix`], entry for entry.
pub fn clique_laplacian(h: &Hypergraph) -> Vec<Vec<f64>> {
    let f = h.k() as f64 - 1.0;
    contract_to_matrix(h)
        .into_iter()
        .map(|row| row.into_iter().map(|v| f * v).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_edge() -> Hypergraph {
        Hypergraph::new(3, 3, vec![(vec![0, 1, 2], 1.0)]).unwrap()
    }

    fn h1() -> Hypergraph {
        Hypergraph::new(
            5,
            3,
            vec![
                (vec![0, 1, 2], 1.0),
                (vec![1, 2, 3], 1.0),
                (vec![2, 3, 4], 1.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn objective_vanishes_on_uniform_vector() {
        let h = h1();
        let x = vec![1.0 / (5.0f64).sqrt(); 5];
        let f = objective(&h, LaplacianKind::Unnormalized, &x).unwrap();
        assert!(f.abs() <= 1e-15, "uniform vector must be a zero of the form, got {f}");
    }

    #[test]
    fn objective_on_single_edge_basis_vector() {
        let f = objective(&single_edge(), LaplacianKind::Unnormalized, &[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(f, 1.0);
    }

    #[test]
    fn objective_spot_check_on_three_edge_chain() {
        // x = (1,1,1,0,0): first edge balanced (term 0), second contributes
        // 1+1+0-0 = 2, third 1+0+0-0 = 1.
        let f = objective(&h1(), LaplacianKind::Unnormalized, &[1.0, 1.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(f, 3.0);
    }

    #[test]
    fn apply_matches_hand_computation_on_single_edge() {
        let out = apply(&single_edge(), LaplacianKind::Unnormalized, &[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(out, vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn apply_is_zero_at_uniform_vector() {
        let h = h1();
        let x = vec![0.5; 5];
        let out = apply(&h, LaplacianKind::Unnormalized, &x).unwrap();
        for (i, v) in out.iter().enumerate() {
            assert!(v.abs() <= 1e-15, "entry {i} should vanish, got {v}");
        }
    }

    #[test]
    fn normalized_apply_is_zero_at_degree_profile() {
        // y ∝ d^{1/k} makes every scaled entry equal, so the normalized
        // form and map both vanish there.
        let h = h1();
        let k = h.k() as f64;
        let mut x: Vec<f64> = h
            .incidence()
            .degrees()
            .iter()
            .map(|d| d.powf(1.0 / k))
            .collect();
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        x.iter_mut().for_each(|v| *v /= norm);
        let out = apply(&h, LaplacianKind::Normalized, &x).unwrap();
        for (i, v) in out.iter().enumerate() {
            assert!(v.abs() <= 1e-14, "entry {i} should vanish, got {v}");
        }
    }

    #[test]
    fn normalized_kind_rejects_zero_degree() {
        let h = Hypergraph::new(4, 3, vec![(vec![0, 1, 2], 1.0)]).unwrap();
        let err = objective(&h, LaplacianKind::Normalized, &[0.0; 4]).unwrap_err();
        assert_eq!(err, TensorError::ZeroDegree { node: 4 });
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let err = objective(&h1(), LaplacianKind::Unnormalized, &[1.0, 2.0]).unwrap_err();
        assert_eq!(
            err,
            TensorError::DimensionMismatch {
                expected: 5,
                got: 2
            }
        );
    }

    #[test]
    fn scores_sum_to_objective_and_sort_descending() {
        let h = h1();
        let x = [0.9, -0.3, 0.1, 0.4, -0.7];
        let scores = edge_scores(&h, LaplacianKind::Unnormalized, &x).unwrap();
        let total: f64 = scores.iter().map(|s| s.score).sum();
        let f = objective(&h, LaplacianKind::Unnormalized, &x).unwrap();
        assert!((total - f).abs() <= 1e-12 * h.m() as f64);
        for pair in scores.windows(2) {
            assert!(pair[0].score >= pair[1].score, "scores must be sorted descending");
        }
    }

    #[test]
    fn equal_entries_score_zero() {
        let h = single_edge();
        let scores = edge_scores(&h, LaplacianKind::Unnormalized, &[0.3, 0.3, 0.3]).unwrap();
        assert!(scores[0].score.abs() <= 1e-15);
    }

    #[test]
    fn scored_edges_report_one_based_nodes() {
        let scores = edge_scores(&single_edge(), LaplacianKind::Unnormalized, &[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(scores[0].nodes, vec![1, 2, 3]);
    }

    #[test]
    fn contraction_of_single_edge() {
        let m = contract_to_matrix(&single_edge());
        let expected = vec![
            vec![1.0, -0.5, -0.5],
            vec![-0.5, 1.0, -0.5],
            vec![-0.5, -0.5, 1.0],
        ];
        assert_eq!(m, expected);
    }

    #[test]
    fn clique_laplacian_of_single_edge() {
        let m = clique_laplacian(&single_edge());
        let expected = vec![
            vec![2.0, -1.0, -1.0],
            vec![-1.0, 2.0, -1.0],
            vec![-1.0, -1.0, 2.0],
        ];
        assert_eq!(m, expected);
    }

    #[test]
    fn contraction_of_graph_is_graph_laplacian() {
        let h = Hypergraph::new(3, 2, vec![(vec![0, 1], 2.0), (vec![1, 2], 1.0)]).unwrap();
        let m = contract_to_matrix(&h);
        assert_eq!(
            m,
            vec![
                vec![2.0, -2.0, 0.0],
                vec![-2.0, 3.0, -1.0],
                vec![0.0, -1.0, 1.0],
            ]
        );
        assert_eq!(m, clique_laplacian(&h), "k=2 clique expansion is the identity");
    }

    #[test]
    fn contraction_rows_sum_to_zero() {
        let h = Hypergraph::new(
            6,
            4,
            vec![(vec![0, 1, 2, 3], 1.5), (vec![2, 3, 4, 5], 0.25)],
        )
        .unwrap();
        for row in contract_to_matrix(&h) {
            let sum: f64 = row.iter().sum();
            assert!(sum.abs() <= 1e-12, "row sum {sum} should vanish");
        }
    }

    #[test]
    fn four_and_three_uniform_pair_reduce_to_same_clique_graph() {
        // A single 4-edge on four nodes, versus all four 3-subsets at half
        // weight: both spread weight 1 across every node pair.
        let a = Hypergraph::new(4, 4, vec![(vec![0, 1, 2, 3], 1.0)]).unwrap();
        let b = Hypergraph::new(
            4,
            3,
            vec![
                (vec![0, 1, 2], 0.5),
                (vec![0, 1, 3], 0.5),
                (vec![0, 2, 3], 0.5),
                (vec![1, 2, 3], 0.5),
            ],
        )
        .unwrap();
        assert_eq!(
            clique_laplacian(&a),
            clique_laplacian(&b),
            "the two hypergraphs must reduce to the same clique matrix bit for bit"
        );
    }

    #[test]
    fn rayleigh_equals_objective_for_unit_vectors() {
        let h = h1();
        let mut x = vec![0.1, -0.4, 0.2, 0.8, -0.3];
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        x.iter_mut().for_each(|v| *v /= norm);
        let op = LaplacianOp::new(&h, LaplacianKind::Unnormalized).unwrap();
        let r = op.rayleigh(&x).unwrap();
        let f = op.objective(&x).unwrap();
        assert!((r - f).abs() <= 1e-12, "xᵀ(𝓛x^{{k-1}}) and 𝓛x^k must agree, got {r} vs {f}");
    }
}
