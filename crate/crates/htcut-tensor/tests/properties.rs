//! Property tests pinning the fast tensor paths to independent oracles:
//! the dense brute-force tensor, central finite differences, a direct
//! clique-expansion construction, and algebraic identities.

use htcut_core::Hypergraph;
use htcut_tensor::dense::DenseTensor;
use htcut_tensor::{
    apply, clique_laplacian, contract_to_matrix, edge_scores, objective, LaplacianKind,
};
use proptest::collection::vec;
use proptest::prelude::*;

/// Random k-uniform hypergraph with n ≤ 6 so the dense oracle stays fast.
fn hypergraph() -> impl Strategy<Value = Hypergraph> {
    (3usize..=6)
        .prop_flat_map(|n| (Just(n), 2usize..=n.min(4)))
        .prop_flat_map(|(n, k)| {
            let edge = vec(0..n, k).prop_filter_map("needs k distinct nodes", move |mut ids| {
                ids.sort_unstable();
                ids.dedup();
                (ids.len() == k).then_some(ids)
            });
            (Just(n), Just(k), vec((edge, 0.1f64..3.0), 1..=8))
        })
        .prop_map(|(n, k, edges)| Hypergraph::new(n, k, edges).expect("valid strategy output"))
}

/// A hypergraph together with a vector of matching length.
fn hypergraph_and_vector() -> impl Strategy<Value = (Hypergraph, Vec<f64>)> {
    hypergraph().prop_flat_map(|h| {
        let n = h.n();
        (Just(h), vec(-1.0f64..1.0, n))
    })
}

fn kinds_for(h: &Hypergraph) -> Vec<LaplacianKind> {
    let mut kinds = vec![LaplacianKind::Unnormalized];
    if h.incidence().all_positive() {
        kinds.push(LaplacianKind::Normalized);
    }
    kinds
}

proptest! {
    #[test]
    fn fast_objective_and_apply_match_dense_oracle((h, x) in hypergraph_and_vector()) {
        for kind in kinds_for(&h) {
            let dense = DenseTensor::laplacian(&h, kind).expect("oracle within size guard");
            let f_fast = objective(&h, kind, &x).unwrap();
            let f_dense = dense.objective(&x);
            prop_assert!(
                (f_fast - f_dense).abs() <= 1e-10,
                "objective mismatch for {kind:?}: fast {f_fast} vs dense {f_dense}"
            );
            let a_fast = apply(&h, kind, &x).unwrap();
            let a_dense = dense.apply(&x);
            for i in 0..h.n() {
                prop_assert!(
                    (a_fast[i] - a_dense[i]).abs() <= 1e-10,
                    "apply entry {i} mismatch for {kind:?}: {} vs {}",
                    a_fast[i],
                    a_dense[i]
                );
            }
        }
    }

    #[test]
    fn gradient_is_k_times_apply((h, x) in hypergraph_and_vector()) {
        let k = h.k() as f64;
        let step = 1e-5;
        for kind in kinds_for(&h) {
            let grad_analytic: Vec<f64> = apply(&h, kind, &x).unwrap()
                .into_iter()
                .map(|v| k * v)
                .collect();
            for i in 0..h.n() {
                let mut plus = x.clone();
                plus[i] += step;
                let mut minus = x.clone();
                minus[i] -= step;
                let numeric = (objective(&h, kind, &plus).unwrap()
                    - objective(&h, kind, &minus).unwrap())
                    / (2.0 * step);
                prop_assert!(
                    (grad_analytic[i] - numeric).abs() <= 1e-6,
                    "∂f/∂x_{i} for {kind:?}: analytic {} vs central difference {}",
                    grad_analytic[i],
                    numeric
                );
            }
        }
    }

    #[test]
    fn objective_is_invariant_under_node_relabeling((h, x) in hypergraph_and_vector(), shift in 1usize..5) {
        // Relabel node i ↦ (i + shift) mod n, a cyclic permutation.
        let n = h.n();
        let perm: Vec<usize> = (0..n).map(|i| (i + shift) % n).collect();
        let relabeled = Hypergraph::new(
            n,
            h.k(),
            h.edges().iter().map(|e| {
                (e.nodes().iter().map(|&v| perm[v]).collect::<Vec<_>>(), e.weight())
            }),
        )
        .unwrap();
        let mut x_perm = vec![0.0; n];
        for i in 0..n {
            x_perm[perm[i]] = x[i];
        }
        for kind in kinds_for(&h) {
            let f = objective(&h, kind, &x).unwrap();
            let f_perm = objective(&relabeled, kind, &x_perm).unwrap();
            prop_assert!(
                (f - f_perm).abs() <= 1e-12 * (1.0 + f.abs()),
                "relabeling changed the objective: {f} vs {f_perm}"
            );
        }
    }

    #[test]
    fn scores_match_mean_form_and_sum_to_objective((h, x) in hypergraph_and_vector()) {
        // Power-sum-minus-product versus k·w·(AM of y^k − signed GM of |y|^k).
        let k = h.k() as f64;
        for kind in kinds_for(&h) {
            let scores = edge_scores(&h, kind, &x).unwrap();
            let scale: Vec<f64> = match kind {
                LaplacianKind::Unnormalized => vec![1.0; h.n()],
                LaplacianKind::Normalized => h
                    .incidence()
                    .degrees()
                    .iter()
                    .map(|d| d.powf(-1.0 / k))
                    .collect(),
            };
            let mut total = 0.0;
            for s in &scores {
                let e = h.edge(s.edge_index);
                let ys: Vec<f64> = e.nodes().iter().map(|&t| scale[t] * x[t]).collect();
                let am = ys.iter().map(|y| y.powi(h.k() as i32)).sum::<f64>() / k;
                let gm = ys
                    .iter()
                    .map(|y| y.abs().powi(h.k() as i32))
                    .product::<f64>()
                    .powf(1.0 / k);
                let negatives = ys.iter().filter(|&&y| y < 0.0).count();
                let signed_gm = if negatives % 2 == 0 { gm } else { -gm };
                let mean_form = k * e.weight() * (am - signed_gm);
                prop_assert!(
                    (s.score - mean_form).abs() <= 1e-12 * (1.0 + s.score.abs()),
                    "edge {}: score {} vs mean form {}",
                    s.edge_index,
                    s.score,
                    mean_form
                );
                total += s.score;
            }
            let f = objective(&h, kind, &x).unwrap();
            prop_assert!((total - f).abs() <= 1e-12 * (h.m() as f64).max(1.0));
        }
    }

    #[test]
    fn even_order_objective_is_nonnegative(
        raw_edges in vec((vec(0usize..6, 4), 0.1f64..3.0), 1..=8),
        x in vec(-1.0f64..1.0, 6),
    ) {
        let edges: Vec<(Vec<usize>, f64)> = raw_edges
            .into_iter()
            .filter_map(|(mut ids, w)| {
                ids.sort_unstable();
                ids.dedup();
                (ids.len() == 4).then_some((ids, w))
            })
            .collect();
        prop_assume!(!edges.is_empty());
        let h = Hypergraph::new(6, 4, edges).unwrap();
        let f = objective(&h, LaplacianKind::Unnormalized, &x).unwrap();
        prop_assert!(
            f >= -1e-12,
            "even-order form must be positive semidefinite, got {f}"
        );
    }

    #[test]
    fn contraction_is_additive_over_edge_union((h, x) in hypergraph_and_vector()) {
        let _ = x;
        // Split the edge list in two, contract each part, and compare the
        // sum with the contraction of the whole.
        let mid = h.m() / 2;
        let part = |range: std::ops::Range<usize>| {
            Hypergraph::new(
                h.n(),
                h.k(),
                range.map(|j| (h.edge(j).nodes().to_vec(), h.edge(j).weight())),
            )
            .unwrap()
        };
        let a = contract_to_matrix(&part(0..mid));
        let b = contract_to_matrix(&part(mid..h.m()));
        let whole = contract_to_matrix(&h);
        for i in 0..h.n() {
            for j in 0..h.n() {
                prop_assert!(
                    (whole[i][j] - (a[i][j] + b[i][j])).abs() <= 1e-12,
                    "entry ({i},{j}) not additive"
                );
            }
        }
    }

    #[test]
    fn clique_expansion_matches_direct_construction(h in hypergraph()) {
        // Independent oracle: accumulate w_e on every node pair of each
        // edge, then form the graph Laplacian; the production path must
        // agree with (k−1)·contraction within rounding.
        let n = h.n();
        let mut adj = vec![vec![0.0f64; n]; n];
        for e in h.edges() {
            for (a, &i) in e.nodes().iter().enumerate() {
                for &j in &e.nodes()[a + 1..] {
                    adj[i][j] += e.weight();
                    adj[j][i] += e.weight();
                }
            }
        }
        let mut direct = vec![vec![0.0f64; n]; n];
        for i in 0..n {
            let degree: f64 = adj[i].iter().sum();
            direct[i][i] = degree;
            for j in 0..n {
                if i != j {
                    direct[i][j] = -adj[i][j];
                }
            }
        }
        let produced = clique_laplacian(&h);
        for i in 0..n {
            for j in 0..n {
                prop_assert!(
                    (produced[i][j] - direct[i][j]).abs() <= 1e-12,
                    "clique Laplacian entry ({i},{j}): {} vs direct {}",
                    produced[i][j],
                    direct[i][j]
                );
            }
        }
    }

    #[test]
    fn graph_apply_is_matrix_vector_product(
        raw_edges in vec((vec(0usize..5, 2), 0.1f64..3.0), 1..=6),
        x in vec(-1.0f64..1.0, 5),
    ) {
        let edges: Vec<(Vec<usize>, f64)> = raw_edges
            .into_iter()
            .filter(|(e, _)| e[0] != e[1])
            .collect();
        prop_assume!(!edges.is_empty());
        let h = Hypergraph::new(5, 2, edges).unwrap();
        let l = contract_to_matrix(&h);
        let fast = apply(&h, LaplacianKind::Unnormalized, &x).unwrap();
        for i in 0..5 {
            let row: f64 = (0..5).map(|j| l[i][j] * x[j]).sum();
            prop_assert!(
                (fast[i] - row).abs() <= 1e-12,
                "k=2 apply must equal Lx at entry {i}: {} vs {}",
                fast[i],
                row
            );
        }
    }
}
