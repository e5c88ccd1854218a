//! Cut metrics for partitions of k-uniform hypergraphs.
//!
//! The central quantity is the per-cluster cut cost w_h(C) — each boundary
//! hyperedge charges a cluster once per node it shares with it — from which
//! the ratio cut, the volume-normalized cut, the clique-expansion cut cost,
//! and the percentage-improvement comparison metric are derived.

use htcut_core::{Hypergraph, Partition};
use thiserror::Error;

/// Errors raised by the cut metrics.
#[derive(Debug, Error, PartialEq)]
pub enum CutsError {
    #[error("cluster {index} has zero volume; the normalized cut is undefined")]
    ZeroVolume { index: usize },

    #[error("reference ratio-cut must be positive, got {value}")]
    NonPositiveReference { value: f64 },
}

/// Everything the cut metrics say about one partition of one hypergraph.
///
/// The normalized-cut field uses the convention that a cluster with no
/// incident boundary edges contributes zero even when its volume is zero
/// (such clusters consist solely of isolated nodes); the standalone
/// [`n_cut`] function instead rejects zero-volume clusters.
#[derive(Debug, Clone, PartialEq)]
pub struct CutReport {
    /// Indices of hyperedges meeting at least two clusters, ascending.
    pub boundary: Vec<usize>,
    /// w_h(C_i) per cluster: Σ over boundary edges of |C_i ∩ e|·w_e.
    pub per_cluster_cost: Vec<f64>,
    /// Total cut cost, (1/k)·Σ_i w_h(C_i).
    pub total_cost: f64,
    /// See [`ratio_cut`].
    pub ratio_cut: f64,
    /// See [`n_cut`], with the zero-cost convention described above.
    pub n_cut: f64,
}

fn assert_partition_matches(h: &Hypergraph, p: &Partition) {
    assert_eq!(
        p.labels().len(),
        h.n(),
        "partition labels must cover every node of the hypergraph"
    );
}

/// Indices of hyperedges whose nodes span at least two clusters, ascending.
pub fn boundary_edges(h: &Hypergraph, p: &Partition) -> Vec<usize> {
    assert_partition_matches(h, p);
    let labels = p.labels();
    h.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| {
            let first = labels[e.nodes()[0]];
            e.nodes().iter().any(|&v| labels[v] != first)
        })
        .map(|(i, _)| i)
        .collect()
}

/// Per-cluster cut costs w_h(C_i) over a caller-supplied boundary.
fn cluster_costs(h: &Hypergraph, p: &Partition, boundary: &[usize]) -> Vec<f64> {
    let labels = p.labels();
    let mut costs = vec![0.0; p.p()];
    for &ei in boundary {
        let e = &h.edges()[ei];
        for &v in e.nodes() {
            costs[labels[v]] += e.weight();
        }
    }
    costs
}

/// Sum of weighted node degrees over a set of nodes.
pub fn volume(h: &Hypergraph, nodes: &[usize]) -> f64 {
    volume_from(h.incidence().degrees(), nodes)
}

fn volume_from(degrees: &[f64], nodes: &[usize]) -> f64 {
    nodes.iter().map(|&v| degrees[v]).sum()
}

/// Full cut report: boundary, per-cluster costs, total, and both
/// normalized metrics.
pub fn cut_cost(h: &Hypergraph, p: &Partition) -> CutReport {
    assert_partition_matches(h, p);
    let boundary = boundary_edges(h, p);
    let per_cluster_cost = cluster_costs(h, p, &boundary);
    let total_cost = per_cluster_cost.iter().sum::<f64>() / h.k() as f64;
    let ratio_cut = ratio_cut_from_costs(h, p, &per_cluster_cost);
    let k = h.k() as f64;
    let incidence = h.incidence();
    let n_cut = p
        .clusters()
        .iter()
        .zip(&per_cluster_cost)
        .map(|(cluster, &cost)| {
            if cost == 0.0 {
                0.0
            } else {
                cost / (k * volume_from(incidence.degrees(), cluster).powf(k / 2.0))
            }
        })
        .sum();
    CutReport {
        boundary,
        per_cluster_cost,
        total_cost,
        ratio_cut,
        n_cut,
    }
}

/// Per-cluster cut costs of the clique-expansion graph of `h`: every
/// hyperedge is replaced by a clique whose pair weights accumulate the
/// hyperedge weights, and the plain graph cut cost is taken there.
pub fn clique_cut_cost(h: &Hypergraph, p: &Partition) -> Vec<f64> {
    assert_partition_matches(h, p);
    if h.k() == 2 {
        // A graph is its own clique expansion.
        let boundary = boundary_edges(h, p);
        return cluster_costs(h, p, &boundary);
    }
    let mut pair_weights: std::collections::BTreeMap<(usize, usize), f64> = Default::default();
    for e in h.edges() {
        let nodes = e.nodes();
        for a in 0..nodes.len() {
            for b in (a + 1)..nodes.len() {
                *pair_weights.entry((nodes[a], nodes[b])).or_insert(0.0) += e.weight();
            }
        }
    }
    let labels = p.labels();
    let mut costs = vec![0.0; p.p()];
    for (&(a, b), &w) in &pair_weights {
        if labels[a] != labels[b] {
            costs[labels[a]] += w;
            costs[labels[b]] += w;
        }
    }
    costs
}

fn ratio_cut_from_costs(h: &Hypergraph, p: &Partition, costs: &[f64]) -> f64 {
    let k = h.k() as f64;
    p.clusters()
        .iter()
        .zip(costs)
        .map(|(cluster, &cost)| {
            let size = cluster.len() as f64;
            if h.k() == 2 {
                // Classical graph ratio cut: Σ cut(C)/|C|.
                cost / size
            } else {
                cost / (k * size.powf(k / 2.0))
            }
        })
        .sum()
}

/// Ratio cut of the partition: Σ_i w_h(C_i)/(k·|C_i|^{k/2}) for k ≥ 3,
/// reducing to the classical Σ_i cut(C_i)/|C_i| for graphs.
///
/// Empty clusters are unrepresentable in [`Partition`], so no error case
/// remains.
pub fn ratio_cut(h: &Hypergraph, p: &Partition) -> f64 {
    assert_partition_matches(h, p);
    let boundary = boundary_edges(h, p);
    let costs = cluster_costs(h, p, &boundary);
    ratio_cut_from_costs(h, p, &costs)
}

/// Volume-normalized cut: Σ_i w_h(C_i)/(k·vol(C_i)^{k/2}), where vol sums
/// weighted hypergraph degrees. Every cluster must have positive volume.
pub fn n_cut(h: &Hypergraph, p: &Partition) -> Result<f64, CutsError> {
    assert_partition_matches(h, p);
    let boundary = boundary_edges(h, p);
    let costs = cluster_costs(h, p, &boundary);
    let k = h.k() as f64;
    let incidence = h.incidence();
    let mut sum = 0.0;
    for (index, (cluster, &cost)) in p.clusters().iter().zip(&costs).enumerate() {
        let vol = volume_from(incidence.degrees(), cluster);
        if vol <= 0.0 {
            return Err(CutsError::ZeroVolume { index });
        }
        sum += cost / (k * vol.powf(k / 2.0));
    }
    Ok(sum)
}

/// Conductance of the bipartition (`subset`, complement): total weight of
/// straddling hyperedges divided by the smaller side's volume.
pub fn conductance(h: &Hypergraph, subset: &[usize]) -> Result<f64, CutsError> {
    let mut in_subset = vec![false; h.n()];
    for &v in subset {
        in_subset[v] = true;
    }
    let complement: Vec<usize> = (0..h.n()).filter(|&v| !in_subset[v]).collect();
    let boundary_weight: f64 = h
        .edges()
        .iter()
        .filter(|e| {
            let first = in_subset[e.nodes()[0]];
            e.nodes().iter().any(|&v| in_subset[v] != first)
        })
        .map(|e| e.weight())
        .sum();
    let incidence = h.incidence();
    let small = volume_from(incidence.degrees(), subset)
        .min(volume_from(incidence.degrees(), &complement));
    if small <= 0.0 {
        return Err(CutsError::ZeroVolume { index: 0 });
    }
    Ok(boundary_weight / small)
}

/// Percentage improvement of the score-based cut over the sign-based
/// reference: (r_f − r_p)/r_f × 100. The reference must be positive.
pub fn percentage_improvement(r_f: f64, r_p: f64) -> Result<f64, CutsError> {
    if !(r_f > 0.0) {
        return Err(CutsError::NonPositiveReference { value: r_f });
    }
    Ok((r_f - r_p) / r_f * 100.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Five-node 3-uniform chain {1,2,3},{2,3,4},{3,4,5} with the given
    /// weights, plus the partition {1,2,3} | {4} | {5}.
    fn chain(weights: [f64; 3]) -> (Hypergraph, Partition) {
        let h = Hypergraph::new(
            5,
            3,
            vec![
                (vec![0, 1, 2], weights[0]),
                (vec![1, 2, 3], weights[1]),
                (vec![2, 3, 4], weights[2]),
            ],
        )
        .unwrap();
        let p = Partition::from_labels(vec![0, 0, 0, 1, 2]).unwrap();
        (h, p)
    }

    #[test]
    fn chain_boundary_is_second_and_third_edge() {
        let (h, p) = chain([1.0, 1.0, 1.0]);
        assert_eq!(boundary_edges(&h, &p), vec![1, 2]);
    }

    #[test]
    fn chain_cut_costs_at_unit_weights() {
        let (h, p) = chain([1.0, 1.0, 1.0]);
        let report = cut_cost(&h, &p);
        assert_eq!(report.per_cluster_cost, vec![3.0, 2.0, 1.0]);
        assert_eq!(report.total_cost, 2.0);
    }

    #[test]
    fn chain_cut_costs_at_arbitrary_weights() {
        let (w2, w3) = (0.7, 2.3);
        let (h, p) = chain([5.0, w2, w3]);
        let report = cut_cost(&h, &p);
        assert_relative_eq!(report.per_cluster_cost[0], 2.0 * w2 + w3, max_relative = 1e-15);
        assert_relative_eq!(report.per_cluster_cost[1], w2 + w3, max_relative = 1e-15);
        assert_relative_eq!(report.per_cluster_cost[2], w3, max_relative = 1e-15);
    }

    #[test]
    fn chain_clique_costs_double_the_hypergraph_costs_only_off_the_big_cluster() {
        let (w2, w3) = (0.7, 2.3);
        let (h, p) = chain([5.0, w2, w3]);
        let clique = clique_cut_cost(&h, &p);
        let hyper = cut_cost(&h, &p).per_cluster_cost;
        assert_relative_eq!(clique[0], 2.0 * (w2 + w3), max_relative = 1e-15);
        assert_relative_eq!(clique[1], 2.0 * (w2 + w3), max_relative = 1e-15);
        assert_relative_eq!(clique[2], 2.0 * w3, max_relative = 1e-15);
        assert_relative_eq!(clique[1], 2.0 * hyper[1], max_relative = 1e-15);
        assert_relative_eq!(clique[2], 2.0 * hyper[2], max_relative = 1e-15);
        assert!((clique[0] - 2.0 * hyper[0]).abs() > 1.0, "the big cluster is not a plain rescale");
    }

    #[test]
    fn chain_ratio_cut_value() {
        let (h, p) = chain([1.0, 1.0, 1.0]);
        assert_relative_eq!(ratio_cut(&h, &p), 1.1924500897298753, epsilon = 1e-9);
    }

    #[test]
    fn chain_n_cut_value() {
        let (h, p) = chain([1.0, 1.0, 1.0]);
        assert_relative_eq!(n_cut(&h, &p).unwrap(), 0.6370769754728265, epsilon = 1e-9);
        assert_eq!(n_cut(&h, &p).unwrap(), cut_cost(&h, &p).n_cut);
    }

    #[test]
    fn all_in_one_partition_costs_nothing() {
        let (h, _) = chain([1.0, 1.0, 1.0]);
        let p = Partition::from_labels(vec![0; 5]).unwrap();
        let report = cut_cost(&h, &p);
        assert!(report.boundary.is_empty());
        assert_eq!(report.per_cluster_cost, vec![0.0]);
        assert_eq!(report.total_cost, 0.0);
        assert_eq!(report.ratio_cut, 0.0);
        assert_eq!(report.n_cut, 0.0);
        assert_eq!(clique_cut_cost(&h, &p), vec![0.0]);
    }

    #[test]
    fn single_triple_edge_fully_split_is_its_own_boundary() {
        let h = Hypergraph::new(3, 3, vec![(vec![0, 1, 2], 1.0)]).unwrap();
        let p = Partition::from_labels(vec![0, 1, 2]).unwrap();
        assert_eq!(boundary_edges(&h, &p), vec![0]);
    }

    #[test]
    fn split_graph_edge_costs_its_weight() {
        let h = Hypergraph::new(2, 2, vec![(vec![0, 1], 2.5)]).unwrap();
        let p = Partition::from_labels(vec![0, 1]).unwrap();
        let report = cut_cost(&h, &p);
        assert_eq!(report.per_cluster_cost, vec![2.5, 2.5]);
        assert_eq!(report.total_cost, 2.5);
    }

    #[test]
    fn unit_graph_edge_split_has_unit_n_cut() {
        let h = Hypergraph::new(2, 2, vec![(vec![0, 1], 1.0)]).unwrap();
        let p = Partition::from_labels(vec![0, 1]).unwrap();
        assert_eq!(n_cut(&h, &p).unwrap(), 1.0);
    }

    #[test]
    fn cockroach_sign_and_score_ratio_cuts() {
        let h = htcut_gen::gen_cockroach(3).unwrap();
        let sign = Partition::from_labels(vec![0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(ratio_cut(&h, &sign), 1.0);
        let score = Partition::from_labels(vec![0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 1, 1]).unwrap();
        assert_eq!(ratio_cut(&h, &score), 2.0 / 3.0);
    }

    #[test]
    fn n_cut_rejects_zero_volume_cluster() {
        let h = Hypergraph::new(3, 2, vec![(vec![0, 1], 1.0)]).unwrap();
        let p = Partition::from_labels(vec![0, 0, 1]).unwrap();
        assert_eq!(n_cut(&h, &p).unwrap_err(), CutsError::ZeroVolume { index: 1 });
    }

    #[test]
    fn conductance_of_complete_graph_split() {
        // K4, split 2|2: boundary weight 4, volumes 6|6 → 2/3.
        let edges = vec![
            (vec![0, 1], 1.0),
            (vec![0, 2], 1.0),
            (vec![0, 3], 1.0),
            (vec![1, 2], 1.0),
            (vec![1, 3], 1.0),
            (vec![2, 3], 1.0),
        ];
        let h = Hypergraph::new(4, 2, edges).unwrap();
        assert_relative_eq!(conductance(&h, &[0, 1]).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(conductance(&h, &[0]).unwrap(), 1.0, epsilon = 1e-15);
        assert!(conductance(&h, &[]).is_err(), "empty side has zero volume");
    }

    #[test]
    fn percentage_improvement_examples() {
        assert_relative_eq!(
            percentage_improvement(1.0, 2.0 / 3.0).unwrap(),
            33.33,
            epsilon = 0.01
        );
        assert_eq!(percentage_improvement(0.8, 0.8).unwrap(), 0.0);
        assert_relative_eq!(percentage_improvement(1.0, 2.0 / 20.0).unwrap(), 90.0, epsilon = 1e-12);
        assert_eq!(
            percentage_improvement(0.0, 1.0).unwrap_err(),
            CutsError::NonPositiveReference { value: 0.0 }
        );
        assert!(percentage_improvement(-1.0, 1.0).is_err());
    }

    #[test]
    fn volume_sums_weighted_degrees() {
        let (h, _) = chain([1.0, 1.0, 1.0]);
        assert_eq!(volume(&h, &[0, 1, 2]), 6.0);
        assert_eq!(volume(&h, &[]), 0.0);
    }
}
