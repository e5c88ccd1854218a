//! Core data model for weighted k-uniform hypergraphs.
//!
//! A hypergraph here is a set of `n` nodes together with `m` hyperedges,
//! each containing exactly `k` distinct nodes and carrying a positive
//! weight. Node ids are 0-based internally; the text format and all
//! reports use 1-based ids to match the usual drawing conventions.
//!
//! The module provides:
//!
//! - [`Hypergraph`] / [`Hyperedge`] — validated, canonically ordered storage
//! - [`Partition`] — an assignment of nodes to non-empty clusters
//! - [`IncidenceData`] — node degrees and the node → edge index
//! - text parsing/serialization (`.hg` format, see [`Hypergraph::parse`])
//! - connected components under hyperedge deletion
//!
//! Canonical form: within an edge, node ids are sorted ascending; the edge
//! list itself is sorted lexicographically; duplicate node sets are merged
//! by summing weights. This makes equality, hashing, and golden-file tests
//! deterministic.

mod io;
mod partition;

pub use io::ParseError;
pub use partition::Partition;

use thiserror::Error;

/// Errors raised when constructing a [`Hypergraph`] from in-memory data.
#[derive(Debug, Error, PartialEq)]
pub enum HypergraphError {
    #[error("edge cardinality must be at least 2, got k={0}")]
    CardinalityTooSmall(usize),

    #[error("edge {index} has {got} nodes, expected k={expected}")]
    WrongCardinality {
        index: usize,
        expected: usize,
        got: usize,
    },

    #[error("edge {index} contains node id {id}, valid range is 1..={n}")]
    NodeOutOfRange { index: usize, id: usize, n: usize },

    #[error("edge {index} repeats node id {id}")]
    DuplicateNode { index: usize, id: usize },

    #[error("edge {index} has non-positive weight {weight}")]
    NonPositiveWeight { index: usize, weight: f64 },
}

/// A single hyperedge: `k` distinct node ids (sorted ascending) and a
/// positive weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperedge {
    nodes: Vec<usize>,
    weight: f64,
}

impl Hyperedge {
    /// Node ids, 0-based, strictly increasing.
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Whether the edge contains the given node.
    pub fn contains(&self, node: usize) -> bool {
        self.nodes.binary_search(&node).is_ok()
    }
}

/// A weighted k-uniform hypergraph in canonical form.
///
/// Invariants maintained by construction:
/// - every edge has exactly `k` distinct node ids in `0..n`
/// - every weight is strictly positive and finite
/// - edges are sorted lexicographically by node list, with no two edges
///   sharing a node set (duplicates are merged by summing their weights)
#[derive(Debug, Clone, PartialEq)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<Hyperedge>,
}

impl Hypergraph {
    /// Build a hypergraph from raw `(nodes, weight)` pairs, validating and
    /// canonicalizing. Node ids are 0-based here; see [`Hypergraph::parse`]
    /// for the 1-based text format.
    pub fn new(
        n: usize,
        k: usize,
        raw_edges: impl IntoIterator<Item = (Vec<usize>, f64)>,
    ) -> Result<Self, HypergraphError> {
        if k < 2 {
            return Err(HypergraphError::CardinalityTooSmall(k));
        }
        let mut edges: Vec<Hyperedge> = Vec::new();
        for (index, (mut nodes, weight)) in raw_edges.into_iter().enumerate() {
            if nodes.len() != k {
                return Err(HypergraphError::WrongCardinality {
                    index,
                    expected: k,
                    got: nodes.len(),
                });
            }
            nodes.sort_unstable();
            for pair in nodes.windows(2) {
                if pair[0] == pair[1] {
                    return Err(HypergraphError::DuplicateNode {
                        index,
                        id: pair[0] + 1,
                    });
                }
            }
            if let Some(&id) = nodes.last() {
                if id >= n {
                    return Err(HypergraphError::NodeOutOfRange {
                        index,
                        id: id + 1,
                        n,
                    });
                }
            }
            if !(weight > 0.0 && weight.is_finite()) {
                return Err(HypergraphError::NonPositiveWeight { index, weight });
            }
            edges.push(Hyperedge { nodes, weight });
        }
        edges.sort_by(|a, b| a.nodes.cmp(&b.nodes));
        // Merge consecutive duplicates (same node set) by summing weights.
        let mut merged: Vec<Hyperedge> = Vec::with_capacity(edges.len());
        for e in edges {
            match merged.last_mut() {
                Some(last) if last.nodes == e.nodes => last.weight += e.weight,
                _ => merged.push(e),
            }
        }
        Ok(Hypergraph {
            n,
            k,
            edges: merged,
        })
    }

    /// Number of nodes.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Uniform edge cardinality.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of hyperedges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical (lexicographic) order.
    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    /// The edge at a 0-based index.
    pub fn edge(&self, index: usize) -> &Hyperedge {
        &self.edges[index]
    }

    /// Node degrees and the node → incident-edge index.
    ///
    /// The degree of a node is the sum of the weights of the edges
    /// containing it (so with unit weights it is the number of incident
    /// edges). Isolated nodes have degree 0.
    pub fn incidence(&self) -> IncidenceData {
        let mut degrees = vec![0.0; self.n];
        let mut edges_of: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (j, e) in self.edges.iter().enumerate() {
            for &v in &e.nodes {
                degrees[v] += e.weight;
                edges_of[v].push(j);
            }
        }
        IncidenceData { degrees, edges_of }
    }

    /// Connected components after deleting the given edges (by 0-based
    /// index). Two nodes are connected when they co-occur in a surviving
    /// hyperedge, transitively. Component labels are assigned by smallest
    /// contained node id, ascending, so the result is deterministic.
    pub fn connected_components(&self, removed: &[usize]) -> Partition {
        let mut dsu = DisjointSet::new(self.n);
        let mut gone = vec![false; self.edges.len()];
        for &j in removed {
            if j < gone.len() {
                gone[j] = true;
            }
        }
        for (j, e) in self.edges.iter().enumerate() {
            if gone[j] {
                continue;
            }
            let first = e.nodes[0];
            for &v in &e.nodes[1..] {
                dsu.union(first, v);
            }
        }
        let labels: Vec<usize> = (0..self.n).map(|v| dsu.find(v)).collect();
        Partition::from_labels(labels).expect("components cover all nodes")
    }

    /// True when the hypergraph is a single connected component.
    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components(&[]).p() == 1
    }
}

/// Degrees and node → edge incidence derived from a [`Hypergraph`].
#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceData {
    degrees: Vec<f64>,
    edges_of: Vec<Vec<usize>>,
}

impl IncidenceData {
    /// Weighted degree of every node: `d[i] = Σ_{e ∋ i} w_e`.
    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    /// Indices of the edges incident to `node`.
    pub fn edges_of(&self, node: usize) -> &[usize] {
        &self.edges_of[node]
    }

    /// Whether every node has strictly positive degree.
    pub fn all_positive(&self) -> bool {
        self.degrees.iter().all(|&d| d > 0.0)
    }
}

/// Union-find with path halving; small and allocation-free after `new`.
struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            // Attach the larger root id under the smaller so that roots
            // stay the minimum of their component.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn degrees_count_weighted_memberships() {
        let inc = h1().incidence();
        assert_eq!(inc.degrees(), &[1.0, 2.0, 3.0, 2.0, 1.0]);
    }

    #[test]
    fn degree_sum_equals_k_times_weight_sum() {
        let h = h1();
        let total: f64 = h.incidence().degrees().iter().sum();
        let wsum: f64 = h.edges().iter().map(|e| e.weight()).sum();
        assert_eq!(total, h.k() as f64 * wsum);
    }

    #[test]
    fn four_uniform_fixture_degrees() {
        // three 4-edges on five nodes
        let h = Hypergraph::new(
            5,
            4,
            vec![
                (vec![0, 1, 2, 3], 1.0),
                (vec![1, 2, 3, 4], 1.0),
                (vec![0, 1, 2, 4], 1.0),
            ],
        )
        .unwrap();
        assert_eq!(h.incidence().degrees(), &[2.0, 3.0, 3.0, 2.0, 2.0]);
    }

    #[test]
    fn isolated_node_has_zero_degree() {
        let h = Hypergraph::new(1, 3, std::iter::empty()).unwrap();
        assert_eq!(h.incidence().degrees(), &[0.0]);
    }

    #[test]
    fn duplicate_edges_merge_by_weight() {
        let h = Hypergraph::new(4, 2, vec![(vec![0, 1], 1.5), (vec![1, 0], 2.0)]).unwrap();
        assert_eq!(h.m(), 1);
        assert_eq!(h.edge(0).weight(), 3.5);
    }

    #[test]
    fn edges_are_canonically_ordered() {
        let h = Hypergraph::new(
            5,
            2,
            vec![(vec![3, 4], 1.0), (vec![0, 4], 1.0), (vec![0, 1], 1.0)],
        )
        .unwrap();
        let order: Vec<&[usize]> = h.edges().iter().map(|e| e.nodes()).collect();
        assert_eq!(order, vec![&[0, 1][..], &[0, 4], &[3, 4]]);
    }

    #[test]
    fn rejects_duplicate_node_within_edge() {
        let err = Hypergraph::new(3, 3, vec![(vec![0, 1, 1], 1.0)]).unwrap_err();
        assert_eq!(err, HypergraphError::DuplicateNode { index: 0, id: 2 });
    }

    #[test]
    fn rejects_out_of_range_and_bad_weight() {
        assert!(matches!(
            Hypergraph::new(3, 2, vec![(vec![0, 3], 1.0)]),
            Err(HypergraphError::NodeOutOfRange { .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, 2, vec![(vec![0, 1], 0.0)]),
            Err(HypergraphError::NonPositiveWeight { .. })
        ));
        assert!(matches!(
            Hypergraph::new(3, 2, vec![(vec![0, 1], f64::NAN)]),
            Err(HypergraphError::NonPositiveWeight { .. })
        ));
    }

    #[test]
    fn components_after_removal_split_h1() {
        let h = h1();
        let p = h.connected_components(&[1, 2]);
        assert_eq!(p.p(), 3);
        assert_eq!(p.clusters(), vec![vec![0, 1, 2], vec![3], vec![4]]);
    }

    #[test]
    fn h1_is_connected_without_removals() {
        assert!(h1().is_connected());
        assert_eq!(h1().connected_components(&[]).p(), 1);
    }

    #[test]
    fn no_edges_means_singleton_components() {
        let h = Hypergraph::new(4, 3, std::iter::empty()).unwrap();
        let p = h.connected_components(&[]);
        assert_eq!(p.p(), 4);
    }
}
