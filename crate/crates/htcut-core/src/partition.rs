//! Node partitions in canonical form.

use thiserror::Error;

/// Errors raised when building a [`Partition`].
#[derive(Debug, Error, PartialEq)]
pub enum PartitionError {
    #[error("partition over {n} nodes has empty cluster {cluster}")]
    EmptyCluster { n: usize, cluster: usize },

    #[error("node {node} appears in clusters {first} and {second}")]
    Overlap {
        node: usize,
        first: usize,
        second: usize,
    },

    #[error("node {node} is assigned to no cluster")]
    Unassigned { node: usize },
}

/// A partition of `{0, …, n−1}` into `p ≥ 1` non-empty clusters.
///
/// Canonical form: clusters are numbered `0..p` in ascending order of
/// their smallest member, so two partitions are equal exactly when they
/// group the nodes the same way. Within a cluster, members are listed
/// ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    labels: Vec<usize>,
    p: usize,
}

impl Partition {
    /// Build from an arbitrary label per node; labels are renumbered into
    /// canonical form and need not be contiguous.
    pub fn from_labels(labels: Vec<usize>) -> Result<Self, PartitionError> {
        let n = labels.len();
        let mut remap: Vec<(usize, usize)> = Vec::new(); // (old label, first node)
        for (node, &l) in labels.iter().enumerate() {
            if !remap.iter().any(|&(old, _)| old == l) {
                remap.push((l, node));
            }
        }
        // Order new labels by first (= smallest, since we scan ascending)
        // node of each cluster.
        remap.sort_by_key(|&(_, first)| first);
        let canonical: Vec<usize> = labels
            .iter()
            .map(|&l| remap.iter().position(|&(old, _)| old == l).unwrap())
            .collect();
        let n_ok = canonical.len() == n;
        debug_assert!(n_ok);
        Ok(Partition {
            p: remap.len(),
            labels: canonical,
        })
    }

    /// Build from explicit clusters (1 cluster = 1 list of node ids).
    /// The clusters must cover `0..n` exactly once and be non-empty.
    pub fn from_clusters(n: usize, clusters: &[Vec<usize>]) -> Result<Self, PartitionError> {
        let mut labels = vec![usize::MAX; n];
        for (c, members) in clusters.iter().enumerate() {
            if members.is_empty() {
                return Err(PartitionError::EmptyCluster { n, cluster: c });
            }
            for &node in members {
                if labels[node] != usize::MAX {
                    return Err(PartitionError::Overlap {
                        node,
                        first: labels[node],
                        second: c,
                    });
                }
                labels[node] = c;
            }
        }
        if let Some(node) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(PartitionError::Unassigned { node });
        }
        Self::from_labels(labels)
    }

    /// Number of nodes.
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Number of clusters.
    pub fn p(&self) -> usize {
        self.p
    }

    /// Canonical cluster label of each node.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Cluster label of one node.
    pub fn label_of(&self, node: usize) -> usize {
        self.labels[node]
    }

    /// Clusters as sorted member lists, in canonical order.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.p];
        for (node, &l) in self.labels.iter().enumerate() {
            out[l].push(node);
        }
        out
    }

    /// Sizes of the clusters, in canonical order.
    pub fn sizes(&self) -> Vec<usize> {
        let mut out = vec![0usize; self.p];
        for &l in &self.labels {
            out[l] += 1;
        }
        out
    }

    /// Number of single-node clusters.
    pub fn singleton_count(&self) -> usize {
        self.sizes().iter().filter(|&&s| s == 1).count()
    }

    /// Merge two clusters, renumbering back to canonical form.
    pub fn merge(&self, a: usize, b: usize) -> Partition {
        assert!(a < self.p && b < self.p && a != b, "invalid merge pair");
        let target = a.min(b);
        let source = a.max(b);
        let labels: Vec<usize> = self
            .labels
            .iter()
            .map(|&l| if l == source { target } else { l })
            .collect();
        Partition::from_labels(labels).expect("merge preserves coverage")
    }

    /// One line per cluster: 1-based node ids, space-separated.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        for members in self.clusters() {
            let ids: Vec<String> = members.iter().map(|v| (v + 1).to_string()).collect();
            writeln!(out, "{}", ids.join(" ")).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_are_renumbered_by_smallest_member() {
        let p = Partition::from_labels(vec![7, 7, 3, 3, 9]).unwrap();
        assert_eq!(p.labels(), &[0, 0, 1, 1, 2]);
        assert_eq!(p.p(), 3);
    }

    #[test]
    fn clusters_round_trip_from_labels() {
        let p = Partition::from_labels(vec![1, 0, 1, 2]).unwrap();
        assert_eq!(p.clusters(), vec![vec![0, 2], vec![1], vec![3]]);
        assert_eq!(p.sizes(), vec![2, 1, 1]);
        assert_eq!(p.singleton_count(), 2);
    }

    #[test]
    fn from_clusters_validates_coverage() {
        assert!(matches!(
            Partition::from_clusters(3, &[vec![0, 1], vec![1, 2]]),
            Err(PartitionError::Overlap { node: 1, .. })
        ));
        assert!(matches!(
            Partition::from_clusters(3, &[vec![0, 1]]),
            Err(PartitionError::Unassigned { node: 2 })
        ));
        assert!(matches!(
            Partition::from_clusters(2, &[vec![0, 1], vec![]]),
            Err(PartitionError::EmptyCluster { cluster: 1, .. })
        ));
    }

    #[test]
    fn equal_groupings_compare_equal_regardless_of_input_labels() {
        let a = Partition::from_labels(vec![5, 5, 2, 2]).unwrap();
        let b = Partition::from_clusters(4, &[vec![2, 3], vec![0, 1]]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn merge_combines_two_clusters() {
        let p = Partition::from_labels(vec![0, 1, 2, 1]).unwrap();
        let merged = p.merge(1, 2);
        assert_eq!(merged.p(), 2);
        assert_eq!(merged.clusters(), vec![vec![0], vec![1, 2, 3]]);
    }

    #[test]
    fn text_output_is_one_based() {
        let p = Partition::from_labels(vec![0, 1, 0]).unwrap();
        assert_eq!(p.to_text(), "1 3\n2\n");
    }
}
