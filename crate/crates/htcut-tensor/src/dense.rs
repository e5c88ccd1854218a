//! Brute-force dense tensor oracle.
//!
//! Materializes the full order-k, dimension-n adjacency or Laplacian
//! tensor as a flat n^k array and evaluates the form and the polynomial
//! map by literal summation over all index tuples. Exponentially slow by
//! design — it exists so the O(m·k) fast paths in the crate root can be
//! checked against an implementation too simple to be wrong.

use crate::{LaplacianKind, TensorError};
use htcut_core::Hypergraph;

/// Upper bound on n^k entries the oracle will materialize.
const SIZE_GUARD: usize = 10_000_000;

/// A fully materialized super-symmetric tensor.
#[derive(Debug, Clone)]
pub struct DenseTensor {
    n: usize,
    k: usize,
    data: Vec<f64>,
}

impl DenseTensor {
    /// The adjacency tensor: w_e/(k−1)! at every permutation of each
    /// hyperedge's node tuple, zero elsewhere.
    pub fn adjacency(h: &Hypergraph) -> Result<Self, TensorError> {
        let mut t = Self::zeros(h.n(), h.k())?;
        let entry_scale = 1.0 / factorial(h.k() - 1);
        for e in h.edges() {
            let v = e.weight() * entry_scale;
            for_each_permutation(e.nodes(), &mut |perm| {
                let idx = t.flat_index(perm);
                t.data[idx] = v;
            });
        }
        Ok(t)
    }

    /// The Laplacian tensor of the requested kind: degree (or unit)
    /// diagonal minus the (scaled) adjacency entries.
    pub fn laplacian(h: &Hypergraph, kind: LaplacianKind) -> Result<Self, TensorError> {
        let mut t = Self::zeros(h.n(), h.k())?;
        let degrees = h.incidence().degrees().to_vec();
        let entry_scale = 1.0 / factorial(h.k() - 1);
        match kind {
            LaplacianKind::Unnormalized => {
                for (i, &d) in degrees.iter().enumerate() {
                    let idx = t.flat_index(&vec![i; h.k()]);
                    t.data[idx] = d;
                }
                for e in h.edges() {
                    let v = e.weight() * entry_scale;
                    for_each_permutation(e.nodes(), &mut |perm| {
                        let idx = t.flat_index(perm);
                        t.data[idx] = -v;
                    });
                }
            }
            LaplacianKind::Normalized => {
                if let Some(node) = degrees.iter().position(|&d| d <= 0.0) {
                    return Err(TensorError::ZeroDegree { node: node + 1 });
                }
                let inv_root: Vec<f64> = degrees
                    .iter()
                    .map(|&d| d.powf(-1.0 / h.k() as f64))
                    .collect();
                for i in 0..h.n() {
                    let idx = t.flat_index(&vec![i; h.k()]);
                    t.data[idx] = 1.0;
                }
                for e in h.edges() {
                    let v = e.weight()
                        * entry_scale
                        * e.nodes().iter().map(|&t| inv_root[t]).product::<f64>();
                    for_each_permutation(e.nodes(), &mut |perm| {
                        let idx = t.flat_index(perm);
                        t.data[idx] = -v;
                    });
                }
            }
        }
        Ok(t)
    }

    fn zeros(n: usize, k: usize) -> Result<Self, TensorError> {
        let mut size: usize = 1;
        for _ in 0..k {
            size = size
                .checked_mul(n)
                .filter(|&s| s <= SIZE_GUARD)
                .ok_or(TensorError::TensorTooLarge { n, k })?;
        }
        Ok(DenseTensor {
            n,
            k,
            data: vec![0.0; size],
        })
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// Flat entry storage, row-major over index tuples.
    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    /// Entry at an explicit index tuple (length k, each < n).
    pub fn entry(&self, indices: &[usize]) -> f64 {
        self.data[self.flat_index(indices)]
    }

    fn flat_index(&self, indices: &[usize]) -> usize {
        debug_assert_eq!(indices.len(), self.k);
        indices.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.n);
            acc * self.n + i
        })
    }

    /// Literal O(n^k) evaluation of `Σ T[i1…ik]·x_{i1}⋯x_{ik}`.
    pub fn objective(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.n, "input length must match dimension");
        self.data
            .iter()
            .enumerate()
            .map(|(flat, &v)| {
                if v == 0.0 {
                    return 0.0;
                }
                v * self.tuple_product(flat, 0, x)
            })
            .sum()
    }

    /// Literal O(n^k) evaluation of the map `x ↦ T·x^{k−1}`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "input length must match dimension");
        let mut out = vec![0.0; self.n];
        for (flat, &v) in self.data.iter().enumerate() {
            if v == 0.0 {
                continue;
            }
            let first = flat / self.n.pow((self.k - 1) as u32);
            out[first] += v * self.tuple_product(flat, 1, x);
        }
        out
    }

    /// Product of x over the index tuple encoded by `flat`, skipping the
    /// first `skip` positions.
    fn tuple_product(&self, mut flat: usize, skip: usize, x: &[f64]) -> f64 {
        let mut product = 1.0;
        for pos in (0..self.k).rev() {
            let i = flat % self.n;
            flat /= self.n;
            if pos >= skip {
                product *= x[i];
            }
        }
        product
    }

    /// Count of nonzero entries.
    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|&&v| v != 0.0).count()
    }

    /// Largest |difference| against another tensor of the same shape.
    pub fn max_abs_diff(&self, other: &DenseTensor) -> f64 {
        assert_eq!((self.n, self.k), (other.n, other.k), "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|v| v as f64).product()
}

/// Visit every permutation of `items` (Heap's algorithm, iterative).
fn for_each_permutation(items: &[usize], visit: &mut impl FnMut(&[usize])) {
    let mut a = items.to_vec();
    let n = a.len();
    let mut c = vec![0usize; n];
    visit(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            visit(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_of_three_four_edges_has_72_entries_of_one_sixth() {
        // Three 4-uniform edges on five nodes: each edge contributes
        // 4! = 24 permutation entries of 1/3! = 1/6.
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
        let a = DenseTensor::adjacency(&h).unwrap();
        assert_eq!(a.nonzero_count(), 72);
        for &v in a.entries() {
            assert!(v == 0.0 || v == 1.0 / 6.0, "unexpected entry {v}");
        }
    }

    #[test]
    fn laplacian_diagonal_holds_degrees() {
        let h = Hypergraph::new(
            4,
            3,
            vec![(vec![0, 1, 2], 2.0), (vec![1, 2, 3], 1.0)],
        )
        .unwrap();
        let t = DenseTensor::laplacian(&h, LaplacianKind::Unnormalized).unwrap();
        let degrees = h.incidence().degrees().to_vec();
        for (i, &d) in degrees.iter().enumerate() {
            assert_eq!(t.entry(&[i, i, i]), d, "diagonal entry {i}");
        }
    }

    #[test]
    fn empty_hypergraph_gives_zero_adjacency() {
        let h = Hypergraph::new(3, 3, std::iter::empty()).unwrap();
        let a = DenseTensor::adjacency(&h).unwrap();
        assert_eq!(a.nonzero_count(), 0);
    }

    #[test]
    fn size_guard_rejects_huge_tensors() {
        let h = Hypergraph::new(200, 4, std::iter::empty()).unwrap();
        assert_eq!(
            DenseTensor::adjacency(&h).unwrap_err(),
            TensorError::TensorTooLarge { n: 200, k: 4 }
        );
    }

    #[test]
    fn permutation_visitor_covers_all_orderings() {
        let mut seen = Vec::new();
        for_each_permutation(&[4, 7, 9], &mut |p| seen.push(p.to_vec()));
        seen.sort();
        assert_eq!(seen.len(), 6);
        seen.dedup();
        assert_eq!(seen.len(), 6, "all six orderings must be distinct");
    }
}
