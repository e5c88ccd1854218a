//! Seeded hypergraph generators and named worked-example fixtures.
//!
//! Random families (Erdős–Rényi graphs, two-block stochastic block models
//! for graphs and for k-uniform hypergraphs) are driven by an explicitly
//! seeded ChaCha stream, one stream per generated instance, so corpora
//! are reproducible on any platform. The structured families (cockroach
//! ladder graphs and the hand-checked fixtures used throughout the test
//! suite) are deterministic.

use htcut_core::Hypergraph;
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Poisson};
use thiserror::Error;

/// Errors raised by the generators.
#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("probability {value} is outside [0, 1]")]
    InvalidProbability { value: f64 },

    #[error("cockroach parameter must be at least 2, got t={0}")]
    LadderTooShort(usize),

    #[error("hypergraph block model needs k ≥ 3, got k={0}")]
    OrderTooSmall(usize),

    #[error("expected edge count {expected:.0} exceeds the generation guard of {guard}")]
    ExpectedSizeTooLarge { expected: f64, guard: u64 },

    #[error("unknown fixture '{0}'")]
    UnknownFixture(String),
}

/// Guard on the expected number of generated hyperedges.
const EDGE_GUARD: u64 = 1_000_000;

/// Largest subset population enumerated one Bernoulli draw at a time;
/// beyond this, edge counts are drawn per class and subsets sampled
/// without replacement.
const ENUMERATION_LIMIT: u128 = 10_000_000;

/// A generation request, carried alongside results so experiment records
/// are self-describing.
#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    ErdosRenyi { n: usize, p: f64, seed: u64 },
    GraphSbm { n1: usize, n2: usize, p: f64, q: f64, seed: u64 },
    HypergraphSbm { n1: usize, n2: usize, k: usize, p: f64, q: f64, seed: u64 },
    Cockroach { t: usize },
    Fixture { name: FixtureName },
}

impl GenSpec {
    pub fn generate(&self) -> Result<Hypergraph, GenError> {
        match *self {
            GenSpec::ErdosRenyi { n, p, seed } => gen_er(n, p, seed),
            GenSpec::GraphSbm { n1, n2, p, q, seed } => gen_sbm_graph(n1, n2, p, q, seed),
            GenSpec::HypergraphSbm { n1, n2, k, p, q, seed } => {
                gen_sbm_hypergraph(n1, n2, k, p, q, seed)
            }
            GenSpec::Cockroach { t } => gen_cockroach(t),
            GenSpec::Fixture { name } => Ok(fixture(name)),
        }
    }
}

impl std::fmt::Display for GenSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GenSpec::ErdosRenyi { n, p, seed } => write!(f, "er(n={n} p={p} seed={seed})"),
            GenSpec::GraphSbm { n1, n2, p, q, seed } => {
                write!(f, "sbm(n1={n1} n2={n2} p={p} q={q} seed={seed})")
            }
            GenSpec::HypergraphSbm { n1, n2, k, p, q, seed } => {
                write!(f, "hysbm(n1={n1} n2={n2} k={k} p={p} q={q} seed={seed})")
            }
            GenSpec::Cockroach { t } => write!(f, "cockroach(t={t})"),
            GenSpec::Fixture { name } => write!(f, "fixture({name})"),
        }
    }
}

fn check_probability(p: f64) -> Result<(), GenError> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(GenError::InvalidProbability { value: p });
    }
    Ok(())
}

/// Erdős–Rényi graph G(n, p): each node pair is an edge independently
/// with probability `p`, unit weights.
pub fn gen_er(n: usize, p: f64, seed: u64) -> Result<Hypergraph, GenError> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((vec![i, j], 1.0));
            }
        }
    }
    Ok(Hypergraph::new(n, 2, edges).expect("generated edges are valid"))
}

/// Two-block stochastic block model graph: nodes 1..=n1 form the first
/// block; pairs inside a block appear with probability `p`, pairs across
/// blocks with probability `q`. Setting p = q recovers G(n1+n2, p).
pub fn gen_sbm_graph(n1: usize, n2: usize, p: f64, q: f64, seed: u64) -> Result<Hypergraph, GenError> {
    check_probability(p)?;
    check_probability(q)?;
    let n = n1 + n2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let prob = if (i < n1) == (j < n1) { p } else { q };
            if rng.random::<f64>() < prob {
                edges.push((vec![i, j], 1.0));
            }
        }
    }
    Ok(Hypergraph::new(n, 2, edges).expect("generated edges are valid"))
}

/// Two-block stochastic block model for k-uniform hypergraphs: every
/// k-subset lying entirely inside one block appears with probability `p`,
/// every straddling k-subset with probability `q`, unit weights.
///
/// When the number of candidate subsets is enumerable the generator walks
/// them lazily with one Bernoulli draw each; for very large populations it
/// instead draws per-class binomial counts and samples that many distinct
/// subsets. Expected output size is guarded.
pub fn gen_sbm_hypergraph(
    n1: usize,
    n2: usize,
    k: usize,
    p: f64,
    q: f64,
    seed: u64,
) -> Result<Hypergraph, GenError> {
    check_probability(p)?;
    check_probability(q)?;
    if k < 3 {
        return Err(GenError::OrderTooSmall(k));
    }
    let n = n1 + n2;
    let intra = binomial_coefficient(n1, k) + binomial_coefficient(n2, k);
    let total = binomial_coefficient(n, k);
    let inter = total - intra;
    let expected = p * intra as f64 + q * inter as f64;
    if expected > EDGE_GUARD as f64 {
        return Err(GenError::ExpectedSizeTooLarge {
            expected,
            guard: EDGE_GUARD,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let is_intra = |subset: &[usize]| {
        subset.iter().all(|&v| v < n1) || subset.iter().all(|&v| v >= n1)
    };
    let mut edges = Vec::new();
    if total <= ENUMERATION_LIMIT {
        for subset in (0..n).combinations(k) {
            let prob = if is_intra(&subset) { p } else { q };
            if rng.random::<f64>() < prob {
                edges.push((subset, 1.0));
            }
        }
    } else {
        // Population too large to enumerate: decide how many edges each
        // class gets, then rejection-sample distinct subsets of the class.
        let want_intra = binomial_count(&mut rng, intra, p);
        let want_inter = binomial_count(&mut rng, inter, q);
        let mut chosen: std::collections::BTreeSet<Vec<usize>> = Default::default();
        let need = |want: u64, intra_class: bool, rng: &mut ChaCha8Rng,
                    chosen: &mut std::collections::BTreeSet<Vec<usize>>| {
            let mut found = 0u64;
            while found < want {
                let mut subset: Vec<usize> = Vec::with_capacity(k);
                while subset.len() < k {
                    let v = rng.random_range(0..n);
                    if !subset.contains(&v) {
                        subset.push(v);
                    }
                }
                subset.sort_unstable();
                if is_intra(&subset) == intra_class && chosen.insert(subset) {
                    found += 1;
                }
            }
        };
        need(want_intra, true, &mut rng, &mut chosen);
        need(want_inter, false, &mut rng, &mut chosen);
        edges = chosen.into_iter().map(|s| (s, 1.0)).collect();
    }
    Ok(Hypergraph::new(n, k, edges).expect("generated edges are valid"))
}

/// Number of edges a subset class of the given size contributes.
fn binomial_count(rng: &mut ChaCha8Rng, population: u128, p: f64) -> u64 {
    match u64::try_from(population) {
        Ok(n) => Binomial::new(n, p)
            .expect("probability already validated")
            .sample(rng),
        Err(_) => {
            // Beyond u64 the expected-size guard forces p·population to stay
            // tiny relative to the population, where the Poisson limit of
            // the binomial is exact to any precision we can observe.
            let mean = (population as f64 * p).max(f64::MIN_POSITIVE);
            let draw: f64 = Poisson::new(mean).expect("mean is finite").sample(rng);
            draw as u64
        }
    }
}

fn binomial_coefficient(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut result: u128 = 1;
    for i in 0..k {
        result = result.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    result
}

/// The 4t-node cockroach ladder: two horizontal paths of 2t nodes whose
/// right halves are joined by t rungs, leaving two bare antennae on the
/// left. Node 1..2t is the top path, 2t+1..4t the bottom path, and rung i
/// joins node t+i to node 3t+i.
pub fn gen_cockroach(t: usize) -> Result<Hypergraph, GenError> {
    if t < 2 {
        return Err(GenError::LadderTooShort(t));
    }
    let mut edges = Vec::with_capacity(5 * t - 2);
    for i in 0..(2 * t - 1) {
        edges.push((vec![i, i + 1], 1.0)); // top path
        edges.push((vec![2 * t + i, 2 * t + i + 1], 1.0)); // bottom path
    }
    for i in 0..t {
        edges.push((vec![t + i, 3 * t + i], 1.0)); // rung
    }
    Ok(Hypergraph::new(4 * t, 2, edges).expect("ladder edges are valid"))
}

/// Named hand-checked instances used across the test suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureName {
    /// Five-node 3-uniform chain of three overlapping edges.
    ThreeEdgeChain,
    /// Twelve-node 3-uniform hypergraph with two weakly bridged clusters.
    TwelveNode,
    /// Five-node 4-uniform hypergraph with three edges.
    FourUniformTriple,
    /// Four nodes, one 4-uniform edge of weight 1.
    SameGraphPairA,
    /// Four nodes, all four 3-subsets at weight ½ — clique-reduces to the
    /// same graph as [`FixtureName::SameGraphPairA`].
    SameGraphPairB,
}

impl std::fmt::Display for FixtureName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            FixtureName::ThreeEdgeChain => "three_edge_chain",
            FixtureName::TwelveNode => "twelve_node",
            FixtureName::FourUniformTriple => "four_uniform_triple",
            FixtureName::SameGraphPairA => "same_graph_pair_a",
            FixtureName::SameGraphPairB => "same_graph_pair_b",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for FixtureName {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "three_edge_chain" => Ok(FixtureName::ThreeEdgeChain),
            "twelve_node" => Ok(FixtureName::TwelveNode),
            "four_uniform_triple" => Ok(FixtureName::FourUniformTriple),
            "same_graph_pair_a" => Ok(FixtureName::SameGraphPairA),
            "same_graph_pair_b" => Ok(FixtureName::SameGraphPairB),
            other => Err(GenError::UnknownFixture(other.to_string())),
        }
    }
}

/// Build a named fixture.
pub fn fixture(name: FixtureName) -> Hypergraph {
    let (n, k, edges): (usize, usize, Vec<(Vec<usize>, f64)>) = match name {
        FixtureName::ThreeEdgeChain => (
            5,
            3,
            vec![
                (vec![1, 2, 3], 1.0),
                (vec![2, 3, 4], 1.0),
                (vec![3, 4, 5], 1.0),
            ],
        ),
        // Two clusters {1..7} and {8..12} bridged through node 1; the
        // weight list follows the score-table row order of the source
        // remaining weights grade the clusters internally.
        FixtureName::TwelveNode => (
            12,
            3,
            vec![
                (vec![1, 2, 3], 1.0),
                (vec![2, 3, 4], 1.0),
                (vec![3, 4, 7], 2.0),
                (vec![4, 5, 6], 2.0),
                (vec![4, 6, 7], 2.0),
                (vec![1, 8, 11], 3.0),
                (vec![8, 9, 10], 2.0),
                (vec![9, 10, 12], 2.0),
                (vec![10, 11, 12], 2.0),
            ],
        ),
        FixtureName::FourUniformTriple => (
            5,
            4,
            vec![
                (vec![1, 2, 3, 4], 1.0),
                (vec![2, 3, 4, 5], 1.0),
                (vec![1, 2, 3, 5], 1.0),
            ],
        ),
        FixtureName::SameGraphPairA => (4, 4, vec![(vec![1, 2, 3, 4], 1.0)]),
        FixtureName::SameGraphPairB => (
            4,
            3,
            vec![
                (vec![1, 2, 3], 0.5),
                (vec![1, 2, 4], 0.5),
                (vec![1, 3, 4], 0.5),
                (vec![2, 3, 4], 0.5),
            ],
        ),
    };
    let zero_based = edges
        .into_iter()
        .map(|(nodes, w)| (nodes.into_iter().map(|v| v - 1).collect(), w));
    Hypergraph::new(n, k, zero_based).expect("fixtures are valid by construction")
}
