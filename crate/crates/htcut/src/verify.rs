//! Seeded property suites behind `htcut verify`: each suite sweeps a
//! deterministic random corpus, prints a pass/fail table, and hands back
//! the first counterexample (rendered in the hypergraph text format) so a
//! failure can be replayed from a file.

use std::collections::BTreeSet;
use std::path::Path;

use htcut_core::Hypergraph;
use htcut_eigen::{check_bound, SolverConfig};
use htcut_gen::{fixture, FixtureName, GenSpec};
use htcut_partition::{oracle_min_ratio_cut, score_partition};
use htcut_tensor::{apply, clique_laplacian, contract_to_matrix, LaplacianKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::CliError;

/// Entry-wise agreement demanded between the closed-form reduction and the
/// brute-force contraction.
const CONTRACTION_TOL: f64 = 1e-12;

/// Residual allowed for the flat zero eigenpair.
const FLAT_TOL: f64 = 1e-12;

/// Slack added to the spectral bounds to absorb eigensolver round-off.
const BOUND_SLACK: f64 = 1e-9;

/// Slack on oracle-vs-score comparisons, which are sums of exact cut
/// weights divided by cluster sizes.
const ORACLE_SLACK: f64 = 1e-12;

/// One line of a suite's pass/fail table.
#[derive(Debug, Clone)]
pub struct CheckLine {
    pub label: &'static str,
    pub trials: usize,
    /// Worst observed value of the check's margin; at or below zero means
    /// every trial satisfied the property with room to spare.
    pub worst: f64,
    pub passed: bool,
}

/// First counterexample found by a suite, ready to be written to disk.
#[derive(Debug, Clone)]
pub struct FailureDump {
    pub detail: String,
    pub hypergraph_text: String,
}

/// Outcome of one verification suite.
#[derive(Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: Vec<CheckLine>,
    pub failure: Option<FailureDump>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Fixed-width table, one row per check.
    pub fn table(&self) -> String {
        let mut out = format!("{:<58}{:>8}{:>14}{:>8}\n", "check", "trials", "worst", "result");
        for check in &self.checks {
            out.push_str(&format!(
                "{:<58}{:>8}{:>14.3e}{:>8}\n",
                check.label,
                check.trials,
                check.worst,
                if check.passed { "pass" } else { "FAIL" },
            ));
        }
        out
    }
}

/// Print the table; on failure, write the counterexample next to a
/// replayable comment header and return the exit-3 error.
pub fn finish(report: SuiteReport, dump_to: &Path) -> Result<(), CliError> {
    print!("{}", report.table());
    if report.passed() {
        return Ok(());
    }
    let mut dump = None;
    if let Some(f) = &report.failure {
        let contents = format!("# {}\n{}", f.detail.replace('\n', "\n# "), f.hypergraph_text);
        std::fs::write(dump_to, contents).map_err(|e| {
            CliError::Usage(format!("cannot write {}: {e}", dump_to.display()))
        })?;
        dump = Some(dump_to.to_path_buf());
    }
    Err(CliError::Verification {
        message: format!("verification suite '{}' found a counterexample", report.name),
        dump,
    })
}

/// Independent deterministic stream per trial, decorrelated from
/// neighbouring seeds.
fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (trial as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Sample a k-uniform hypergraph with n ∈ (k, n_max] nodes and between n
/// and 2n distinct edges (duplicates collapse, so the count may come out
/// lower). Weights are unit or drawn from [0.5, 2).
fn random_hypergraph(rng: &mut ChaCha8Rng, k: usize, n_max: usize, weighted: bool) -> Hypergraph {
    let n = rng.random_range(k + 1..=n_max);
    let target = rng.random_range(n..=2 * n);
    let mut subsets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for _ in 0..target {
        let mut nodes = rand::seq::index::sample(rng, n, k).into_vec();
        nodes.sort_unstable();
        subsets.insert(nodes);
    }
    let edges: Vec<(Vec<usize>, f64)> = subsets
        .into_iter()
        .map(|nodes| {
            let w = if weighted { rng.random_range(0.5..2.0) } else { 1.0 };
            (nodes, w)
        })
        .collect();
    Hypergraph::new(n, k, edges).expect("sampled edges are valid by construction")
}

/// Resample until the hypergraph is connected; the corpora are small
/// enough that this takes a handful of draws.
fn connected_random(rng: &mut ChaCha8Rng, k: usize, n_max: usize) -> Hypergraph {
    for _ in 0..500 {
        let h = random_hypergraph(rng, k, n_max, false);
        if h.connected_components(&[]).p() == 1 {
            return h;
        }
    }
    unreachable!("a connected instance never showed up in 500 draws");
}

fn factorial(x: usize) -> f64 {
    (1..=x).map(|v| v as f64).product()
}

/// Visit every permutation of `items` (Heap-style swap recursion).
fn for_each_permutation(items: &mut Vec<usize>, fix: usize, visit: &mut impl FnMut(&[usize])) {
    if fix == items.len() {
        visit(items);
        return;
    }
    for i in fix..items.len() {
        items.swap(fix, i);
        for_each_permutation(items, fix + 1, visit);
        items.swap(fix, i);
    }
}

/// Contract the Laplacian tensor with the all-ones vector by explicit
/// permutation enumeration — an intentionally separate code path from the
/// closed-form pairwise reduction it cross-checks.
fn independent_contraction(h: &Hypergraph) -> Vec<Vec<f64>> {
    let n = h.n();
    let share = 1.0 / factorial(h.k() - 1);
    let mut m = vec![vec![0.0; n]; n];
    for e in h.edges() {
        let w = e.weight() * share;
        let mut nodes = e.nodes().to_vec();
        for_each_permutation(&mut nodes, 0, &mut |perm| {
            m[perm[0]][perm[1]] -= w;
        });
    }
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = h
            .edges()
            .iter()
            .filter(|e| e.nodes().contains(&i))
            .map(|e| e.weight())
            .sum();
    }
    m
}

fn max_abs_diff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn dump_for(h: &Hypergraph, detail: String) -> FailureDump {
    FailureDump { detail, hypergraph_text: h.to_text() }
}

fn keep_first(slot: &mut Option<FailureDump>, candidate: Option<FailureDump>) {
    if slot.is_none() {
        *slot = candidate;
    }
}

/// Suite: the matrix the tensor collapses to. Checks the closed-form
/// contraction against brute-force permutation enumeration, the exact
/// (k−1) scale identity with the clique-expansion Laplacian, and that the
/// two four-node fixtures built to share a reduction really collapse to
/// bit-identical matrices.
pub fn contraction(trials: usize, seed: u64) -> SuiteReport {
    let mut worst_contract = f64::NEG_INFINITY;
    let mut worst_scale = f64::NEG_INFINITY;
    let mut failure = None;

    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let k = 3 + t % 3;
        let h = random_hypergraph(&mut rng, k, 10, true);

        let reduced = contract_to_matrix(&h);
        let brute = independent_contraction(&h);
        let diff = max_abs_diff(&reduced, &brute);
        worst_contract = worst_contract.max(diff);
        if diff > CONTRACTION_TOL {
            keep_first(
                &mut failure,
                Some(dump_for(&h, format!(
                    "contraction mismatch: |closed-form - brute| = {diff:.3e} > {CONTRACTION_TOL:.0e} (trial {t}, k={k})"
                ))),
            );
        }

        let clique = clique_laplacian(&h);
        let factor = (k - 1) as f64;
        let scale_diff = reduced
            .iter()
            .flatten()
            .zip(clique.iter().flatten())
            .map(|(r, c)| (factor * r - c).abs())
            .fold(0.0, f64::max);
        worst_scale = worst_scale.max(scale_diff);
        if scale_diff != 0.0 {
            keep_first(
                &mut failure,
                Some(dump_for(&h, format!(
                    "clique Laplacian is not exactly (k-1) times the contraction: off by {scale_diff:.3e} (trial {t}, k={k})"
                ))),
            );
        }
    }

    let a = clique_laplacian(&fixture(FixtureName::SameGraphPairA));
    let b = clique_laplacian(&fixture(FixtureName::SameGraphPairB));
    let pair_diff = max_abs_diff(&a, &b);
    if pair_diff != 0.0 {
        keep_first(
            &mut failure,
            Some(dump_for(
                &fixture(FixtureName::SameGraphPairB),
                format!("fixture pair reduces to different clique matrices: |A - B| = {pair_diff:.3e}"),
            )),
        );
    }

    SuiteReport {
        name: "contraction",
        checks: vec![
            CheckLine {
                label: "closed-form contraction matches brute-force enumeration",
                trials,
                worst: worst_contract,
                passed: worst_contract <= CONTRACTION_TOL,
            },
            CheckLine {
                label: "clique Laplacian equals (k-1) x contraction bitwise",
                trials,
                worst: worst_scale,
                passed: worst_scale == 0.0,
            },
            CheckLine {
                label: "same-reduction fixture pair collapses bit-identically",
                trials: 1,
                worst: pair_diff,
                passed: pair_diff == 0.0,
            },
        ],
        failure,
    }
}

/// Suite: spectral bound against brute-forced conductance on connected
/// even-order hypergraphs, plus the weaker power-of-two bound and the
/// claim that the sharper one never loses to it.
pub fn bound(k: usize, trials: usize, seed: u64, cfg: &SolverConfig) -> Result<SuiteReport, CliError> {
    if k < 2 || k % 2 != 0 {
        return Err(CliError::Usage(format!(
            "the conductance bound check needs an even order k >= 2, got {k}"
        )));
    }

    let outcomes: Vec<(f64, f64, f64, Option<FailureDump>)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let h = connected_random(&mut rng, k, 10);
            let mut trial_cfg = cfg.clone();
            trial_cfg.seed = cfg.seed.wrapping_add(t as u64);
            match check_bound(&h, &trial_cfg) {
                Ok(bc) => {
                    let weaker = 2f64.powi(k as i32 / 2) * bc.phi;
                    let sharp_margin = bc.lambda1 - k as f64 * bc.phi;
                    let weak_margin = bc.lambda1 - weaker;
                    let tight_margin = k as f64 * bc.phi - weaker;
                    let dump = (!bc.holds).then(|| {
                        dump_for(&h, format!(
                            "bound violated: lambda1 = {:.12e} exceeds k*phi = {:.12e} (trial {t})",
                            bc.lambda1,
                            k as f64 * bc.phi
                        ))
                    });
                    (sharp_margin, weak_margin, tight_margin, dump)
                }
                Err(e) => (
                    f64::INFINITY,
                    f64::INFINITY,
                    f64::INFINITY,
                    Some(dump_for(&h, format!("solver failed on trial {t}: {e}"))),
                ),
            }
        })
        .collect();

    let mut worst_sharp = f64::NEG_INFINITY;
    let mut worst_weak = f64::NEG_INFINITY;
    let mut worst_tight = f64::NEG_INFINITY;
    let mut failure = None;
    for (sharp, weak, tight, dump) in outcomes {
        worst_sharp = worst_sharp.max(sharp);
        worst_weak = worst_weak.max(weak);
        worst_tight = worst_tight.max(tight);
        keep_first(&mut failure, dump);
    }

    Ok(SuiteReport {
        name: "bound",
        checks: vec![
            CheckLine {
                label: "lambda1(normalized) <= k * conductance",
                trials,
                worst: worst_sharp,
                passed: worst_sharp <= BOUND_SLACK,
            },
            CheckLine {
                label: "lambda1(normalized) <= 2^(k/2) * conductance",
                trials,
                worst: worst_weak,
                passed: worst_weak <= BOUND_SLACK,
            },
            CheckLine {
                label: "k * phi bound is at least as tight as 2^(k/2) * phi",
                trials,
                worst: worst_tight,
                passed: worst_tight <= 0.0,
            },
        ],
        failure,
    })
}

/// Suite: the flat vector is an exact zero eigenpair of the unnormalized
/// Laplacian on every corpus instance — random hypergraphs of orders 3..5
/// plus all named fixtures and a small ladder.
pub fn flat_pair(trials: usize, seed: u64) -> SuiteReport {
    let mut corpus: Vec<Hypergraph> = (0..trials)
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let k = 3 + t % 3;
            random_hypergraph(&mut rng, k, 10, true)
        })
        .collect();
    corpus.extend(
        [
            FixtureName::ThreeEdgeChain,
            FixtureName::TwelveNode,
            FixtureName::FourUniformTriple,
            FixtureName::SameGraphPairA,
            FixtureName::SameGraphPairB,
        ]
        .into_iter()
        .map(fixture),
    );
    corpus.push(GenSpec::Cockroach { t: 3 }.generate().expect("small ladder is valid"));

    let mut worst = f64::NEG_INFINITY;
    let mut failure = None;
    let total = corpus.len();
    for (i, h) in corpus.iter().enumerate() {
        let flat = vec![1.0 / (h.n() as f64).sqrt(); h.n()];
        let image = apply(h, LaplacianKind::Unnormalized, &flat)
            .expect("flat vector length matches the hypergraph");
        let residual = image.iter().map(|v| v * v).sum::<f64>().sqrt();
        worst = worst.max(residual);
        if residual > FLAT_TOL {
            keep_first(
                &mut failure,
                Some(dump_for(h, format!(
                    "flat zero eigenpair residual {residual:.3e} > {FLAT_TOL:.0e} (instance {i})"
                ))),
            );
        }
    }

    SuiteReport {
        name: "flat-pair",
        checks: vec![CheckLine {
            label: "flat vector is an exact zero eigenpair (unnormalized)",
            trials: total,
            worst,
            passed: worst <= FLAT_TOL,
        }],
        failure,
    }
}

/// Suite: the exhaustive minimum-ratio-cut bipartition never costs more
/// than the score method's cut on random 3-uniform instances.
pub fn oracle(trials: usize, seed: u64, cfg: &SolverConfig) -> Result<SuiteReport, CliError> {
    let outcomes: Vec<(f64, Option<FailureDump>)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let h = random_hypergraph(&mut rng, 3, 10, false);
            let mut trial_cfg = cfg.clone();
            trial_cfg.seed = cfg.seed.wrapping_add(t as u64);
            let best = match oracle_min_ratio_cut(&h, 2) {
                Ok(r) => r,
                Err(e) => {
                    return (
                        f64::INFINITY,
                        Some(dump_for(&h, format!("oracle failed on trial {t}: {e}"))),
                    )
                }
            };
            let scored = match score_partition(&h, 2, LaplacianKind::Unnormalized, &trial_cfg) {
                Ok(r) => r,
                Err(e) => {
                    return (
                        f64::INFINITY,
                        Some(dump_for(&h, format!("score method failed on trial {t}: {e}"))),
                    )
                }
            };
            let margin = best.metrics.ratio_cut - scored.metrics.ratio_cut;
            let dump = (margin > ORACLE_SLACK).then(|| {
                dump_for(&h, format!(
                    "oracle ratio cut {:.12e} exceeds score method's {:.12e} (trial {t})",
                    best.metrics.ratio_cut, scored.metrics.ratio_cut
                ))
            });
            (margin, dump)
        })
        .collect();

    let mut worst = f64::NEG_INFINITY;
    let mut failure = None;
    for (margin, dump) in outcomes {
        worst = worst.max(margin);
        keep_first(&mut failure, dump);
    }

    Ok(SuiteReport {
        name: "oracle",
        checks: vec![CheckLine {
            label: "exhaustive bipartition never beaten by the score method",
            trials,
            worst,
            passed: worst <= ORACLE_SLACK,
        }],
        failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_visitor_covers_all_orderings() {
        let mut items = vec![0, 1, 2];
        let mut seen = BTreeSet::new();
        for_each_permutation(&mut items, 0, &mut |p| {
            seen.insert(p.to_vec());
        });
        assert_eq!(seen.len(), 6, "3 items must yield 6 distinct permutations");
        assert_eq!(items, vec![0, 1, 2], "visitor must restore the input order");
    }

    #[test]
    fn brute_force_contraction_matches_on_a_single_edge() {
        let h = Hypergraph::new(4, 3, vec![(vec![0, 1, 2], 2.0)]).unwrap();
        let brute = independent_contraction(&h);
        let reduced = contract_to_matrix(&h);
        assert!(max_abs_diff(&brute, &reduced) <= 1e-15);
        assert_eq!(brute[0][1], -1.0, "pair weight must be w/(k-1) = 1");
        assert_eq!(brute[3][3], 0.0, "untouched node has degree 0");
    }

    #[test]
    fn corpus_sampler_is_deterministic_and_in_range() {
        let mut a = trial_rng(9, 4);
        let mut b = trial_rng(9, 4);
        let ha = random_hypergraph(&mut a, 4, 10, true);
        let hb = random_hypergraph(&mut b, 4, 10, true);
        assert_eq!(ha.to_text(), hb.to_text(), "same seed must give the same instance");
        assert!(ha.n() > 4 && ha.n() <= 10);
        assert!(ha.m() >= 1);
    }

    #[test]
    fn report_table_marks_failures() {
        let report = SuiteReport {
            name: "demo",
            checks: vec![CheckLine { label: "x", trials: 1, worst: 2.0, passed: false }],
            failure: None,
        };
        assert!(report.table().contains("FAIL"));
        assert!(!report.passed());
    }
}
