//! Batched experiments: generate a corpus, compare the sign and score
//! methods on every instance, and serialize the outcomes as CSV.
//!
//! Records are produced in instance order regardless of how the parallel
//! scheduler interleaves the work, so output files are reproducible
//! byte-for-byte for a fixed seed.

use std::time::Instant;

use htcut_eigen::SolverConfig;
use htcut_gen::GenSpec;
use htcut_partition::compare_methods;
use htcut_tensor::LaplacianKind;
use rayon::prelude::*;

use crate::{fmt_real, CliError};

/// Header row for per-instance record files.
pub const RECORD_HEADER: &str =
    "index,spec,r_f,r_p,pi,lambda1,runtime_ms,reference_degenerate,sign_singletons,score_singletons";

/// Header row for improvement histograms.
pub const HISTOGRAM_HEADER: &str = "bin_lo,bin_hi,count";

/// Header row for the ladder sweep.
pub const COCKROACH_HEADER: &str = "t,r_sign,r_score,pi";

/// One corpus instance's outcome: the generation request, both methods'
/// ratio cuts, the improvement of score over sign, the minimum positive
/// eigenvalue, singleton-cluster counts, and the wall-clock cost.
#[derive(Debug, Clone)]
pub struct ExperimentRecord {
    pub spec: GenSpec,
    /// Sign-method ratio cut.
    pub r_f: f64,
    /// Score-method ratio cut.
    pub r_p: f64,
    /// Percentage improvement (r_f − r_p)/r_f · 100 when r_f > 0, else 0.
    pub pi: f64,
    /// True when the sign method's cost was not positive, which pins `pi`
    /// to 0 rather than dividing by it.
    pub reference_degenerate: bool,
    /// Minimum positive eigenvalue of the instance's Laplacian.
    pub lambda1: f64,
    pub runtime_ms: u128,
    /// Single-node clusters produced by the sign method.
    pub sign_singletons: usize,
    /// Single-node clusters produced by the score method.
    pub score_singletons: usize,
}

impl ExperimentRecord {
    /// Generate the instance and compare both methods on it at p = 2.
    pub fn run(
        spec: &GenSpec,
        kind: LaplacianKind,
        cfg: &SolverConfig,
    ) -> Result<Self, CliError> {
        let h = spec.generate().map_err(|e| CliError::Usage(e.to_string()))?;
        let started = Instant::now();
        let cmp = compare_methods(&h, 2, kind, cfg).map_err(CliError::from_partition)?;
        let runtime_ms = started.elapsed().as_millis();
        let lambda1 = cmp
            .score
            .fiedler
            .as_ref()
            .map_or(f64::NAN, |pair| pair.lambda);
        Ok(ExperimentRecord {
            spec: spec.clone(),
            r_f: cmp.r_f,
            r_p: cmp.r_p,
            pi: cmp.pi,
            reference_degenerate: cmp.reference_degenerate,
            lambda1,
            runtime_ms,
            sign_singletons: cmp.sign.partition.singleton_count(),
            score_singletons: cmp.score.partition.singleton_count(),
        })
    }

    pub fn csv_row(&self, index: usize) -> String {
        format!(
            "{index},{},{},{},{},{},{},{},{},{}",
            self.spec,
            fmt_real(self.r_f),
            fmt_real(self.r_p),
            fmt_real(self.pi),
            fmt_real(self.lambda1),
            self.runtime_ms,
            self.reference_degenerate,
            self.sign_singletons,
            self.score_singletons,
        )
    }
}

/// Run the comparison over every spec in parallel. Instance `i` solves
/// with seed `cfg.seed + i` so each record is reproducible on its own,
/// and results come back in input order.
pub fn run_batch(
    specs: &[GenSpec],
    kind: LaplacianKind,
    cfg: &SolverConfig,
) -> Result<Vec<ExperimentRecord>, CliError> {
    specs
        .par_iter()
        .enumerate()
        .map(|(i, spec)| {
            let mut instance_cfg = cfg.clone();
            instance_cfg.seed = cfg.seed.wrapping_add(i as u64);
            ExperimentRecord::run(spec, kind, &instance_cfg)
        })
        .collect()
}

/// Records file: header plus one row per instance, LF line endings.
pub fn records_csv(records: &[ExperimentRecord]) -> String {
    let mut out = String::from(RECORD_HEADER);
    out.push('\n');
    for (i, record) in records.iter().enumerate() {
        out.push_str(&record.csv_row(i));
        out.push('\n');
    }
    out
}

/// Equal-width histogram of the improvement column as `bin_lo,bin_hi,count`
/// rows. A constant column is padded to a non-empty range so every file
/// has the same shape.
pub fn pi_histogram_csv(records: &[ExperimentRecord], bins: usize) -> String {
    let values: Vec<f64> = records.iter().map(|r| r.pi).collect();
    let mut lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let mut hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if values.is_empty() {
        lo = 0.0;
        hi = 1.0;
    } else if !(hi > lo) {
        lo -= 0.5;
        hi += 0.5;
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for v in &values {
        let idx = (((v - lo) / width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    let mut out = String::from(HISTOGRAM_HEADER);
    out.push('\n');
    for (b, count) in counts.iter().enumerate() {
        let bin_lo = lo + b as f64 * width;
        let bin_hi = if b + 1 == bins { hi } else { lo + (b + 1) as f64 * width };
        out.push_str(&format!("{},{},{count}\n", fmt_real(bin_lo), fmt_real(bin_hi)));
    }
    out
}

/// Plain-text digest of a batch, printed after the CSV is written:
/// improvement statistics, the negative and degenerate counts, and the
/// average number of singleton clusters per method.
pub fn summarize(records: &[ExperimentRecord]) -> String {
    let n = records.len().max(1) as f64;
    let mut pis: Vec<f64> = records.iter().map(|r| r.pi).collect();
    pis.sort_by(f64::total_cmp);
    let mean = pis.iter().sum::<f64>() / n;
    let median = if pis.is_empty() {
        f64::NAN
    } else if pis.len() % 2 == 1 {
        pis[pis.len() / 2]
    } else {
        0.5 * (pis[pis.len() / 2 - 1] + pis[pis.len() / 2])
    };
    let negative = records.iter().filter(|r| r.pi < 0.0).count();
    let degenerate = records.iter().filter(|r| r.reference_degenerate).count();
    let sign_singletons =
        records.iter().map(|r| r.sign_singletons).sum::<usize>() as f64 / n;
    let score_singletons =
        records.iter().map(|r| r.score_singletons).sum::<usize>() as f64 / n;
    format!(
        "instances: {}\nmean pi: {mean:.4}\nmedian pi: {median:.4}\n\
         negative pi: {negative}/{}\ndegenerate reference: {degenerate}\n\
         avg singletons (sign): {sign_singletons:.3}\n\
         avg singletons (score): {score_singletons:.3}\n",
        records.len(),
        records.len(),
    )
}

/// One ladder-sweep row. For the 4t-node ladder the expected cuts have
/// closed forms — the sign method pays ratio cut exactly 1 and the score
/// method exactly 2/t — and [`cockroach_sweep`] checks both bitwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CockroachRow {
    pub t: usize,
    pub r_sign: f64,
    pub r_score: f64,
    pub pi: f64,
}

impl CockroachRow {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{}",
            self.t,
            fmt_real(self.r_sign),
            fmt_real(self.r_score),
            fmt_real(self.pi)
        )
    }
}

/// Sweep ladder half-lengths `t_min..=t_max`, comparing both methods on
/// each ladder. Returns the rows together with any closed-form violations;
/// the caller decides whether violations are fatal.
pub fn cockroach_sweep(
    t_min: usize,
    t_max: usize,
    cfg: &SolverConfig,
) -> Result<(Vec<CockroachRow>, Vec<String>), CliError> {
    if t_min < 2 {
        return Err(CliError::Usage(format!(
            "ladders need t ≥ 2 rungs, got --t-min {t_min}"
        )));
    }
    if t_min > t_max {
        return Err(CliError::Usage(format!(
            "--t-min {t_min} exceeds --t-max {t_max}"
        )));
    }
    let rows: Vec<CockroachRow> = (t_min..=t_max)
        .into_par_iter()
        .map(|t| {
            let spec = GenSpec::Cockroach { t };
            let h = spec.generate().map_err(|e| CliError::Usage(e.to_string()))?;
            let cmp = compare_methods(&h, 2, LaplacianKind::Unnormalized, cfg)
                .map_err(CliError::from_partition)?;
            Ok(CockroachRow { t, r_sign: cmp.r_f, r_score: cmp.r_p, pi: cmp.pi })
        })
        .collect::<Result<_, CliError>>()?;
    let mut violations = Vec::new();
    for row in &rows {
        if row.r_sign != 1.0 {
            violations.push(format!(
                "t={}: sign-method ratio cut {} differs from the closed form 1",
                row.t,
                fmt_real(row.r_sign)
            ));
        }
        if row.r_score != 2.0 / row.t as f64 {
            violations.push(format!(
                "t={}: score-method ratio cut {} differs from the closed form 2/{}",
                row.t,
                fmt_real(row.r_score),
                row.t
            ));
        }
    }
    Ok((rows, violations))
}

/// CSV for the ladder sweep: header plus one row per t.
pub fn cockroach_csv(rows: &[CockroachRow]) -> String {
    let mut out = String::from(COCKROACH_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv_row());
        out.push('\n');
    }
    out
}
