//! Random-vector accuracy study: RMSE and Pearson correlation of the estimate
//! against the exact cosine similarity, per dimension.

use crate::encoding::{normalize, NormalizePolicy, NormalizedVector};
use crate::error::{Error, Result};
use crate::estimator::{estimate_similarity, EstimatorConfig, QUBITS_PER_ELEMENT};
use crate::format::float17;
use crate::oracle::cosine_similarity_classical;
use crate::real::{compensated_sum, Real};
use crate::rng::{mix_seed, Stream};
use rayon::prelude::*;
use std::fmt::Write as _;
use std::path::Path;

/// Raw vectors with a norm below this are discarded and redrawn.
const MIN_RAW_NORM: f64 = 1e-6;

/// Standard deviations at or below this count as zero variance.
const VARIANCE_FLOOR: f64 = 1e-12;

pub const SCATTER_HEADER: &str = "seed,d,true_similarity,estimate,error";
pub const TABLE_HEADER: &str = "d,qubits,rmse,pearson,samples";

/// Draws `d` entries uniform on `[-1, 1)` until the vector is usable, then normalizes.
pub fn draw_unit_vector<T: Real>(stream: &mut Stream, d: usize) -> Result<NormalizedVector<T>> {
    if d == 0 {
        return Err(Error::EmptyVector);
    }
    loop {
        let raw: Vec<f64> = (0..d).map(|_| stream.next_symmetric()).collect();
        if raw.iter().map(|x| x * x).sum::<f64>().sqrt() < MIN_RAW_NORM {
            continue;
        }
        let raw: Vec<T> = raw.into_iter().map(T::lit).collect();
        return normalize(&raw, NormalizePolicy::Auto);
    }
}

/// The pair `(v, w)` for one seed: `d` draws for `v`, then `d` for `w`, from one stream.
pub fn generate_pair<T: Real>(
    d: usize,
    seed: u64,
) -> Result<(NormalizedVector<T>, NormalizedVector<T>)> {
    let mut stream = Stream::new(seed);
    let v = draw_unit_vector(&mut stream, d)?;
    let w = draw_unit_vector(&mut stream, d)?;
    Ok((v, w))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentRecord<T> {
    pub seed: u64,
    pub d: usize,
    pub true_similarity: T,
    pub estimate: T,
    /// `estimate − true_similarity`.
    pub error: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSummary<T> {
    pub d: usize,
    pub qubits: usize,
    pub rmse: T,
    /// `None` when either series has zero variance.
    pub pearson: Option<T>,
    pub sample_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepOptions {
    pub dims: Vec<usize>,
    pub samples: usize,
    /// Pairs use seeds `base_seed .. base_seed + samples`.
    pub base_seed: u64,
    /// Diagnostic: use `w = v` for every pair.
    pub force_identical: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            dims: vec![2, 4, 8, 12],
            samples: 100,
            base_seed: 0,
            force_identical: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult<T> {
    pub summaries: Vec<SweepSummary<T>>,
    /// Records of dimension `summaries[k].d` are `records[k]`, in seed order.
    pub records: Vec<Vec<ExperimentRecord<T>>>,
}

pub fn run_record<T: Real>(
    d: usize,
    seed: u64,
    config: &EstimatorConfig,
    force_identical: bool,
) -> Result<ExperimentRecord<T>> {
    let (v, w) = generate_pair::<T>(d, seed)?;
    let w = if force_identical { v.clone() } else { w };
    let config = EstimatorConfig {
        root_seed: mix_seed(config.root_seed, seed),
        ..*config
    };
    let estimate = estimate_similarity(&v, &w, &config)?.value;
    let true_similarity = cosine_similarity_classical(&v, &w)?;
    Ok(ExperimentRecord {
        seed,
        d,
        true_similarity,
        estimate,
        error: estimate - true_similarity,
    })
}

pub fn run_sweep<T: Real>(
    options: &SweepOptions,
    config: &EstimatorConfig,
) -> Result<SweepResult<T>> {
    config.validate()?;
    if options.samples < 2 {
        return Err(Error::Config("a sweep needs at least 2 samples".into()));
    }
    if options.dims.is_empty() || options.dims.contains(&0) {
        return Err(Error::Config(
            "dimensions must be a non-empty list of positive integers".into(),
        ));
    }
    let mut summaries = Vec::with_capacity(options.dims.len());
    let mut all_records = Vec::with_capacity(options.dims.len());
    for &d in &options.dims {
        let records = (0..options.samples as u64)
            .into_par_iter()
            .map(|k| {
                let seed = options.base_seed.wrapping_add(k);
                run_record::<T>(d, seed, config, options.force_identical)
            })
            .collect::<Result<Vec<_>>>()?;
        summaries.push(summarize_records(d, &records));
        all_records.push(records);
    }
    Ok(SweepResult {
        summaries,
        records: all_records,
    })
}

pub fn summarize_records<T: Real>(d: usize, records: &[ExperimentRecord<T>]) -> SweepSummary<T> {
    let errors: Vec<T> = records.iter().map(|r| r.error).collect();
    let truth: Vec<T> = records.iter().map(|r| r.true_similarity).collect();
    let est: Vec<T> = records.iter().map(|r| r.estimate).collect();
    SweepSummary {
        d,
        qubits: QUBITS_PER_ELEMENT * d,
        rmse: rmse(&errors).unwrap_or_else(T::nan),
        pearson: pearson(&truth, &est),
        sample_count: records.len(),
    }
}

/// `√(Σe²/n)`; `None` for an empty slice.
pub fn rmse<T: Real>(errors: &[T]) -> Option<T> {
    if errors.is_empty() {
        return None;
    }
    let ss = compensated_sum(errors.iter().map(|&e| e * e));
    Some((ss / T::from_usize_lossy(errors.len())).sqrt())
}

/// Sample Pearson correlation with `n − 1` denominators throughout.
///
/// `None` if there are fewer than two points or either series has zero variance.
pub fn pearson<T: Real>(xs: &[T], ys: &[T]) -> Option<T> {
    assert_eq!(xs.len(), ys.len(), "pearson: series lengths differ");
    let n = xs.len();
    if n < 2 {
        return None;
    }
    let nf = T::from_usize_lossy(n);
    let mx = compensated_sum(xs.iter().copied()) / nf;
    let my = compensated_sum(ys.iter().copied()) / nf;
    let denom = T::from_usize_lossy(n - 1);
    let sxx = compensated_sum(xs.iter().map(|&x| (x - mx) * (x - mx))) / denom;
    let syy = compensated_sum(ys.iter().map(|&y| (y - my) * (y - my))) / denom;
    let sxy = compensated_sum(xs.iter().zip(ys).map(|(&x, &y)| (x - mx) * (y - my))) / denom;
    let floor = T::lit(VARIANCE_FLOOR);
    let (sx, sy) = (sxx.sqrt(), syy.sqrt());
    if sx <= floor || sy <= floor {
        return None;
    }
    Some((sxy / (sx * sy)).max(-T::one()).min(T::one()))
}

pub fn scatter_csv<T: Real>(records: &[ExperimentRecord<T>]) -> Result<String> {
    if records.is_empty() {
        return Err(Error::EmptyExport);
    }
    let mut out = String::new();
    out.push_str(SCATTER_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.seed,
            r.d,
            float17(r.true_similarity.to_f64_lossy()),
            float17(r.estimate.to_f64_lossy()),
            float17(r.error.to_f64_lossy()),
        );
    }
    Ok(out)
}

pub fn table_csv<T: Real>(summaries: &[SweepSummary<T>]) -> Result<String> {
    if summaries.is_empty() {
        return Err(Error::EmptyExport);
    }
    let mut out = String::new();
    out.push_str(TABLE_HEADER);
    out.push('\n');
    for s in summaries {
        let pearson = s
            .pearson
            .map(|p| float17(p.to_f64_lossy()))
            .unwrap_or_else(|| "undefined".to_string());
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            s.d,
            s.qubits,
            float17(s.rmse.to_f64_lossy()),
            pearson,
            s.sample_count
        );
    }
    Ok(out)
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

pub fn export_scatter<T: Real>(records: &[ExperimentRecord<T>], path: &Path) -> Result<()> {
    write_file(path, &scatter_csv(records)?)
}

pub fn export_table<T: Real>(summaries: &[SweepSummary<T>], path: &Path) -> Result<()> {
    write_file(path, &table_csv(summaries)?)
}
