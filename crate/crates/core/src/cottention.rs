//! Cosine-similarity attention scores computed with the angle-encoded estimator,
//! side by side with the exact classical scores. Forward pass only; the report
//! stops at the score matrices.

use crate::encoding::{normalize, NormalizePolicy, NormalizedVector};
use crate::error::{Error, Result};
use crate::estimator::{chunk_plan, estimate_similarity, EstimatorConfig};
use crate::experiments::write_file;
use crate::format::{float17, to_json_string};
use crate::oracle::cosine_similarity_classical;
use crate::real::Real;
use crate::rng::{mix_seed, Stream};
use rayon::prelude::*;
use serde_json::json;
use std::fmt::Write as _;
use std::path::Path;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                left: cols,
                right: bad.len(),
            });
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    /// Rows as CSV, no header, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = self
                .row(i)
                .iter()
                .map(|x| float17(x.to_f64_lossy()))
                .collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }
}

/// Query and key rows; they need not be normalized but must be non-zero.
#[derive(Debug, Clone, PartialEq)]
pub struct AttentionInput<T> {
    pub queries: Vec<Vec<T>>,
    pub keys: Vec<Vec<T>>,
}

impl<T: Real> AttentionInput<T> {
    /// `seq_len` query rows then `seq_len` key rows, entries uniform on `[-1, 1)`.
    pub fn random(d_model: usize, seq_len: usize, seed: u64) -> Result<Self> {
        if d_model == 0 || seq_len == 0 {
            return Err(Error::Config(
                "d_model and sequence length must be positive".into(),
            ));
        }
        let mut stream = Stream::new(seed);
        let mut draw = || -> Vec<Vec<T>> {
            (0..seq_len)
                .map(|_| {
                    (0..d_model)
                        .map(|_| T::lit(stream.next_symmetric()))
                        .collect()
                })
                .collect()
        };
        let queries = draw();
        let keys = draw();
        Ok(AttentionInput { queries, keys })
    }

    pub fn d_model(&self) -> usize {
        self.queries
            .first()
            .or_else(|| self.keys.first())
            .map_or(0, Vec::len)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffSummary<T> {
    pub max_abs_diff: T,
    pub frobenius_diff: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrixReport<T> {
    pub quantum: Matrix<T>,
    pub classical: Matrix<T>,
    pub max_abs_diff: T,
    pub frobenius_diff: T,
    pub chunk_runs_per_pair: usize,
}

impl<T: Real> SimilarityMatrixReport<T> {
    /// `{chunk_runs_per_pair, frobenius_diff, max_abs_diff}` with sorted keys.
    pub fn diff_json(&self) -> String {
        to_json_string(&json!({
            "max_abs_diff": self.max_abs_diff.to_f64_lossy(),
            "frobenius_diff": self.frobenius_diff.to_f64_lossy(),
            "chunk_runs_per_pair": self.chunk_runs_per_pair,
        }))
    }

    /// Writes `quantum.csv`, `classical.csv` and `diff.json` into `dir`.
    pub fn export(&self, dir: &Path) -> Result<()> {
        write_file(&dir.join("quantum.csv"), &self.quantum.to_csv())?;
        write_file(&dir.join("classical.csv"), &self.classical.to_csv())?;
        let mut diff = self.diff_json();
        diff.push('\n');
        write_file(&dir.join("diff.json"), &diff)
    }
}

fn normalize_rows<T: Real>(
    rows: &[Vec<T>],
    name: &'static str,
    d_model: usize,
) -> Result<Vec<NormalizedVector<T>>> {
    rows.iter()
        .enumerate()
        .map(|(row, r)| {
            if r.len() != d_model {
                return Err(Error::DimensionMismatch {
                    left: d_model,
                    right: r.len(),
                });
            }
            normalize(r, NormalizePolicy::Auto).map_err(|e| match e {
                Error::DegenerateVector => Error::ZeroRow { matrix: name, row },
                other => other,
            })
        })
        .collect()
}

pub fn similarity_matrix<T: Real>(
    input: &AttentionInput<T>,
    config: &EstimatorConfig,
) -> Result<SimilarityMatrixReport<T>> {
    config.validate()?;
    let d_model = input.d_model();
    let queries = normalize_rows(&input.queries, "queries", d_model)?;
    let keys = normalize_rows(&input.keys, "keys", d_model)?;
    let chunk_runs_per_pair = chunk_plan(d_model, config.qubit_budget)?.len();
    let n_keys = keys.len();

    let rows = queries
        .par_iter()
        .enumerate()
        .map(|(i, q)| {
            keys.iter()
                .enumerate()
                .map(|(j, k)| {
                    let cfg = EstimatorConfig {
                        root_seed: mix_seed(config.root_seed, (i * n_keys + j) as u64),
                        ..*config
                    };
                    let quantum = estimate_similarity(q, k, &cfg)?.value;
                    let classical = cosine_similarity_classical(q, k)?;
                    Ok((quantum, classical))
                })
                .collect::<Result<Vec<(T, T)>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let quantum = Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|p| p.0).collect())
            .collect(),
    )?;
    let classical = Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|p| p.1).collect())
            .collect(),
    )?;
    let diff = compare_matrices(&quantum, &classical)?;
    Ok(SimilarityMatrixReport {
        quantum,
        classical,
        max_abs_diff: diff.max_abs_diff,
        frobenius_diff: diff.frobenius_diff,
        chunk_runs_per_pair,
    })
}

pub fn compare_matrices<T: Real>(
    quantum: &Matrix<T>,
    classical: &Matrix<T>,
) -> Result<DiffSummary<T>> {
    if quantum.shape() != classical.shape() {
        return Err(Error::DimensionMismatch {
            left: quantum.data.len(),
            right: classical.data.len(),
        });
    }
    let diffs = quantum
        .data
        .iter()
        .zip(&classical.data)
        .map(|(&q, &c)| q - c);
    let max_abs_diff = diffs.clone().fold(T::zero(), |m, d| m.max(d.abs()));
    let frobenius_diff = crate::real::compensated_sum(diffs.map(|d| d * d)).sqrt();
    Ok(DiffSummary {
        max_abs_diff,
        frobenius_diff,
    })
}
