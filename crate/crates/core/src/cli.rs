//! Command-line front end. All machine-readable output is deterministic:
//! JSON objects have sorted keys and every float is printed with 17
//! significant digits.

use crate::cottention::{similarity_matrix, AttentionInput};
use crate::encoding::{encode_angle, normalize, NormalizePolicy};
use crate::error::Error;
use crate::estimator::{estimate_similarity, resource_report, EstimatorConfig, Mode};
use crate::experiments::{export_scatter, export_table, run_sweep, table_csv, SweepOptions};
use crate::format::to_json_string;
use crate::oracle::cosine_similarity_classical;
use crate::simulator::circuit_trace;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::io::Write;
use std::path::{Path, PathBuf};
use thiserror::Error as ThisError;

#[derive(Debug, Parser)]
#[command(
    name = "angle-hadamard",
    version,
    about = "Cosine similarity from angle-encoded elementwise Hadamard tests"
)]
pub struct Cli {
    /// Read probabilities from the state vector (default).
    #[arg(long, global = true, conflicts_with = "shots")]
    pub exact: bool,

    /// Estimate each readout from N measurement shots.
    #[arg(long, global = true, value_name = "N")]
    pub shots: Option<u64>,

    /// Qubits per run (even, >= 2).
    #[arg(long, global = true, value_name = "B", default_value_t = 8)]
    pub budget: usize,

    /// Root seed for pair generation and shot sampling.
    #[arg(long, global = true, value_name = "S", default_value_t = 0)]
    pub seed: u64,

    /// Output file (estimate, sweep, resources) or directory (cottention).
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PolicyArg {
    Auto,
    Reject,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate the similarity of two vectors.
    Estimate {
        /// Comma-separated values, or a file with one value per line.
        v: String,
        /// Comma-separated values, or a file with one value per line.
        w: String,
        #[arg(long, value_enum, default_value = "auto")]
        normalize: PolicyArg,
        /// Write the gate trace of every element circuit to this file.
        #[arg(long, value_name = "PATH")]
        trace: Option<PathBuf>,
    },
    /// RMSE and Pearson correlation over random unit-vector pairs.
    Sweep {
        #[arg(long, value_delimiter = ',', default_value = "2,4,8,12")]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Directory for per-dimension scatter CSVs.
        #[arg(long, value_name = "DIR", default_value = "scatter")]
        scatter_dir: PathBuf,
        /// Diagnostic: compare every vector with itself.
        #[arg(long)]
        identical: bool,
    },
    /// Quantum vs classical cosine-attention score matrices.
    Cottention {
        #[arg(long, default_value_t = 16)]
        dmodel: usize,
        #[arg(long, default_value_t = 8)]
        seq: usize,
        /// CSV of query rows; replaces the random queries.
        #[arg(long, value_name = "FILE", requires = "keys")]
        queries: Option<PathBuf>,
        /// CSV of key rows; replaces the random keys.
        #[arg(long, value_name = "FILE", requires = "queries")]
        keys: Option<PathBuf>,
    },
    /// Qubit count, depth class and circuit count for dimension d.
    Resources {
        #[arg(long)]
        dim: usize,
    },
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{origin}: line {line}, column {column}: invalid number {token:?}")]
    Parse {
        origin: String,
        line: usize,
        column: usize,
        token: String,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    /// 2 for usage and validation failures, 1 for runtime failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::Core(e) if e.is_validation() => 2,
            CliError::Core(_) | CliError::Output(_) => 1,
        }
    }
}

impl Cli {
    pub fn estimator_config(&self) -> EstimatorConfig {
        let mode = match self.shots {
            Some(n) if !self.exact => Mode::Shots(n),
            _ => Mode::Exact,
        };
        EstimatorConfig {
            mode,
            qubit_budget: self.budget,
            root_seed: self.seed,
        }
    }
}

fn parse_number(token: &str, origin: &str, line: usize, column: usize) -> Result<f64, CliError> {
    token.parse::<f64>().map_err(|_| CliError::Parse {
        origin: origin.to_string(),
        line,
        column,
        token: token.to_string(),
    })
}

/// Parses comma-separated values; columns are 1-based character offsets.
pub fn parse_inline(text: &str) -> Result<Vec<f64>, CliError> {
    let mut values = Vec::new();
    let mut offset = 0;
    for field in text.split(',') {
        let lead = field.len() - field.trim_start().len();
        let column = text[..offset + lead].chars().count() + 1;
        values.push(parse_number(field.trim(), "inline vector", 1, column)?);
        offset += field.len() + 1;
    }
    Ok(values)
}

/// One value per line; blank lines are skipped.
pub fn parse_lines(text: &str, origin: &str) -> Result<Vec<f64>, CliError> {
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let column = raw[..raw.len() - raw.trim_start().len()].chars().count() + 1;
        values.push(parse_number(trimmed, origin, i + 1, column)?);
    }
    Ok(values)
}

/// Rows of comma-separated values, one row per non-blank line.
pub fn parse_rows(text: &str, origin: &str) -> Result<Vec<Vec<f64>>, CliError> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        if raw.trim().is_empty() {
            continue;
        }
        let row = parse_inline(raw).map_err(|e| match e {
            CliError::Parse { column, token, .. } => CliError::Parse {
                origin: origin.to_string(),
                line: i + 1,
                column,
                token,
            },
            other => other,
        })?;
        rows.push(row);
    }
    Ok(rows)
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Core(Error::io(path, e)))
}

/// A vector argument is a file path if such a file exists, otherwise an inline list.
pub fn parse_vector_arg(arg: &str) -> Result<Vec<f64>, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        parse_lines(&read_text(path)?, arg)
    } else {
        parse_inline(arg)
    }
}

fn write_output(path: &Path, contents: &str) -> Result<(), CliError> {
    crate::experiments::write_file(path, contents).map_err(CliError::from)
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let config = cli.estimator_config();
    config.validate()?;
    match &cli.command {
        Command::Estimate {
            v,
            w,
            normalize: policy,
            trace,
        } => {
            let policy = match policy {
                PolicyArg::Auto => NormalizePolicy::Auto,
                PolicyArg::Reject => NormalizePolicy::Reject,
            };
            let v = normalize(&parse_vector_arg(v)?, policy)?;
            let w = normalize(&parse_vector_arg(w)?, policy)?;
            let est = estimate_similarity(&v, &w, &config)?;
            let truth = cosine_similarity_classical(&v, &w)?;
            let (mode, shots) = match config.mode {
                Mode::Exact => ("exact", None),
                Mode::Shots(n) => ("shots", Some(n)),
            };
            let mut body = to_json_string(&json!({
                "estimate": est.value,
                "true_similarity": truth,
                "bias_closed_form": est.bias_closed_form,
                "overlaps": est.overlaps,
                "mode": mode,
                "shots": shots,
                "qubit_budget": config.qubit_budget,
                "chunk_count": est.chunk_count,
            }));
            body.push('\n');
            if let Some(path) = trace {
                let mut text = String::new();
                for (i, (a, b)) in v.iter().zip(w.iter()).enumerate() {
                    text.push_str(&format!("# element {i}\n"));
                    text.push_str(&circuit_trace(encode_angle(a)?, encode_angle(b)?));
                }
                write_output(path, &text)?;
            }
            if let Some(path) = &cli.out {
                write_output(path, &body)?;
            }
            stdout.write_all(body.as_bytes())?;
        }
        Command::Sweep {
            dims,
            samples,
            scatter_dir,
            identical,
        } => {
            let options = SweepOptions {
                dims: dims.clone(),
                samples: *samples,
                base_seed: cli.seed,
                force_identical: *identical,
            };
            let result = run_sweep::<f64>(&options, &config)?;
            let table_path = cli
                .out
                .clone()
                .unwrap_or_else(|| PathBuf::from("table.csv"));
            export_table(&result.summaries, &table_path)?;
            for (summary, records) in result.summaries.iter().zip(&result.records) {
                let path = scatter_dir.join(format!("scatter_d{}.csv", summary.d));
                export_scatter(records, &path)?;
            }
            stdout.write_all(table_csv(&result.summaries)?.as_bytes())?;
        }
        Command::Cottention {
            dmodel,
            seq,
            queries,
            keys,
        } => {
            let input = match (queries, keys) {
                (Some(q), Some(k)) => AttentionInput {
                    queries: parse_rows(&read_text(q)?, &q.display().to_string())?,
                    keys: parse_rows(&read_text(k)?, &k.display().to_string())?,
                },
                _ => AttentionInput::random(*dmodel, *seq, cli.seed)?,
            };
            let report = similarity_matrix(&input, &config)?;
            let dir = cli
                .out
                .clone()
                .unwrap_or_else(|| PathBuf::from("cottention_out"));
            report.export(&dir)?;
            writeln!(stdout, "{}", report.diff_json())?;
        }
        Command::Resources { dim } => {
            let report = resource_report(*dim)?;
            let value = serde_json::to_value(report).expect("plain struct serializes");
            let mut body = to_json_string(&value);
            body.push('\n');
            if let Some(path) = &cli.out {
                write_output(path, &body)?;
            }
            stdout.write_all(body.as_bytes())?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_parse_reports_column() {
        assert_eq!(parse_inline("1, -0.5,3e-1").unwrap(), vec![1.0, -0.5, 0.3]);
        match parse_inline("1,2,x3").unwrap_err() {
            CliError::Parse {
                line,
                column,
                token,
                ..
            } => {
                assert_eq!((line, column), (1, 5));
                assert_eq!(token, "x3");
            }
            e => panic!("{e}"),
        }
        assert!(parse_inline("1,,2").is_err());
    }

    #[test]
    fn line_parse_reports_line() {
        assert_eq!(parse_lines("0.6\n\n0.8\n", "f").unwrap(), vec![0.6, 0.8]);
        match parse_lines("0.6\n  oops\n", "f").unwrap_err() {
            CliError::Parse { line, column, .. } => assert_eq!((line, column), (2, 3)),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn rows_parse() {
        let rows = parse_rows("1,0\n0,1\n", "q").unwrap();
        assert_eq!(rows, vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        match parse_rows("1,0\n0,z\n", "q").unwrap_err() {
            CliError::Parse { line, column, .. } => assert_eq!((line, column), (2, 3)),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn exact_and_shots_conflict() {
        let r = Cli::try_parse_from(["x", "--exact", "--shots", "10", "resources", "--dim", "2"]);
        assert!(r.is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(CliError::Core(Error::DegenerateVector).exit_code(), 2);
        let io = Error::io("p", std::io::Error::other("boom"));
        assert_eq!(CliError::Core(io).exit_code(), 1);
    }

    #[test]
    fn estimate_json() {
        let cli = Cli::try_parse_from(["x", "--exact", "estimate", "1,0", "0,1"]).unwrap();
        let mut out = Vec::new();
        run(&cli, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!((v["estimate"].as_f64().unwrap() + 1.0).abs() < 1e-15);
        assert_eq!(v["true_similarity"].as_f64().unwrap(), 0.0);
        assert_eq!(v["bias_closed_form"].as_f64().unwrap(), -1.0);
        assert_eq!(v["mode"], "exact");
        assert!(v["shots"].is_null());
        assert_eq!(v["chunk_count"], 1);
        assert!(text.starts_with(r#"{"bias_closed_form":"#));
    }
}
