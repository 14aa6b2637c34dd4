//! Approximate cosine similarity from angle-encoded, elementwise Hadamard tests.
//!
//! Each entry `x ∈ [-1, 1]` of a unit vector is loaded into one data qubit with
//! `Ry(2·arccos x)`. For every index `i` a two-qubit Hadamard test measures
//! `Re⟨0|U_i|0⟩ = v_i w_i + √(1−v_i²)√(1−w_i²)`; all `d` tests are independent and
//! have constant depth. The estimate `Σ_i Re⟨0|U_i|0⟩ − d + 1` is exact only when
//! `|v_i| = |w_i|`; otherwise it undershoots the true similarity by the amount
//! given in closed form by [`oracle::closed_form_bias`].
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`). The `*F64`
//! aliases below are what the CLI and the acceptance suite use.

pub mod cli;
pub mod cottention;
pub mod encoding;
pub mod error;
pub mod estimator;
pub mod experiments;
pub mod format;
pub mod oracle;
pub mod real;
pub mod rng;
pub mod simulator;

pub use encoding::{
    decode_angle, encode_angle, normalize, EncodingAngle, NormalizePolicy, NormalizedVector,
};
pub use error::{Error, Result};
pub use estimator::{
    chunk_plan, elementwise_real_overlap, estimate_similarity, resource_report, ChunkPlan,
    EstimatorConfig, Mode, ResourceReport, SimilarityEstimate,
};
pub use oracle::{
    analytic_overlap, approx_residual, closed_form_bias, cosine_similarity_classical, BiasReport,
};
pub use real::Real;
pub use simulator::{run_hadamard_test_circuit, sample_shots, ShotOutcome, TwoQubitState};

pub type NormalizedVectorF64 = NormalizedVector<f64>;
pub type NormalizedVectorF32 = NormalizedVector<f32>;
pub type EncodingAngleF64 = EncodingAngle<f64>;
pub type TwoQubitStateF64 = TwoQubitState<f64>;
pub type TwoQubitStateF32 = TwoQubitState<f32>;
pub type SimilarityEstimateF64 = SimilarityEstimate<f64>;
pub type SimilarityEstimateF32 = SimilarityEstimate<f32>;
pub type BiasReportF64 = BiasReport<f64>;
pub type ExperimentRecordF64 = experiments::ExperimentRecord<f64>;
pub type SweepSummaryF64 = experiments::SweepSummary<f64>;
pub type SimilarityMatrixReportF64 = cottention::SimilarityMatrixReport<f64>;
