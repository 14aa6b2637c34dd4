//! Elementwise Hadamard tests plus classical post-processing.
//!
//! Each element pair `(v_i, w_i)` runs on its own two-qubit register and yields
//! `Re⟨0|U_i|0⟩ = v_i·w_i + √(1−v_i²)·√(1−w_i²)`. For unit vectors the
//! estimate is `Σ_i Re⟨0|U_i|0⟩ − d + 1`, which replaces the square-root cross
//! terms by their first-order expansion and is therefore biased; see
//! [`crate::oracle::closed_form_bias`].

use crate::encoding::{encode_angle, NormalizedVector};
use crate::error::{Error, Result};
use crate::oracle::{check_dims, closed_form_bias};
use crate::real::{compensated_sum, Real};
use crate::rng::mix_seed;
use crate::simulator::{run_hadamard_test_circuit, sample_shots};
use serde::Serialize;
use std::ops::Range;

/// Qubits used per element: one ancilla plus one data qubit.
pub const QUBITS_PER_ELEMENT: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Read `p0` straight from the state vector.
    #[default]
    Exact,
    /// Estimate `p0` from this many ancilla measurements.
    Shots(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EstimatorConfig {
    pub mode: Mode,
    /// Qubits available for one run; must be even and at least 2.
    pub qubit_budget: usize,
    pub root_seed: u64,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig {
            mode: Mode::Exact,
            qubit_budget: 8,
            root_seed: 0,
        }
    }
}

impl EstimatorConfig {
    pub fn exact(qubit_budget: usize) -> Self {
        EstimatorConfig {
            qubit_budget,
            ..Default::default()
        }
    }

    pub fn shots(shots: u64, qubit_budget: usize, root_seed: u64) -> Self {
        EstimatorConfig {
            mode: Mode::Shots(shots),
            qubit_budget,
            root_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.qubit_budget < QUBITS_PER_ELEMENT
            || !self.qubit_budget.is_multiple_of(QUBITS_PER_ELEMENT)
        {
            return Err(Error::Config(format!(
                "qubit budget must be an even number >= 2, got {}",
                self.qubit_budget
            )));
        }
        if self.mode == Mode::Shots(0) {
            return Err(Error::Config("shot count must be at least 1".into()));
        }
        Ok(())
    }

    pub fn elements_per_chunk(&self) -> usize {
        self.qubit_budget / QUBITS_PER_ELEMENT
    }
}

/// Grouping of element indices into runs that fit the qubit budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChunkPlan {
    /// Zero-based, contiguous, ascending element ranges.
    pub chunks: Vec<Range<usize>>,
    pub elements_per_chunk: usize,
}

impl ChunkPlan {
    pub fn len(&self) -> usize {
        self.chunks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chunks.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.chunks.iter().map(|r| r.len()).collect()
    }
}

pub fn chunk_plan(d: usize, qubit_budget: usize) -> Result<ChunkPlan> {
    EstimatorConfig::exact(qubit_budget).validate()?;
    if d == 0 {
        return Err(Error::EmptyVector);
    }
    let per = qubit_budget / QUBITS_PER_ELEMENT;
    let chunks = (0..d)
        .step_by(per)
        .map(|start| start..(start + per).min(d))
        .collect();
    Ok(ChunkPlan {
        chunks,
        elements_per_chunk: per,
    })
}

/// Measured (or exactly computed) `Re⟨0|U_i|0⟩` for one element pair.
///
/// In shot mode the sampling stream is `mix_seed(root_seed, element_index)`, so
/// the result does not depend on how elements are grouped or scheduled.
pub fn elementwise_real_overlap<T: Real>(
    v_i: T,
    w_i: T,
    config: &EstimatorConfig,
    element_index: usize,
) -> Result<T> {
    let p0 = run_hadamard_test_circuit(encode_angle(v_i)?, encode_angle(w_i)?);
    match config.mode {
        Mode::Exact => Ok(T::lit(2.0) * p0 - T::one()),
        Mode::Shots(n) => {
            let seed = mix_seed(config.root_seed, element_index as u64);
            let outcome = sample_shots(p0, n, seed)?;
            Ok(T::lit(2.0 * outcome.zero_fraction() - 1.0))
        }
    }
}

/// `Σ overlaps − d + 1`, summed in ascending order with compensation.
pub fn post_process<T: Real>(overlaps: &[T]) -> T {
    compensated_sum(overlaps.iter().copied()) - T::from_usize_lossy(overlaps.len()) + T::one()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityEstimate<T> {
    pub value: T,
    pub overlaps: Vec<T>,
    pub bias_closed_form: T,
    pub config_used: EstimatorConfig,
    pub chunk_count: usize,
}

pub fn estimate_similarity<T: Real>(
    v: &NormalizedVector<T>,
    w: &NormalizedVector<T>,
    config: &EstimatorConfig,
) -> Result<SimilarityEstimate<T>> {
    config.validate()?;
    let d = check_dims(v, w)?;
    let plan = chunk_plan(d, config.qubit_budget)?;
    let (ve, we) = (v.entries(), w.entries());

    let mut overlaps = Vec::with_capacity(d);
    for chunk in &plan.chunks {
        for i in chunk.clone() {
            overlaps.push(elementwise_real_overlap(ve[i], we[i], config, i)?);
        }
    }
    let bias = closed_form_bias(v, w)?.bias;
    Ok(SimilarityEstimate {
        value: post_process(&overlaps),
        overlaps,
        bias_closed_form: bias,
        config_used: *config,
        chunk_count: plan.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DepthClass {
    Constant,
}

/// Resource footprint of the angle-encoded test for one vector pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResourceReport {
    pub qubits: usize,
    pub depth_class: DepthClass,
    pub circuits: usize,
    pub post_processing: &'static str,
}

pub fn resource_report(d: usize) -> Result<ResourceReport> {
    if d == 0 {
        return Err(Error::EmptyVector);
    }
    Ok(ResourceReport {
        qubits: QUBITS_PER_ELEMENT * d,
        depth_class: DepthClass::Constant,
        circuits: d,
        post_processing: "required",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(xs: &[f64]) -> NormalizedVector<f64> {
        NormalizedVector::from_unit(xs.to_vec()).unwrap()
    }

    #[test]
    fn overlap_examples() {
        let c = EstimatorConfig::default();
        assert!((elementwise_real_overlap(1.0f64, 1.0, &c, 0).unwrap() - 1.0).abs() < 1e-15);
        assert!(elementwise_real_overlap(1.0f64, 0.0, &c, 0).unwrap().abs() < 1e-15);
        assert!((elementwise_real_overlap(0.6f64, 0.8, &c, 0).unwrap() - 0.96).abs() < 1e-15);
        assert!(elementwise_real_overlap(1.1, 0.0, &c, 0).is_err());
    }

    #[test]
    fn chunk_examples() {
        assert_eq!(chunk_plan(16, 8).unwrap().sizes(), vec![4, 4, 4, 4]);
        assert_eq!(chunk_plan(2, 4).unwrap().sizes(), vec![2]);
        let p = chunk_plan(5, 4).unwrap();
        assert_eq!(p.sizes(), vec![2, 2, 1]);
        assert_eq!(p.chunks, vec![0..2, 2..4, 4..5]);
    }

    #[test]
    fn bad_budgets_rejected() {
        for b in [0, 1, 3, 7] {
            assert!(matches!(chunk_plan(4, b), Err(Error::Config(_))), "{b}");
        }
        assert!(EstimatorConfig::shots(0, 4, 0).validate().is_err());
    }

    #[test]
    fn estimate_examples() {
        let c = EstimatorConfig::default();
        let v = unit(&[0.6, 0.8]);
        let e = estimate_similarity(&v, &v, &c).unwrap();
        assert!((e.value - 1.0).abs() < 1e-12);
        assert!(e.bias_closed_form.abs() < 1e-15);

        let e = estimate_similarity(&unit(&[1.0, 0.0]), &unit(&[0.0, 1.0]), &c).unwrap();
        assert!((e.value + 1.0).abs() < 1e-12);
        assert_eq!(e.bias_closed_form, -1.0);

        let e = estimate_similarity(&v, &unit(&[0.8, 0.6]), &c).unwrap();
        assert!((e.value - 0.92).abs() < 1e-12);
        assert!((e.bias_closed_form + 0.04).abs() < 1e-15);
        assert_eq!(e.overlaps.len(), 2);
        assert_eq!(e.chunk_count, 1);
    }

    #[test]
    fn single_element_vectors() {
        let c = EstimatorConfig::exact(2);
        let e = estimate_similarity(&unit(&[1.0]), &unit(&[-1.0]), &c).unwrap();
        assert_eq!(e.value, e.overlaps[0]);
        assert!((e.value + 1.0).abs() < 1e-12);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let err = estimate_similarity(
            &unit(&[1.0]),
            &unit(&[1.0, 0.0]),
            &EstimatorConfig::default(),
        );
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn shot_mode_reproducible_and_chunk_independent() {
        let v = unit(&[0.5, 0.5, 0.5, 0.5]);
        let w = unit(&[0.1, 0.7, 0.7, 0.1]);
        let a = estimate_similarity(&v, &w, &EstimatorConfig::shots(1000, 2, 5)).unwrap();
        let b = estimate_similarity(&v, &w, &EstimatorConfig::shots(1000, 8, 5)).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.overlaps, b.overlaps);
        assert_eq!(a.chunk_count, 4);
        assert_eq!(b.chunk_count, 1);
        let c = estimate_similarity(&v, &w, &EstimatorConfig::shots(1000, 8, 6)).unwrap();
        assert_ne!(a.overlaps, c.overlaps);
    }

    #[test]
    fn resources() {
        let r = resource_report(2).unwrap();
        assert_eq!(r.qubits, 4);
        assert_eq!(resource_report(12).unwrap().qubits, 24);
        let r = resource_report(1).unwrap();
        assert_eq!((r.qubits, r.circuits), (2, 1));
        assert_eq!(r.depth_class, DepthClass::Constant);
        assert!(resource_report(0).is_err());
    }
}
