//! Dense two-qubit state-vector simulation of one elementwise Hadamard test.
//!
//! Register layout is `|ancilla, target⟩`, amplitude index `2·ancilla + target`.
//! The per-element circuit is
//!
//! ```text
//! ancilla |0⟩ ─ H ───●──────────●───────── H ─ measure
//!                    │          │
//! target  |0⟩ ── Ry(+θ_w) ── Ry(−θ_v) ────────
//! ```
//!
//! i.e. the controlled `U = Ry(θ_v)† · Ry(θ_w)` applied rightmost factor first.
//! The ancilla reads 0 with probability `(1 + Re⟨0|U|0⟩) / 2`.

use crate::encoding::EncodingAngle;
use crate::error::{Error, Result};
use crate::format::float17;
use crate::real::Real;
use crate::rng::Stream;
use num_complex::Complex;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qubit {
    Ancilla,
    Target,
}

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Qubit::Ancilla => f.write_str("ancilla"),
            Qubit::Target => f.write_str("target"),
        }
    }
}

/// Direction of a controlled rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn apply<T: Real>(self, theta: T) -> T {
        match self {
            Sign::Plus => theta,
            Sign::Minus => -theta,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Four complex amplitudes of the (ancilla, target) register.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitState<T> {
    amplitudes: [Complex<T>; 4],
}

impl<T: Real> Default for TwoQubitState<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Real> TwoQubitState<T> {
    /// The `|00⟩` state.
    pub fn zero() -> Self {
        let z = Complex::new(T::zero(), T::zero());
        TwoQubitState {
            amplitudes: [Complex::new(T::one(), T::zero()), z, z, z],
        }
    }

    pub fn from_amplitudes(amplitudes: [Complex<T>; 4]) -> Self {
        TwoQubitState { amplitudes }
    }

    pub fn amplitudes(&self) -> &[Complex<T>; 4] {
        &self.amplitudes
    }

    pub fn norm_sq(&self) -> T {
        self.amplitudes
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
    }

    /// Probability that measuring the ancilla yields 0.
    pub fn ancilla_zero_probability(&self) -> T {
        self.amplitudes[0].norm_sqr() + self.amplitudes[1].norm_sqr()
    }

    pub fn apply_hadamard(mut self, qubit: Qubit) -> Self {
        let r = T::FRAC_1_SQRT_2();
        let pairs = match qubit {
            Qubit::Ancilla => [(0, 2), (1, 3)],
            Qubit::Target => [(0, 1), (2, 3)],
        };
        for (i, j) in pairs {
            let (a, b) = (self.amplitudes[i], self.amplitudes[j]);
            self.amplitudes[i] = (a + b) * r;
            self.amplitudes[j] = (a - b) * r;
        }
        self
    }

    /// Ry(±θ) on the target, conditioned on the ancilla being |1⟩.
    pub fn apply_controlled_ry(mut self, theta: T, sign: Sign) -> Self {
        let half = sign.apply(theta) / T::lit(2.0);
        let (s, c) = half.sin_cos();
        let (a, b) = (self.amplitudes[2], self.amplitudes[3]);
        self.amplitudes[2] = a * c - b * s;
        self.amplitudes[3] = a * s + b * c;
        self
    }

    pub fn apply(self, gate: &Gate<T>) -> Self {
        match *gate {
            Gate::H(q) => self.apply_hadamard(q),
            Gate::ControlledRy { theta, sign } => self.apply_controlled_ry(theta, sign),
        }
    }
}

/// Gates appearing in the per-element circuit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate<T> {
    H(Qubit),
    /// Control is always the ancilla; the rotation acts on the target.
    ControlledRy {
        theta: T,
        sign: Sign,
    },
}

impl<T: Real> Gate<T> {
    pub fn inverse(self) -> Self {
        match self {
            Gate::H(q) => Gate::H(q),
            Gate::ControlledRy { theta, sign } => Gate::ControlledRy {
                theta,
                sign: sign.flip(),
            },
        }
    }

    /// One trace line: `GATE qubit angle`.
    pub fn trace_line(&self) -> String {
        match *self {
            Gate::H(q) => format!("H {q} {}", float17(0.0)),
            Gate::ControlledRy { theta, sign } => format!(
                "CRY {} {}",
                Qubit::Target,
                float17(sign.apply(theta).to_f64_lossy())
            ),
        }
    }
}

/// Gate list of the Hadamard test for `U = Ry(θ_v)† Ry(θ_w)`, in application order.
pub fn hadamard_test_circuit<T: Real>(
    theta_v: EncodingAngle<T>,
    theta_w: EncodingAngle<T>,
) -> [Gate<T>; 4] {
    [
        Gate::H(Qubit::Ancilla),
        Gate::ControlledRy {
            theta: theta_w.theta(),
            sign: Sign::Plus,
        },
        Gate::ControlledRy {
            theta: theta_v.theta(),
            sign: Sign::Minus,
        },
        Gate::H(Qubit::Ancilla),
    ]
}

pub fn run_gates<T: Real>(state: TwoQubitState<T>, gates: &[Gate<T>]) -> TwoQubitState<T> {
    gates.iter().fold(state, |s, g| s.apply(g))
}

/// Text trace of the circuit, one gate per line.
pub fn circuit_trace<T: Real>(theta_v: EncodingAngle<T>, theta_w: EncodingAngle<T>) -> String {
    let mut out = String::new();
    for g in hadamard_test_circuit(theta_v, theta_w) {
        out.push_str(&g.trace_line());
        out.push('\n');
    }
    out
}

/// Runs the circuit from `|00⟩` and returns the ancilla-0 probability.
pub fn run_hadamard_test_circuit<T: Real>(
    theta_v: EncodingAngle<T>,
    theta_w: EncodingAngle<T>,
) -> T {
    run_gates(
        TwoQubitState::zero(),
        &hadamard_test_circuit(theta_v, theta_w),
    )
    .ancilla_zero_probability()
}

/// Ancilla readout counts from a finite number of shots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShotOutcome {
    pub zeros: u64,
    pub shots: u64,
}

impl ShotOutcome {
    pub fn zero_fraction(&self) -> f64 {
        self.zeros as f64 / self.shots as f64
    }
}

/// Draws `shots` Bernoulli(`p0`) trials from the stream seeded with `stream_seed`.
pub fn sample_shots<T: Real>(p0: T, shots: u64, stream_seed: u64) -> Result<ShotOutcome> {
    let p = p0.to_f64_lossy();
    let w = T::BOUNDARY_WINDOW.to_f64_lossy();
    if !p.is_finite() || p < -w || p > 1.0 + w {
        return Err(Error::Probability { p });
    }
    if shots == 0 {
        return Err(Error::Config("shot count must be at least 1".into()));
    }
    let p = p.clamp(0.0, 1.0);
    let mut stream = Stream::new(stream_seed);
    let zeros = (0..shots).filter(|_| stream.next_unit() < p).count() as u64;
    Ok(ShotOutcome { zeros, shots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::encode_angle;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn re(state: &TwoQubitState<f64>) -> [f64; 4] {
        state.amplitudes().map(|a| {
            assert!(a.im.abs() < 1e-15);
            a.re
        })
    }

    fn close(a: [f64; 4], b: [f64; 4], tol: f64) {
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn hadamard_examples() {
        let s = TwoQubitState::<f64>::zero().apply_hadamard(Qubit::Ancilla);
        close(re(&s), [FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2, 0.0], 1e-15);
        let s = s.apply_hadamard(Qubit::Ancilla);
        close(re(&s), [1.0, 0.0, 0.0, 0.0], 1e-15);
        let s = TwoQubitState::<f64>::zero().apply_hadamard(Qubit::Target);
        close(re(&s), [FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, 0.0], 1e-15);
    }

    #[test]
    fn controlled_ry_examples() {
        let plus = TwoQubitState::<f64>::zero().apply_hadamard(Qubit::Ancilla);
        let s = plus.apply_controlled_ry(PI, Sign::Plus);
        close(re(&s), [FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2], 1e-15);

        let s = TwoQubitState::<f64>::zero().apply_controlled_ry(1.234, Sign::Plus);
        assert_eq!(s, TwoQubitState::zero());

        let s = plus
            .apply_hadamard(Qubit::Target)
            .apply_controlled_ry(0.7, Sign::Plus);
        let back = s.apply_controlled_ry(0.7, Sign::Minus);
        close(re(&back), re(&plus.apply_hadamard(Qubit::Target)), 1e-15);
    }

    #[test]
    fn circuit_examples() {
        let e = |x: f64| encode_angle(x).unwrap();
        for x in [-1.0, -0.3, 0.0, 0.77, 1.0] {
            assert!((run_hadamard_test_circuit(e(x), e(x)) - 1.0).abs() < 1e-15);
        }
        assert!((run_hadamard_test_circuit(e(1.0), e(0.0)) - 0.5).abs() < 1e-15);
        assert!((run_hadamard_test_circuit(e(0.6), e(0.8)) - 0.98).abs() < 1e-15);
    }

    #[test]
    fn circuit_then_inverse_is_identity() {
        let gates =
            hadamard_test_circuit(encode_angle(0.3f64).unwrap(), encode_angle(-0.9).unwrap());
        let mut all: Vec<Gate<f64>> = gates.to_vec();
        all.extend(gates.iter().rev().map(|g| g.inverse()));
        let s = run_gates(TwoQubitState::zero(), &all);
        close(re(&s), [1.0, 0.0, 0.0, 0.0], 1e-12);
    }

    #[test]
    fn norm_preserved_gate_by_gate() {
        let mut s = TwoQubitState::<f64>::zero();
        for g in hadamard_test_circuit(encode_angle(0.12).unwrap(), encode_angle(-0.5).unwrap()) {
            s = s.apply(&g);
            assert!((s.norm_sq() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn trace_lists_gates_in_order() {
        let t = circuit_trace(encode_angle(1.0f64).unwrap(), encode_angle(0.0).unwrap());
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "H ancilla 0.0000000000000000e0");
        assert_eq!(lines[1], format!("CRY target {}", float17(PI)));
        assert_eq!(lines[2], "CRY target -0.0000000000000000e0");
        assert_eq!(lines[3], "H ancilla 0.0000000000000000e0");
    }

    #[test]
    fn shot_examples() {
        assert_eq!(sample_shots(1.0f64, 100, 3).unwrap().zeros, 100);
        assert_eq!(sample_shots(0.0f64, 100, 3).unwrap().zeros, 0);
        let o = sample_shots(0.5f64, 1_000_000, 11).unwrap();
        assert!((0.498..=0.502).contains(&o.zero_fraction()));
        assert_eq!(
            sample_shots(0.3f64, 500, 9).unwrap(),
            sample_shots(0.3f64, 500, 9).unwrap()
        );
    }

    #[test]
    fn shot_input_validation() {
        assert!(matches!(
            sample_shots(1.1f64, 10, 0),
            Err(Error::Probability { .. })
        ));
        assert!(sample_shots(1.0f64 + 1e-13, 10, 0).is_ok());
        assert!(matches!(sample_shots(0.5f64, 0, 0), Err(Error::Config(_))));
    }

    #[test]
    fn single_precision_circuit() {
        let p =
            run_hadamard_test_circuit(encode_angle(0.6f32).unwrap(), encode_angle(0.8f32).unwrap());
        assert!((p - 0.98).abs() < 1e-6);
    }
}
