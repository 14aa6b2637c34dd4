//! Validated input vectors and the angle encoding `x ↦ 2·arccos(x)`.

use crate::error::{Error, Result};
use crate::real::Real;

/// How [`normalize`] treats an input whose norm is not already 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormalizePolicy {
    /// Divide by the L2 norm.
    #[default]
    Auto,
    /// Refuse anything whose squared norm is off by more than the tolerance.
    Reject,
}

/// A real vector of unit L2 norm with every entry in `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedVector<T> {
    entries: Vec<T>,
}

impl<T: Real> NormalizedVector<T> {
    /// Accepts `entries` only if they already have unit norm.
    pub fn from_unit(entries: Vec<T>) -> Result<Self> {
        normalize(&entries, NormalizePolicy::Reject)
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = T> + '_ {
        self.entries.iter().copied()
    }

    pub fn into_inner(self) -> Vec<T> {
        self.entries
    }

    /// Squared L2 norm, summed with compensation.
    pub fn norm_sq(&self) -> T {
        squared_norm(&self.entries)
    }
}

impl<T> AsRef<[T]> for NormalizedVector<T> {
    fn as_ref(&self) -> &[T] {
        &self.entries
    }
}

fn squared_norm<T: Real>(xs: &[T]) -> T {
    crate::real::compensated_sum(xs.iter().map(|&x| x * x))
}

/// Produces a unit-norm vector from `raw`.
///
/// Inputs already within the norm tolerance are passed through (clamped to
/// `[-1, 1]`) without rescaling, which makes the operation idempotent.
pub fn normalize<T: Real>(raw: &[T], policy: NormalizePolicy) -> Result<NormalizedVector<T>> {
    if raw.is_empty() {
        return Err(Error::EmptyVector);
    }
    if let Some(index) = raw.iter().position(|x| !x.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    let norm_sq = squared_norm(raw);
    if norm_sq == T::zero() {
        return Err(Error::DegenerateVector);
    }
    let clamp = |x: T| x.max(-T::one()).min(T::one());

    if (norm_sq - T::one()).abs() <= T::NORM_TOLERANCE {
        return Ok(NormalizedVector {
            entries: raw.iter().copied().map(clamp).collect(),
        });
    }
    match policy {
        NormalizePolicy::Reject => Err(Error::NotNormalized {
            norm_sq: norm_sq.to_f64_lossy(),
        }),
        NormalizePolicy::Auto => {
            let norm = norm_sq.sqrt();
            if !norm.is_finite() {
                // Overflowed: rescale by the largest magnitude first.
                let scale = raw.iter().fold(T::zero(), |m, x| m.max(x.abs()));
                let scaled: Vec<T> = raw.iter().map(|&x| x / scale).collect();
                return normalize(&scaled, policy);
            }
            let entries: Vec<T> = raw.iter().map(|&x| clamp(x / norm)).collect();
            Ok(NormalizedVector { entries })
        }
    }
}

/// Rotation angle in `[0, 2π]` carrying one encoded real value.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EncodingAngle<T>(T);

impl<T: Real> EncodingAngle<T> {
    /// Wraps a raw angle, clamping values within the boundary window of `[0, 2π]`.
    pub fn new(theta: T) -> Result<Self> {
        let two_pi = T::TAU();
        let w = T::BOUNDARY_WINDOW;
        if !theta.is_finite() || theta < -w || theta > two_pi + w {
            return Err(Error::AngleRange {
                theta: theta.to_f64_lossy(),
            });
        }
        Ok(EncodingAngle(theta.max(T::zero()).min(two_pi)))
    }

    pub fn theta(self) -> T {
        self.0
    }
}

/// `θ = 2·arccos(x)` on the principal branch, so `Ry(θ)|0⟩ = x|0⟩ + √(1−x²)|1⟩`.
pub fn encode_angle<T: Real>(x: T) -> Result<EncodingAngle<T>> {
    let w = T::BOUNDARY_WINDOW;
    if !x.is_finite() || x < -T::one() - w || x > T::one() + w {
        return Err(Error::Domain {
            value: x.to_f64_lossy(),
        });
    }
    let x = x.max(-T::one()).min(T::one());
    Ok(EncodingAngle(T::lit(2.0) * x.acos()))
}

/// Inverse of [`encode_angle`]: `cos(θ/2)`.
pub fn decode_angle<T: Real>(angle: EncodingAngle<T>) -> T {
    (angle.theta() / T::lit(2.0)).cos()
}
