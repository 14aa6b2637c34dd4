//! Scalar abstraction shared by every numerical routine in the crate.

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use std::fmt::{Debug, Display, LowerExp};

/// Floating point type the estimator is generic over.
///
/// Implemented for `f32` and `f64`. The associated tolerances scale with the
/// precision of the type: the `f64` values are the ones the acceptance checks
/// are stated in, the `f32` values are loosened in proportion to machine epsilon.
pub trait Real:
    'static
    + Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
{
    /// Allowed deviation of Σ x_i² from 1 for a normalized vector.
    const NORM_TOLERANCE: Self;
    /// Window around ±1 (and around p ∈ {0, 1}) that is clamped instead of rejected.
    const BOUNDARY_WINDOW: Self;

    /// Converts an `f64` literal. Every literal used in the crate is representable.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `sqrt(max(0, 1 - x²))`, the non-negative |1⟩ amplitude of an encoded value.
    #[inline]
    fn complement_amplitude(self) -> Self {
        let one_minus = Self::one() - self * self;
        one_minus.max(Self::zero()).sqrt()
    }
}

impl Real for f64 {
    const NORM_TOLERANCE: f64 = 1e-9;
    const BOUNDARY_WINDOW: f64 = 1e-12;
}

impl Real for f32 {
    const NORM_TOLERANCE: f32 = 1e-5;
    const BOUNDARY_WINDOW: f32 = 1e-6;
}

/// Compensated (Kahan) summation in iteration order.
pub fn compensated_sum<T: Real, I: IntoIterator<Item = T>>(values: I) -> T {
    let mut sum = T::zero();
    let mut carry = T::zero();
    for v in values {
        let y = v - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum
}
