//! Classical closed forms: exact cosine similarity, the per-element overlap,
//! and the exact bias of the angle-encoded estimator.
//!
//! For unit vectors `v`, `w` of dimension `d` the estimator's error is
//!
//! ```text
//! bias = Σ_i √(1−v_i²)·√(1−w_i²) − d + 1
//! ```
//!
//! By Cauchy–Schwarz the sum is at most `√(Σ 1−v_i²)·√(Σ 1−w_i²) = d − 1`, so the
//! bias is never positive. It vanishes exactly when `|v_i| = |w_i|` for all `i`.

use crate::encoding::NormalizedVector;
use crate::error::{Error, Result};
use crate::real::{compensated_sum, Real};

fn check_domain<T: Real>(x: T) -> Result<T> {
    let w = T::BOUNDARY_WINDOW;
    if !x.is_finite() || x < -T::one() - w || x > T::one() + w {
        return Err(Error::Domain {
            value: x.to_f64_lossy(),
        });
    }
    Ok(x.max(-T::one()).min(T::one()))
}

pub(crate) fn check_dims<T>(v: &NormalizedVector<T>, w: &NormalizedVector<T>) -> Result<usize>
where
    T: Real,
{
    if v.dim() != w.dim() {
        return Err(Error::DimensionMismatch {
            left: v.dim(),
            right: w.dim(),
        });
    }
    Ok(v.dim())
}

/// `Σ v_i w_i`, which is the cosine similarity since both norms are 1.
pub fn cosine_similarity_classical<T: Real>(
    v: &NormalizedVector<T>,
    w: &NormalizedVector<T>,
) -> Result<T> {
    check_dims(v, w)?;
    Ok(compensated_sum(v.iter().zip(w.iter()).map(|(a, b)| a * b)))
}

/// `x·y + √(1−x²)·√(1−y²)`, the real part the per-element Hadamard test measures.
pub fn analytic_overlap<T: Real>(x: T, y: T) -> Result<T> {
    let (x, y) = (check_domain(x)?, check_domain(y)?);
    Ok(x * y + x.complement_amplitude() * y.complement_amplitude())
}

/// Per-element error of replacing `√(1−x²)·√(1−y²)` by `1 − (x² + y²)/2`.
pub fn approx_residual<T: Real>(x: T, y: T) -> Result<T> {
    let (x, y) = (check_domain(x)?, check_domain(y)?);
    let exact = x.complement_amplitude() * y.complement_amplitude();
    Ok(exact - (T::one() - (x * x + y * y) / T::lit(2.0)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BiasReport<T> {
    /// Estimate minus true similarity.
    pub bias: T,
    pub per_element_sqrt_products: Vec<T>,
    pub residuals: Vec<T>,
}

pub fn closed_form_bias<T: Real>(
    v: &NormalizedVector<T>,
    w: &NormalizedVector<T>,
) -> Result<BiasReport<T>> {
    let d = check_dims(v, w)?;
    let products: Vec<T> = v
        .iter()
        .zip(w.iter())
        .map(|(a, b)| a.complement_amplitude() * b.complement_amplitude())
        .collect();
    let residuals = v
        .iter()
        .zip(w.iter())
        .map(|(a, b)| approx_residual(a, b))
        .collect::<Result<Vec<T>>>()?;
    let bias = compensated_sum(products.iter().copied()) - T::from_usize_lossy(d) + T::one();
    Ok(BiasReport {
        bias,
        per_element_sqrt_products: products,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(xs: &[f64]) -> NormalizedVector<f64> {
        NormalizedVector::from_unit(xs.to_vec()).unwrap()
    }

    #[test]
    fn cosine_examples() {
        let v = unit(&[0.6, 0.8]);
        assert!((cosine_similarity_classical(&v, &v).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(
            cosine_similarity_classical(&unit(&[1.0, 0.0]), &unit(&[0.0, 1.0])).unwrap(),
            0.0
        );
        let c = cosine_similarity_classical(&v, &unit(&[0.8, 0.6])).unwrap();
        assert!((c - 0.96).abs() < 1e-15);
    }

    #[test]
    fn dimension_mismatch() {
        let err = cosine_similarity_classical(&unit(&[1.0]), &unit(&[1.0, 0.0])).unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionMismatch { left: 1, right: 2 }
        ));
        assert!(closed_form_bias(&unit(&[1.0]), &unit(&[0.0, 1.0])).is_err());
    }

    #[test]
    fn overlap_examples() {
        assert_eq!(analytic_overlap(1.0f64, 1.0).unwrap(), 1.0);
        assert_eq!(analytic_overlap(0.0f64, 0.0).unwrap(), 1.0);
        assert!((analytic_overlap(0.6f64, 0.8).unwrap() - 0.96).abs() < 1e-15);
        assert!(matches!(
            analytic_overlap(1.5f64, 0.0),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn bias_examples() {
        let v = unit(&[0.6, 0.8]);
        assert!(closed_form_bias(&v, &v).unwrap().bias.abs() < 1e-15);
        let b = closed_form_bias(&unit(&[1.0, 0.0]), &unit(&[0.0, 1.0])).unwrap();
        assert_eq!(b.bias, -1.0);
        assert_eq!(b.per_element_sqrt_products, vec![0.0, 0.0]);
        let b = closed_form_bias(&v, &unit(&[0.8, 0.6])).unwrap();
        assert!((b.bias + 0.04).abs() < 1e-15);
        assert_eq!(b.residuals.len(), 2);
    }

    #[test]
    fn residual_examples() {
        assert_eq!(approx_residual(0.0f64, 0.0).unwrap(), 0.0);
        assert_eq!(approx_residual(1.0f64, 0.0).unwrap(), -0.5);
        // x = y: √(1−x²)² = 1 − x², so the truncation is exact.
        let r = approx_residual(0.1f64, 0.1).unwrap();
        assert!(r.abs() < 1e-15, "{r}");
        // Leading term is −(x² − y²)²/8.
        let r = approx_residual(0.1f64, 0.0).unwrap();
        assert!((r + 1.25e-5).abs() < 2e-7, "{r}");
    }
}
