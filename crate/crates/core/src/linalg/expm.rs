//! Exponential of a real skew-symmetric matrix by scaling and squaring.

use crate::error::{Error, Result};
use crate::linalg::Matrix;

const SKEW_TOL: f64 = 1e-12;
/// Scale until `‖tS / 2^s‖_1` is at most this.
const SCALED_NORM: f64 = 0.5;
/// Degree of the truncated Taylor polynomial.
const TAYLOR_DEGREE: u32 = 18;

/// `exp(t·S)` for skew-symmetric `S`.
///
/// The result is orthogonal with determinant one up to rounding.
pub fn expm_skew(s: &Matrix, t: f64) -> Result<Matrix> {
    if !s.is_square() {
        return Err(Error::validation(format!(
            "exponential needs a square matrix, got {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    if !s.is_finite() || !t.is_finite() {
        return Err(Error::validation("non-finite input to matrix exponential"));
    }
    let defect = s.skew_defect();
    if defect > SKEW_TOL * s.max_abs().max(1.0) {
        return Err(Error::validation(format!(
            "matrix is not skew-symmetric (max |S + Sᵀ| = {defect:.3e})"
        )));
    }

    let n = s.rows();
    let a = s.scale(t);
    let norm = a.norm_one();
    let mut squarings = 0u32;
    let mut scaled_norm = norm;
    while scaled_norm > SCALED_NORM {
        scaled_norm /= 2.0;
        squarings += 1;
    }
    let b = a.scale(0.5f64.powi(squarings as i32));

    // Horner form of Σ_{j≤18} B^j / j!
    let identity = Matrix::identity(n);
    let mut result = identity.clone();
    for j in (1..=TAYLOR_DEGREE).rev() {
        result = &identity + &(&b * &result).scale(1.0 / j as f64);
    }

    for _ in 0..squarings {
        result = &result * &result;
    }
    Ok(result)
}
