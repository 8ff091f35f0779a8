//! Lifting eigenspaces of A(X) to eigenspaces of the Grover walk.
//!
//! For an eigenvalue `λ = k cos θ` of A(X) with `θ ∈ (0, π)` the walk has
//! eigenvalues `e^{±iθ}` with projectors
//!
//! ```text
//! F₊ = (D_t − e^{iθ} D_h)ᵀ E_λ (D_t − e^{−iθ} D_h) / (2k sin²θ)
//! F₋ = (D_t − e^{−iθ} D_h)ᵀ E_λ (D_t − e^{iθ} D_h) / (2k sin²θ)
//! ```
//!
//! and `F₊ − F₋ = i/(k sin θ) · S_λ` with the real skew matrix
//! `S_λ = D_tᵀ E_λ D_h − D_hᵀ E_λ D_t`.

use num_complex::Complex64;

use crate::arcs::{ArcSpace, DistanceDigraphFamily};
use crate::error::{ensure_below, Error, Result};
use crate::graph::DistanceMatrixSet;
use crate::linalg::{expand_in_basis, ComplexMatrix, EigenPair, Expansion, Matrix, SpectralDecomposition};

/// Tolerance for projector identities (idempotence, Hermitian, eigen-equation).
pub const PROJECTOR_TOL: f64 = 1e-9;
/// Tolerance on `trace F₊ = multiplicity`.
pub const TRACE_TOL: f64 = 1e-8;
/// Span-membership residual bound.
pub const SPAN_TOL: f64 = 1e-9;

/// A non-real eigenvalue pair `e^{±iθ}` of the walk and its projectors.
#[derive(Debug, Clone)]
pub struct WalkEigenpair {
    pub lambda: f64,
    pub multiplicity: usize,
    pub theta: f64,
    pub f_plus: ComplexMatrix,
    pub f_minus: ComplexMatrix,
}

impl WalkEigenpair {
    /// Largest of the idempotence and Hermitian defects of `F₊`.
    pub fn projector_defect(&self) -> f64 {
        let idem = (&self.f_plus * &self.f_plus).distance(&self.f_plus);
        let herm = self.f_plus.adjoint().distance(&self.f_plus);
        idem.max(herm)
    }

    pub fn trace_defect(&self) -> f64 {
        (self.f_plus.trace() - Complex64::new(self.multiplicity as f64, 0.0)).norm()
    }

    /// `‖F₋ − conj(F₊)‖_F`
    pub fn conjugate_defect(&self) -> f64 {
        self.f_minus.distance(&self.f_plus.conj())
    }
}

/// Eigenvalues within this fraction of k of ±k are treated as ±k.
const EXTREME_RTOL: f64 = 1e-8;

/// Angle θ ∈ (0, π) with `λ = k cos θ`; fails unless `|λ| < k`.
pub fn walk_angle(lambda: f64, k: usize) -> Result<f64> {
    let k = k as f64;
    let theta = (lambda / k).acos();
    if lambda.is_nan() || lambda.abs() >= k * (1.0 - EXTREME_RTOL) {
        return Err(Error::validation(format!(
            "eigenvalue {lambda} is not strictly between -{k} and {k}"
        )));
    }
    Ok(theta)
}

pub fn walk_eigenprojections(e: &EigenPair, k: usize, s: &ArcSpace) -> Result<WalkEigenpair> {
    let theta = walk_angle(e.value, k)?;
    let dt = s.tail_incidence().to_complex();
    let dh = s.head_incidence().to_complex();
    let proj = e.projector.to_complex();
    let phase = Complex64::from_polar(1.0, theta);
    let scale = Complex64::new(1.0 / (2.0 * k as f64 * theta.sin().powi(2)), 0.0);

    let sandwich = |left: Complex64, right: Complex64| {
        let l = &dt - &dh.scale(left);
        let r = &dt - &dh.scale(right);
        (&(&l.transpose() * &proj) * &r).scale(scale)
    };

    let wp = WalkEigenpair {
        lambda: e.value,
        multiplicity: e.multiplicity,
        theta,
        f_plus: sandwich(phase, phase.conj()),
        f_minus: sandwich(phase.conj(), phase),
    };
    ensure_below("walk projector is a Hermitian idempotent", wp.projector_defect(), PROJECTOR_TOL)?;
    ensure_below("walk projector trace equals multiplicity", wp.trace_defect(), TRACE_TOL)?;
    ensure_below("conjugate walk projectors", wp.conjugate_defect(), PROJECTOR_TOL)?;
    Ok(wp)
}

/// Walk eigenpairs for every eigenvalue of A(X) strictly inside (−k, k).
pub fn all_walk_eigenprojections(
    dec: &SpectralDecomposition,
    k: usize,
    s: &ArcSpace,
) -> Result<Vec<WalkEigenpair>> {
    dec.pairs
        .iter()
        .filter(|p| walk_angle(p.value, k).is_ok())
        .map(|p| walk_eigenprojections(p, k, s))
        .collect()
}

/// Defects of the eigen-equations `U F₊ = e^{iθ} F₊`, `U F₋ = e^{−iθ} F₋`
/// and of pairwise orthogonality between all listed projectors.
#[derive(Debug, Clone, Copy)]
pub struct WalkProjectionDefects {
    pub eigen_equation: f64,
    pub orthogonality: f64,
}

impl WalkProjectionDefects {
    pub fn within(&self, tol: f64) -> bool {
        self.eigen_equation < tol && self.orthogonality < tol
    }
}

pub fn walk_projection_defects(pairs: &[WalkEigenpair], u: &Matrix) -> WalkProjectionDefects {
    let uc = u.to_complex();
    let mut eigen_equation: f64 = 0.0;
    let mut projectors = Vec::new();
    for p in pairs {
        let phase = Complex64::from_polar(1.0, p.theta);
        eigen_equation = eigen_equation
            .max((&uc * &p.f_plus).distance(&p.f_plus.scale(phase)))
            .max((&uc * &p.f_minus).distance(&p.f_minus.scale(phase.conj())));
        projectors.push(&p.f_plus);
        projectors.push(&p.f_minus);
    }
    let mut orthogonality: f64 = 0.0;
    for (i, a) in projectors.iter().enumerate() {
        for b in &projectors[i + 1..] {
            orthogonality = orthogonality.max((*a * *b).frobenius_norm());
        }
    }
    WalkProjectionDefects {
        eigen_equation,
        orthogonality,
    }
}

/// True iff every eigen-equation and orthogonality defect is below 1e−9.
pub fn verify_walk_projections(pairs: &[WalkEigenpair], u: &Matrix) -> bool {
    walk_projection_defects(pairs, u).within(PROJECTOR_TOL)
}

/// `S_λ` together with the measured defect of `F₊ − F₋ = i/(k sin θ) S_λ`
/// (present when `|λ| < k`).
#[derive(Debug, Clone)]
pub struct SkewLambda {
    pub lambda: f64,
    pub matrix: Matrix,
    pub difference_defect: Option<f64>,
}

pub fn skew_lambda(e: &EigenPair, s: &ArcSpace) -> Result<SkewLambda> {
    let dt = s.tail_incidence().to_real();
    let dh = s.head_incidence().to_real();
    let left = &(&dt.transpose() * &e.projector) * &dh;
    let matrix = &left - &left.transpose();

    let k = s.degree();
    let difference_defect = match walk_angle(e.value, k) {
        Ok(theta) => {
            let wp = walk_eigenprojections(e, k, s)?;
            let diff = &wp.f_plus - &wp.f_minus;
            let expected = matrix
                .to_complex()
                .scale(Complex64::new(0.0, 1.0 / (k as f64 * theta.sin())));
            let defect = diff.distance(&expected);
            ensure_below("projector difference is i/(k sin θ)·S_λ", defect, PROJECTOR_TOL)?;
            Some(defect)
        }
        Err(_) => None,
    };
    Ok(SkewLambda {
        lambda: e.value,
        matrix,
        difference_defect,
    })
}

/// Dual eigenvalues `q_r(i)`: `E_r = (1/n) Σ_i q_r(i) A_i`.
#[derive(Debug, Clone)]
pub struct DualEigenvalues {
    /// One row per eigenspace (decomposition order), columns `0..=d`.
    pub q: Vec<Vec<f64>>,
}

/// Reads `q_r(i) = n·(E_r)_{uv}` from any pair at distance i, after
/// checking the entries are constant on each distance class.
pub fn dual_eigenvalues(dec: &SpectralDecomposition, dm: &DistanceMatrixSet) -> Result<DualEigenvalues> {
    let n = dm.get(0).rows();
    if dec.source.rows() != n {
        return Err(Error::validation("decomposition and distance matrices differ in size"));
    }
    let mut q = Vec::with_capacity(dec.pairs.len());
    for (r, pair) in dec.pairs.iter().enumerate() {
        let mut row = Vec::with_capacity(dm.diameter() + 1);
        for (i, a) in dm.matrices.iter().enumerate() {
            let mut value: Option<f64> = None;
            for u in 0..n {
                for v in 0..n {
                    if a[(u, v)] != 1 {
                        continue;
                    }
                    let x = pair.projector[(u, v)];
                    match value {
                        None => value = Some(x),
                        Some(y) if (x - y).abs() > PROJECTOR_TOL => {
                            return Err(Error::validation(format!(
                                "eigenprojection {r} is not constant on distance class {i} \
                                 ({y} vs {x}); graph not distance-regular?"
                            )))
                        }
                        Some(_) => {}
                    }
                }
            }
            row.push(n as f64 * value.unwrap_or(0.0));
        }
        q.push(row);
    }
    Ok(DualEigenvalues { q })
}

impl DualEigenvalues {
    /// `max_r ‖E_r − (1/n) Σ_i q_r(i) A_i‖_F`
    pub fn reconstruction_defect(&self, dec: &SpectralDecomposition, dm: &DistanceMatrixSet) -> f64 {
        let n = dm.get(0).rows();
        self.q
            .iter()
            .zip(&dec.pairs)
            .map(|(row, pair)| {
                let rebuilt = row.iter().zip(&dm.matrices).fold(Matrix::zeros(n, n), |acc, (&q, a)| {
                    &acc + &a.to_real().scale(q / n as f64)
                });
                rebuilt.distance(&pair.projector)
            })
            .fold(0.0, f64::max)
    }
}

/// Expands `S_λ` in `{S(Y_1), …, S(Y_d)}`; fails if the residual reaches 1e−9.
pub fn verify_span_membership(sl: &SkewLambda, fam: &DistanceDigraphFamily) -> Result<Expansion> {
    let basis = skew_basis(fam);
    let e = expand_in_basis(&sl.matrix, &basis)?;
    ensure_below("S_λ lies in the span of the distance-digraph skews", e.residual, SPAN_TOL)?;
    Ok(e)
}

/// `S(Y_1), …, S(Y_d)` as real matrices.
pub fn skew_basis(fam: &DistanceDigraphFamily) -> Vec<Matrix> {
    let d = fam.graph_diameter();
    fam.skews[1..=d].iter().map(|s| s.to_real()).collect()
}
