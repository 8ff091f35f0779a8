//! Symmetric eigendecomposition by cyclic Jacobi rotations, with the raw
//! eigenvalues clustered into eigenspaces and returned as orthogonal
//! projectors.

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Default clustering tolerance, relative to `max(1, ‖M‖_∞)`.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;

/// Jacobi stops once the off-diagonal Frobenius norm drops below this
/// fraction of `‖M‖_F`.
const OFF_DIAGONAL_RTOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;
const SYMMETRY_TOL: f64 = 1e-12;

/// One eigenspace: its eigenvalue, dimension and orthogonal projector.
#[derive(Debug, Clone)]
pub struct EigenPair {
    pub value: f64,
    pub multiplicity: usize,
    pub projector: Matrix,
}

#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub source: Matrix,
    /// Eigenspaces ordered by decreasing eigenvalue.
    pub pairs: Vec<EigenPair>,
    pub cluster_tol: f64,
}

/// Residuals of the three defining identities of a spectral decomposition.
#[derive(Debug, Clone, Copy)]
pub struct DecompositionDefects {
    /// `‖Σ E_r − I‖_F`
    pub completeness: f64,
    /// `‖Σ λ_r E_r − M‖_F`
    pub reconstruction: f64,
    /// `max_{r≠s} ‖E_r E_s‖_F`
    pub orthogonality: f64,
}

impl SpectralDecomposition {
    pub fn defects(&self) -> DecompositionDefects {
        let n = self.source.rows();
        let mut sum = Matrix::zeros(n, n);
        let mut weighted = Matrix::zeros(n, n);
        for p in &self.pairs {
            sum = &sum + &p.projector;
            weighted = &weighted + &p.projector.scale(p.value);
        }
        let mut orthogonality: f64 = 0.0;
        for (r, a) in self.pairs.iter().enumerate() {
            for b in &self.pairs[r + 1..] {
                orthogonality = orthogonality.max((&a.projector * &b.projector).frobenius_norm());
            }
        }
        DecompositionDefects {
            completeness: sum.distance(&Matrix::identity(n)),
            reconstruction: weighted.distance(&self.source),
            orthogonality,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.value).collect()
    }

    /// The eigenspace whose eigenvalue lies within the clustering window of `value`.
    pub fn pair_near(&self, value: f64) -> Option<&EigenPair> {
        let window = self.cluster_tol * self.source.norm_inf().max(1.0);
        self.pairs.iter().find(|p| (p.value - value).abs() <= window)
    }
}

/// Eigenvalues (unsorted) and the matching orthonormal eigenvectors as the
/// columns of the returned matrix.
pub fn jacobi_eigen(m: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    check_symmetric(m)?;
    let n = m.rows();
    let mut a = m.clone();
    let mut v = Matrix::identity(n);
    let threshold = OFF_DIAGONAL_RTOL * m.frobenius_norm();

    let off = |a: &Matrix| {
        let mut s = 0.0;
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    s += a[(p, q)] * a[(p, q)];
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    let mut current = off(&a);
    while current > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off: current,
            });
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let (c, s) = rotation(a[(p, p)], apq, a[(q, q)]);
                apply_rotation(&mut a, &mut v, p, q, c, s);
            }
        }
        sweeps += 1;
        current = off(&a);
    }

    Ok(((0..n).map(|i| a[(i, i)]).collect(), v))
}

/// Cosine-sine pair that annihilates the (p, q) entry of the 2x2 block
/// `[[app, apq], [apq, aqq]]`.
fn rotation(app: f64, apq: f64, aqq: f64) -> (f64, f64) {
    let tau = (aqq - app) / (2.0 * apq);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, t * c)
}

/// `A ← JᵀAJ`, `V ← VJ` for the rotation J in the (p, q) plane.
fn apply_rotation(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

fn check_symmetric(m: &Matrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::validation(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_finite() {
        return Err(Error::validation("matrix has non-finite entries"));
    }
    let asym = m.asymmetry();
    if asym > SYMMETRY_TOL {
        return Err(Error::validation(format!(
            "matrix is not symmetric (max |M - Mᵀ| = {asym:.3e})"
        )));
    }
    Ok(())
}

/// Spectral decomposition of a real symmetric matrix.
///
/// Raw eigenvalues closer than `cluster_tol · max(1, ‖M‖_∞)` (transitively)
/// are merged into one eigenspace whose value is the cluster mean; the
/// projector is the sum of outer products of the cluster's eigenvectors.
pub fn symmetric_eig(m: &Matrix, cluster_tol: f64) -> Result<SpectralDecomposition> {
    let (values, vectors) = jacobi_eigen(m)?;
    let n = m.rows();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));

    let window = cluster_tol * m.norm_inf().max(1.0);
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match clusters.last_mut() {
            Some(cluster) if values[*cluster.last().unwrap()] - values[i] <= window => {
                cluster.push(i)
            }
            _ => clusters.push(vec![i]),
        }
    }

    let pairs = clusters
        .into_iter()
        .map(|cluster| {
            let value = cluster.iter().map(|&i| values[i]).sum::<f64>() / cluster.len() as f64;
            let projector = Matrix::from_fn(n, n, |r, c| {
                cluster
                    .iter()
                    .map(|&i| vectors[(r, i)] * vectors[(c, i)])
                    .sum()
            });
            EigenPair {
                value,
                multiplicity: cluster.len(),
                projector,
            }
        })
        .collect();

    Ok(SpectralDecomposition {
        source: m.clone(),
        pairs,
        cluster_tol,
    })
}
