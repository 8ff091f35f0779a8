//! Least-squares expansion of a matrix in a (possibly dependent) matrix basis.

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Pivots below this fraction of the largest pivot are treated as zero.
pub const GRAM_PIVOT_RTOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct Expansion {
    /// Minimum-norm coefficients.
    pub coefficients: Vec<f64>,
    /// `‖K − Σ c_i B_i‖_F`
    pub residual: f64,
    /// Numerical rank of the Gram matrix.
    pub rank: usize,
}

/// Expands `target` in `basis` under the trace inner product.
///
/// Solves the Gram system `G c = b`, `G_ij = ⟨B_i, B_j⟩`, `b_i = ⟨B_i, K⟩`,
/// by symmetric diagonal pivoting. When the basis is dependent the basic
/// solution is projected onto the row space of `G`, giving the
/// minimum-norm coefficient vector.
pub fn expand_in_basis(target: &Matrix, basis: &[Matrix]) -> Result<Expansion> {
    if basis.is_empty() {
        return Err(Error::validation("basis is empty"));
    }
    if let Some(bad) = basis.iter().find(|b| b.shape() != target.shape()) {
        return Err(Error::validation(format!(
            "basis element is {}x{} but target is {}x{}",
            bad.rows(),
            bad.cols(),
            target.rows(),
            target.cols()
        )));
    }

    let n = basis.len();
    let gram: Vec<Vec<f64>> = basis
        .iter()
        .map(|bi| basis.iter().map(|bj| bi.inner(bj)).collect())
        .collect();
    let rhs: Vec<f64> = basis.iter().map(|bi| bi.inner(target)).collect();

    let (pivots, free) = pivot_columns(&gram);
    let mut coefficients = vec![0.0; n];

    if !pivots.is_empty() {
        // Basic solution on the pivot columns.
        let sub: Vec<Vec<f64>> = pivots
            .iter()
            .map(|&i| pivots.iter().map(|&j| gram[i][j]).collect())
            .collect();
        let sub_rhs: Vec<f64> = pivots.iter().map(|&i| rhs[i]).collect();
        let basic = solve_dense(sub.clone(), sub_rhs);
        for (&i, x) in pivots.iter().zip(basic) {
            coefficients[i] = x;
        }

        // Null-space vectors, one per free column: e_f − G_PP⁻¹ G_Pf on P.
        if !free.is_empty() {
            let null: Vec<Vec<f64>> = free
                .iter()
                .map(|&f| {
                    let col: Vec<f64> = pivots.iter().map(|&i| gram[i][f]).collect();
                    let y = solve_dense(sub.clone(), col);
                    let mut v = vec![0.0; n];
                    v[f] = 1.0;
                    for (&i, yi) in pivots.iter().zip(y) {
                        v[i] = -yi;
                    }
                    v
                })
                .collect();
            // c ← c − N (NᵀN)⁻¹ Nᵀ c
            let ntn: Vec<Vec<f64>> = null
                .iter()
                .map(|a| null.iter().map(|b| dot(a, b)).collect())
                .collect();
            let ntc: Vec<f64> = null.iter().map(|a| dot(a, &coefficients)).collect();
            let w = solve_dense(ntn, ntc);
            for (v, wi) in null.iter().zip(w) {
                for (c, vi) in coefficients.iter_mut().zip(v) {
                    *c -= wi * vi;
                }
            }
        }
    }

    let mut fitted = Matrix::zeros(target.rows(), target.cols());
    for (b, &c) in basis.iter().zip(&coefficients) {
        if c != 0.0 {
            fitted = &fitted + &b.scale(c);
        }
    }
    Ok(Expansion {
        residual: target.distance(&fitted),
        coefficients,
        rank: pivots.len(),
    })
}

/// Symmetric diagonal pivoting (pivoted Cholesky without the square
/// roots). Returns the pivot indices in elimination order and the
/// remaining indices in ascending order.
fn pivot_columns(gram: &[Vec<f64>]) -> (Vec<usize>, Vec<usize>) {
    let n = gram.len();
    let mut work = gram.to_vec();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::new();
    let mut largest = 0.0f64;

    while !remaining.is_empty() {
        let (pos, &p) = remaining
            .iter()
            .enumerate()
            .max_by(|(_, &a), (_, &b)| work[a][a].total_cmp(&work[b][b]).then(b.cmp(&a)))
            .unwrap();
        let pivot = work[p][p];
        if pivots.is_empty() {
            largest = pivot;
        }
        if pivot <= 0.0 || pivot <= GRAM_PIVOT_RTOL * largest {
            break;
        }
        remaining.remove(pos);
        pivots.push(p);
        for &i in &remaining {
            let f = work[i][p] / pivot;
            for &j in &remaining {
                work[i][j] -= f * work[p][j];
            }
        }
    }
    remaining.sort_unstable();
    (pivots, remaining)
}

/// Gaussian elimination with partial pivoting on a small nonsingular system.
fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()).then(j.cmp(&i)))
            .unwrap();
        a.swap(col, p);
        b.swap(col, p);
        for row in (col + 1)..n {
            let f = a[row][col] / a[col][col];
            if f != 0.0 {
                let (top, bottom) = a.split_at_mut(row);
                for (x, &y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                    *x -= f * y;
                }
                b[row] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = ((row + 1)..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[[f64; 2]; 2]) -> Matrix {
        Matrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn exact_member() {
        let b1 = m(&[[0.0, 1.0], [-1.0, 0.0]]);
        let b2 = m(&[[1.0, 0.0], [0.0, 0.0]]);
        let e = expand_in_basis(&b1, &[b1.clone(), b2]).unwrap();
        assert!((e.coefficients[0] - 1.0).abs() < 1e-14);
        assert!(e.coefficients[1].abs() < 1e-14);
        assert!(e.residual < 1e-14);
        assert_eq!(e.rank, 2);
    }

    #[test]
    fn zero_target_gives_zero_coefficients() {
        let b1 = m(&[[0.0, 1.0], [-1.0, 0.0]]);
        let e = expand_in_basis(&Matrix::zeros(2, 2), &[b1.clone(), b1.scale(2.0)]).unwrap();
        assert!(e.coefficients.iter().all(|&c| c == 0.0));
        assert_eq!(e.residual, 0.0);
        assert_eq!(e.rank, 1);
    }

    #[test]
    fn dependent_basis_gets_minimum_norm() {
        // K = B, basis {B, B}: every (c, 1 − c) fits; minimum norm is (½, ½).
        let b = m(&[[0.0, 1.0], [-1.0, 0.0]]);
        let e = expand_in_basis(&b, &[b.clone(), b.clone()]).unwrap();
        assert!((e.coefficients[0] - 0.5).abs() < 1e-14);
        assert!((e.coefficients[1] - 0.5).abs() < 1e-14);
        assert!(e.residual < 1e-14);
    }

    #[test]
    fn zero_basis_element_is_ignored() {
        let b = m(&[[0.0, 3.0], [-3.0, 0.0]]);
        let e = expand_in_basis(&b, &[Matrix::zeros(2, 2), b.clone()]).unwrap();
        assert_eq!(e.coefficients[0], 0.0);
        assert!((e.coefficients[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn non_member_has_residual() {
        let b1 = m(&[[1.0, 0.0], [0.0, 0.0]]);
        let target = m(&[[1.0, 0.0], [0.0, 2.0]]);
        let e = expand_in_basis(&target, &[b1]).unwrap();
        assert!((e.coefficients[0] - 1.0).abs() < 1e-14);
        assert!((e.residual - 2.0).abs() < 1e-14);
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let r = expand_in_basis(&Matrix::zeros(2, 2), &[Matrix::zeros(3, 3)]);
        assert!(matches!(r, Err(Error::Validation(_))));
        assert!(matches!(expand_in_basis(&Matrix::zeros(2, 2), &[]), Err(Error::Validation(_))));
    }
}
