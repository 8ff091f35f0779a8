//! Dense linear-algebra kernel: matrices, symmetric eigendecomposition,
//! skew-symmetric exponentials and least-squares basis expansion.

mod dense;
mod eigen;
mod expm;
mod lstsq;

pub use dense::{ComplexMatrix, Dense, IntMatrix, Matrix};
pub use eigen::{
    jacobi_eigen, symmetric_eig, DecompositionDefects, EigenPair, SpectralDecomposition,
    DEFAULT_CLUSTER_TOL,
};
pub use expm::expm_skew;
pub use lstsq::{expand_in_basis, Expansion, GRAM_PIVOT_RTOL};
