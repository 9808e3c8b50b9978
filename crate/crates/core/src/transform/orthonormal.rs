use std::f64::consts::PI;

use super::kernel::{scaling_diagonal, DiagonalScaling, IntegerKernel};
use crate::linalg::Matrix;
use crate::{Error, Result};

/// Bound on `max|M·Mᵀ − I|` accepted for every orthonormal transform.
pub const ORTHONORMAL_TOLERANCE: f64 = 1e-12;

/// Where an orthonormal matrix came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    ExactDct,
    OrthogonalizedKernel,
    Wht,
    Plugin,
}

/// Row ordering of the 16-point Walsh–Hadamard matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhtOrdering {
    /// Sylvester construction `H₂ₙ = [[Hₙ, Hₙ], [Hₙ, −Hₙ]]`.
    Natural,
    /// Rows sorted by number of sign changes.
    Sequency,
}

#[derive(Clone, Debug)]
pub struct OrthonormalTransform {
    matrix: Matrix,
    provenance: Provenance,
    kernel: Option<IntegerKernel>,
    scaling: Option<DiagonalScaling>,
}

impl OrthonormalTransform {
    /// Wraps an externally supplied matrix after checking orthonormality.
    pub fn plugin(matrix: Matrix) -> Result<Self> {
        Self::checked(matrix, Provenance::Plugin, None, None)
    }

    fn checked(
        matrix: Matrix,
        provenance: Provenance,
        kernel: Option<IntegerKernel>,
        scaling: Option<DiagonalScaling>,
    ) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(Error::invalid("transform matrix must be square and nonempty"));
        }
        let deviation = matrix.orthonormality_deviation();
        // NaN entries fail this check too.
        if deviation.is_nan() || deviation >= ORTHONORMAL_TOLERANCE {
            return Err(Error::NotOrthonormal { deviation });
        }
        Ok(OrthonormalTransform {
            matrix,
            provenance,
            kernel,
            scaling,
        })
    }

    pub fn order(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn kernel(&self) -> Option<&IntegerKernel> {
        self.kernel.as_ref()
    }

    pub fn scaling(&self) -> Option<&DiagonalScaling> {
        self.scaling.as_ref()
    }
}

/// Orthonormal DCT-II of the given order.
pub fn exact_dct_matrix(order: usize) -> Result<OrthonormalTransform> {
    if order == 0 {
        return Err(Error::invalid("DCT order must be positive"));
    }
    let n = order as f64;
    let norm = (2.0 / n).sqrt();
    let matrix = Matrix::from_fn(order, order, |k, i| {
        if k == 0 {
            // α₀·sqrt(2/N) folded into one root so the DC row is exact.
            return (1.0 / n).sqrt();
        }
        norm * (PI * k as f64 * (2 * i + 1) as f64 / (2.0 * n)).cos()
    });
    OrthonormalTransform::checked(matrix, Provenance::ExactDct, None, None)
}

/// `Ĉ = diag(S)·K` with `S = sqrt((K·Kᵀ)⁻¹)`.
pub fn orthogonalize(kernel: &IntegerKernel) -> Result<OrthonormalTransform> {
    let scaling = scaling_diagonal(kernel)?;
    let n = kernel.order();
    let matrix = Matrix::from_fn(n, n, |i, j| scaling.get(i) * kernel.entry(i, j) as f64);
    OrthonormalTransform::checked(
        matrix,
        Provenance::OrthogonalizedKernel,
        Some(kernel.clone()),
        Some(scaling),
    )
}

fn sylvester_16() -> Vec<Vec<i32>> {
    let mut h = vec![vec![1i32]];
    while h.len() < 16 {
        let n = h.len();
        let mut next = vec![vec![0; 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = h[i][j];
                next[i][j + n] = h[i][j];
                next[i + n][j] = h[i][j];
                next[i + n][j + n] = -h[i][j];
            }
        }
        h = next;
    }
    h
}

/// Number of sign flips between consecutive entries.
pub fn sign_changes(row: &[f64]) -> usize {
    row.windows(2).filter(|w| (w[0] < 0.0) != (w[1] < 0.0)).count()
}

/// 16-point Walsh–Hadamard matrix scaled by 1/4.
pub fn wht_matrix(ordering: WhtOrdering) -> OrthonormalTransform {
    let mut rows = sylvester_16();
    if ordering == WhtOrdering::Sequency {
        rows.sort_by_key(|r| r.windows(2).filter(|w| w[0] != w[1]).count());
    }
    let matrix = Matrix::from_fn(16, 16, |i, j| rows[i][j] as f64 * 0.25);
    OrthonormalTransform::checked(matrix, Provenance::Wht, None, None).expect("scaled Hadamard matrix is orthonormal")
}

/// Sequency-ordered WHT: row `k` has exactly `k` sign changes.
pub fn wht_matrix_16() -> OrthonormalTransform {
    wht_matrix(WhtOrdering::Sequency)
}

/// Natural (Hadamard) order WHT, the baseline used for the performance table.
pub fn hadamard_matrix_16() -> OrthonormalTransform {
    wht_matrix(WhtOrdering::Natural)
}
