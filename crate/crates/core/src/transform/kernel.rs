use crate::linalg::Matrix;
use crate::{Error, Result};

/// Order of the proposed approximation.
pub const ORDER: usize = 16;

#[rustfmt::skip]
const PROPOSED: [[i8; ORDER]; ORDER] = [
    [ 1,  1,  1,  1,  1,  1,  1,  1,  1,  1,  1,  1,  1,  1,  1,  1],
    [ 1,  1,  1,  1,  1,  1,  1,  1, -1, -1, -1, -1, -1, -1, -1, -1],
    [ 1,  0,  0,  0,  0,  0,  0, -1, -1,  0,  0,  0,  0,  0,  0,  1],
    [ 1,  1,  0,  0,  0,  0, -1, -1,  1,  1,  0,  0,  0,  0, -1, -1],
    [ 1,  0,  0, -1, -1,  0,  0,  1,  1,  0,  0, -1, -1,  0,  0,  1],
    [ 1,  1, -1, -1, -1, -1,  1,  1, -1, -1,  1,  1,  1,  1, -1, -1],
    [ 0,  0, -1,  0,  0,  1,  0,  0,  0,  0,  1,  0,  0, -1,  0,  0],
    [ 0,  0,  0,  0,  0,  0, -1,  1, -1,  1,  0,  0,  0,  0,  0,  0],
    [ 1, -1, -1,  1,  1, -1, -1,  1,  1, -1, -1,  1,  1, -1, -1,  1],
    [ 0,  0, -1,  1,  0,  0,  0,  0,  0,  0,  0,  0, -1,  1,  0,  0],
    [ 0, -1,  0,  0,  0,  0,  1,  0,  0,  1,  0,  0,  0,  0, -1,  0],
    [ 0,  0,  1,  1, -1, -1,  0,  0,  0,  0,  1,  1, -1, -1,  0,  0],
    [ 0, -1,  1,  0,  0,  1, -1,  0,  0, -1,  1,  0,  0,  1, -1,  0],
    [ 1, -1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  1, -1],
    [ 0,  0,  0, -1,  1,  0,  0,  0,  0,  0,  0,  1, -1,  0,  0,  0],
    [ 0,  0,  0,  0, -1,  1,  0,  0,  0,  0, -1,  1,  0,  0,  0,  0],
];

/// A square matrix of small integers, the multiplier-free part of an
/// approximate transform.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerKernel {
    order: usize,
    entries: Vec<i32>,
}

impl IntegerKernel {
    pub fn new(order: usize, entries: Vec<i32>) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("kernel order must be positive"));
        }
        if entries.len() != order * order {
            return Err(Error::invalid(format!(
                "kernel of order {order} needs {} entries, got {}",
                order * order,
                entries.len()
            )));
        }
        Ok(IntegerKernel { order, entries })
    }

    pub fn from_rows(rows: &[Vec<i32>]) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::invalid("kernel rows must form a square matrix"));
        }
        IntegerKernel::new(order, rows.concat())
    }

    pub fn identity(order: usize) -> Result<Self> {
        let mut entries = vec![0; order * order];
        for i in 0..order {
            entries[i * order + i] = 1;
        }
        IntegerKernel::new(order, entries)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entry(&self, row: usize, col: usize) -> i32 {
        self.entries[row * self.order + col]
    }

    pub fn row(&self, i: usize) -> &[i32] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    /// True when every entry is −1, 0 or +1.
    pub fn is_ternary(&self) -> bool {
        self.entries.iter().all(|e| (-1..=1).contains(e))
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|&&e| e != 0).count()
    }

    pub fn row_nonzero_count(&self, i: usize) -> usize {
        self.row(i).iter().filter(|&&e| e != 0).count()
    }

    /// `K·Kᵀ` in exact integer arithmetic, row-major.
    pub fn gram(&self) -> Vec<i64> {
        let n = self.order;
        let mut g = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                g[i * n + j] = self
                    .row(i)
                    .iter()
                    .zip(self.row(j))
                    .map(|(&a, &b)| a as i64 * b as i64)
                    .sum();
            }
        }
        g
    }

    pub fn mul_vec(&self, x: &[i64]) -> Result<Vec<i64>> {
        if x.len() != self.order {
            return Err(Error::invalid(format!(
                "vector of length {} does not match kernel order {}",
                x.len(),
                self.order
            )));
        }
        Ok((0..self.order)
            .map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| a as i64 * b).sum())
            .collect())
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_fn(self.order, self.order, |i, j| self.entry(i, j) as f64)
    }
}

/// Per-row scale factors `S` such that `diag(S)·K` is orthonormal.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalScaling {
    values: Vec<f64>,
}

impl DiagonalScaling {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("scaling must have at least one entry"));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::invalid(format!("scale factor {v} is not strictly positive")));
        }
        Ok(DiagonalScaling { values })
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize) -> f64 {
        self.values[i]
    }
}

/// The 16×16 ternary kernel of the approximation.
pub fn proposed_kernel() -> IntegerKernel {
    let entries = PROPOSED.iter().flatten().map(|&e| e as i32).collect();
    IntegerKernel::new(ORDER, entries).expect("literal kernel is 16×16")
}

/// `S = sqrt((K·Kᵀ)⁻¹)` for a kernel whose rows are mutually orthogonal.
pub fn scaling_diagonal(kernel: &IntegerKernel) -> Result<DiagonalScaling> {
    let n = kernel.order();
    let g = kernel.gram();
    for i in 0..n {
        if g[i * n + i] == 0 {
            return Err(Error::RankDeficient { row: i });
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let off = g[i * n + j];
            if off != 0 {
                // Parallel rows (g_ij² = g_ii·g_jj) make the kernel singular.
                if off as i128 * off as i128 == g[i * n + i] as i128 * g[j * n + j] as i128 {
                    return Err(Error::RankDeficient { row: j });
                }
                return Err(Error::NotOrthogonalizable { row: i, col: j });
            }
        }
    }
    DiagonalScaling::new((0..n).map(|i| 1.0 / (g[i * n + i] as f64).sqrt()).collect())
}
