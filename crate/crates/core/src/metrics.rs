//! Similarity and coding figures of merit for orthonormal transforms.
//!
//! Coding measures are taken under a stationary first-order Markov source
//! with covariance `r_ij = ρ^|i−j|`. The similarity measures compare an
//! approximation `Ĉ` against the exact DCT `C` row by row.

use std::f64::consts::PI;

use crate::linalg::Matrix;
use crate::transform::{exact_dct_matrix, OrthonormalTransform, TransformRegistry};
use crate::{Error, Result};

/// Correlation coefficient used when none is specified.
pub const DEFAULT_RHO: f64 = 0.95;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MarkovModel {
    order: usize,
    rho: f64,
}

impl MarkovModel {
    pub fn new(order: usize, rho: f64) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("Markov model order must be positive"));
        }
        if !(0.0..1.0).contains(&rho) {
            return Err(Error::invalid(format!("correlation coefficient {rho} outside [0, 1)")));
        }
        Ok(MarkovModel { order, rho })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }
}

pub fn markov_covariance(model: &MarkovModel) -> Matrix {
    Matrix::from_fn(model.order, model.order, |i, j| model.rho.powi(i.abs_diff(j) as i32))
}

fn check_orders(a: &OrthonormalTransform, b: &OrthonormalTransform) -> Result<()> {
    if a.order() != b.order() {
        return Err(Error::invalid(format!(
            "order mismatch: {} vs {}",
            a.order(),
            b.order()
        )));
    }
    Ok(())
}

fn check_model(t: &OrthonormalTransform, model: &MarkovModel) -> Result<()> {
    if t.order() != model.order() {
        return Err(Error::invalid(format!(
            "transform order {} does not match model order {}",
            t.order(),
            model.order()
        )));
    }
    Ok(())
}

/// `ε = π·‖C − Ĉ‖²_F`.
pub fn total_error_energy(approx: &OrthonormalTransform, exact: &OrthonormalTransform) -> Result<f64> {
    check_orders(approx, exact)?;
    Ok(PI * exact.matrix().frobenius_sq_distance(approx.matrix())?)
}

/// `(1/N)·tr((C − Ĉ)·R·(C − Ĉ)ᵀ)`.
pub fn transform_mse(approx: &OrthonormalTransform, exact: &OrthonormalTransform, model: &MarkovModel) -> Result<f64> {
    check_orders(approx, exact)?;
    check_model(approx, model)?;
    let d = exact.matrix().sub(approx.matrix())?;
    let r = markov_covariance(model);
    let drdt = d.mul(&r)?.mul(&d.transpose())?;
    Ok(drdt.trace() / approx.order() as f64)
}

/// Variances `σ²_i = (T·R·Tᵀ)_ii` and the full transformed covariance.
fn transformed_covariance(t: &OrthonormalTransform, model: &MarkovModel) -> Result<Matrix> {
    check_model(t, model)?;
    let r = markov_covariance(model);
    t.matrix().mul(&r)?.mul(&t.matrix().transpose())
}

/// Ratio of arithmetic to geometric mean of the coefficient variances, in dB.
pub fn coding_gain_db(t: &OrthonormalTransform, model: &MarkovModel) -> Result<f64> {
    let variances = transformed_covariance(t, model)?.diagonal();
    if let Some((i, v)) = variances.iter().enumerate().find(|(_, v)| **v <= 0.0) {
        return Err(Error::NumericalDegeneracy(format!("coefficient {i} has variance {v}")));
    }
    let n = variances.len() as f64;
    let arithmetic = variances.iter().sum::<f64>() / n;
    let log_geometric = variances.iter().map(|v| v.ln()).sum::<f64>() / n;
    Ok(10.0 * (arithmetic.ln() - log_geometric) / std::f64::consts::LN_10)
}

/// Share of the transformed covariance's absolute mass on its diagonal, in percent.
pub fn transform_efficiency_pct(t: &OrthonormalTransform, model: &MarkovModel) -> Result<f64> {
    let cov = transformed_covariance(t, model)?;
    let diag: f64 = cov.diagonal().iter().map(|v| v.abs()).sum();
    let total: f64 = cov.as_slice().iter().map(|v| v.abs()).sum();
    Ok(100.0 * diag / total)
}

/// `d2 = 1 − (1/N)·Σ_k (ĉ_k·c_k)²` over matched rows.
pub fn dct_distortion_d2(approx: &OrthonormalTransform, exact: &OrthonormalTransform) -> Result<f64> {
    check_orders(approx, exact)?;
    let n = approx.order();
    for (label, m) in [("approximation", approx.matrix()), ("reference", exact.matrix())] {
        for k in 0..n {
            let norm_sq: f64 = m.row(k).iter().map(|v| v * v).sum();
            if (norm_sq - 1.0).abs() > 1e-9 {
                return Err(Error::invalid(format!("{label} row {k} has squared norm {norm_sq}")));
            }
        }
    }
    let sum: f64 = (0..n)
        .map(|k| {
            let dot: f64 = approx
                .matrix()
                .row(k)
                .iter()
                .zip(exact.matrix().row(k))
                .map(|(a, b)| a * b)
                .sum();
            dot * dot
        })
        .sum();
    Ok(1.0 - sum / n as f64)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricReport {
    pub name: String,
    pub d2: f64,
    pub epsilon: f64,
    pub mse: f64,
    pub coding_gain_db: f64,
    pub efficiency_pct: f64,
}

impl MetricReport {
    pub fn evaluate(
        name: impl Into<String>,
        approx: &OrthonormalTransform,
        exact: &OrthonormalTransform,
        model: &MarkovModel,
    ) -> Result<Self> {
        Ok(MetricReport {
            name: name.into(),
            d2: dct_distortion_d2(approx, exact)?,
            epsilon: total_error_energy(approx, exact)?,
            mse: transform_mse(approx, exact, model)?,
            coding_gain_db: coding_gain_db(approx, model)?,
            efficiency_pct: transform_efficiency_pct(approx, model)?,
        })
    }
}

/// Scores every registry entry against the exact DCT of matching order.
pub fn performance_table(registry: &TransformRegistry, rho: f64) -> Result<Vec<MetricReport>> {
    registry
        .entries()
        .iter()
        .map(|e| {
            let order = e.transform.order();
            let exact = exact_dct_matrix(order)?;
            let model = MarkovModel::new(order, rho)?;
            MetricReport::evaluate(e.name.clone(), &e.transform, &exact, &model)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityRow {
    pub name: String,
    pub multiplications: usize,
    pub additions: usize,
    pub bit_shifts: usize,
    pub total: usize,
}

pub fn complexity_table(registry: &TransformRegistry) -> Vec<ComplexityRow> {
    registry
        .entries()
        .iter()
        .map(|e| ComplexityRow {
            name: e.name.clone(),
            multiplications: e.cost.multiplications,
            additions: e.cost.additions,
            bit_shifts: e.cost.bit_shifts,
            total: e.cost.total(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::{hadamard_matrix_16, orthogonalize, proposed_kernel, wht_matrix_16};

    fn model() -> MarkovModel {
        MarkovModel::new(16, DEFAULT_RHO).unwrap()
    }

    #[test]
    fn covariance_entries() {
        let r = markov_covariance(&MarkovModel::new(16, 0.95).unwrap());
        assert_eq!(r[(0, 1)], 0.95);
        assert!((r[(0, 2)] - 0.9025).abs() < 1e-15);
        for i in 0..16 {
            assert_eq!(r[(i, i)], 1.0);
            for j in 0..16 {
                assert_eq!(r[(i, j)], r[(j, i)]);
                if i > 0 && j > 0 {
                    assert_eq!(r[(i, j)], r[(i - 1, j - 1)]);
                }
            }
        }
        let r0 = markov_covariance(&MarkovModel::new(4, 0.0).unwrap());
        assert_eq!(r0, Matrix::identity(4));
    }

    #[test]
    fn model_validation() {
        assert!(MarkovModel::new(16, 1.0).is_err());
        assert!(MarkovModel::new(16, -0.1).is_err());
        assert!(MarkovModel::new(0, 0.5).is_err());
        assert!(MarkovModel::new(16, f64::NAN).is_err());
    }

    #[test]
    fn exact_dct_is_ideal() {
        let c = exact_dct_matrix(16).unwrap();
        let rep = MetricReport::evaluate("dct", &c, &c, &model()).unwrap();
        assert!(rep.d2.abs() < 1e-12);
        assert_eq!(rep.epsilon, 0.0);
        assert_eq!(rep.mse, 0.0);
        assert!((rep.coding_gain_db - 9.455).abs() < 1e-3);
        assert!((rep.efficiency_pct - 88.452).abs() < 1e-3);
    }

    #[test]
    fn identity_has_no_gain() {
        let id = OrthonormalTransform::plugin(Matrix::identity(16)).unwrap();
        assert!(coding_gain_db(&id, &model()).unwrap().abs() < 1e-12);
    }

    #[test]
    fn proposed_row() {
        let c = exact_dct_matrix(16).unwrap();
        let p = orthogonalize(&proposed_kernel()).unwrap();
        let rep = MetricReport::evaluate("proposed", &p, &c, &model()).unwrap();
        assert!((rep.d2 - 0.493).abs() < 1e-3, "{rep:?}");
        assert!((rep.epsilon - 41.000).abs() < 1e-3);
        assert!((rep.mse - 0.095).abs() < 1e-3);
        assert!((rep.coding_gain_db - 7.857).abs() < 1e-3);
        assert!((rep.efficiency_pct - 67.608).abs() < 1e-3);
    }

    #[test]
    fn natural_wht_row() {
        let c = exact_dct_matrix(16).unwrap();
        let rep = MetricReport::evaluate("wht", &hadamard_matrix_16(), &c, &model()).unwrap();
        assert!((rep.d2 - 0.878).abs() < 1e-3, "{rep:?}");
        assert!((rep.epsilon - 92.563).abs() < 1e-3);
        assert!((rep.mse - 0.428).abs() < 1e-3);
        assert!((rep.coding_gain_db - 8.194).abs() < 1e-3);
        assert!((rep.efficiency_pct - 70.646).abs() < 1e-3);
    }

    #[test]
    fn row_permutation_invariance() {
        let c = exact_dct_matrix(16).unwrap();
        let seq = wht_matrix_16();
        let nat = hadamard_matrix_16();
        let m = model();
        // Coding measures only see the multiset of variances.
        assert!((coding_gain_db(&seq, &m).unwrap() - coding_gain_db(&nat, &m).unwrap()).abs() < 1e-12);
        assert!(
            (transform_efficiency_pct(&seq, &m).unwrap() - transform_efficiency_pct(&nat, &m).unwrap()).abs() < 1e-9
        );
        // Error measures only change when the rows are paired differently.
        let order: Vec<usize> = (0..16).rev().collect();
        let cp = OrthonormalTransform::plugin(c.matrix().permute_rows(&order).unwrap()).unwrap();
        let sp = OrthonormalTransform::plugin(seq.matrix().permute_rows(&order).unwrap()).unwrap();
        let e1 = total_error_energy(&seq, &c).unwrap();
        let e2 = total_error_energy(&sp, &cp).unwrap();
        assert!((e1 - e2).abs() < 1e-9);
        let m1 = transform_mse(&seq, &c, &m).unwrap();
        let m2 = transform_mse(&sp, &cp, &m).unwrap();
        assert!((m1 - m2).abs() < 1e-12);
    }

    #[test]
    fn order_mismatch() {
        let c8 = exact_dct_matrix(8).unwrap();
        let c16 = exact_dct_matrix(16).unwrap();
        assert!(total_error_energy(&c8, &c16).is_err());
        assert!(transform_mse(&c8, &c16, &model()).is_err());
        assert!(dct_distortion_d2(&c8, &c16).is_err());
        assert!(coding_gain_db(&c8, &model()).is_err());
    }

    #[test]
    fn complexity_rows() {
        let rows = complexity_table(&TransformRegistry::builtin());
        let get = |n: &str| rows.iter().find(|r| r.name == n).unwrap().clone();
        let p = get("proposed");
        assert_eq!((p.multiplications, p.additions, p.bit_shifts, p.total), (0, 44, 0, 44));
        let w = get("wht");
        assert_eq!((w.multiplications, w.additions, w.bit_shifts, w.total), (0, 64, 0, 64));
        let d = get("dct");
        assert_eq!(
            (d.multiplications, d.additions, d.bit_shifts, d.total),
            (44, 74, 0, 118)
        );
    }
}
