//! Multiplier-free evaluation of the integer kernel.
//!
//! The 16×16 kernel factors as `P2·M4·M3·M2·P1·M1`, where each `Mi` is a
//! block-diagonal butterfly built from identity and counter-identity blocks
//! and `P1`, `P2` are permutations given in cycle notation. Stages are stored
//! as add/subtract/copy/negate rules, so the absence of multiplications holds
//! by construction and the addition count is just the number of rules that
//! combine two inputs.

mod cycles;
mod stage;

pub use cycles::parse_cycles;
pub use stage::{ButterflyStage, PermutationStage, Rule, Signal, Stage};

use crate::transform::{proposed_kernel, DiagonalScaling, IntegerKernel};
use crate::{Error, Result};

/// Cycle notation of `P1`.
pub const P1_CYCLES: &str = "(1)(2)(3)(4)(5)(6)(7)(8)(9)(10 12 16 10)(11 13 15 11)(14)";
/// Cycle notation of `P2`.
pub const P2_CYCLES: &str = "(1)(2 9)(3 8 16 15 5 4 12 11 7 6 10 14 13 3)";

/// Arithmetic cost of a transform's integer part.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct OpCount {
    pub additions: usize,
    pub multiplications: usize,
    pub bit_shifts: usize,
}

impl OpCount {
    pub const fn new(additions: usize, multiplications: usize, bit_shifts: usize) -> Self {
        OpCount {
            additions,
            multiplications,
            bit_shifts,
        }
    }

    pub fn total(&self) -> usize {
        self.additions + self.multiplications + self.bit_shifts
    }
}

impl std::ops::Add for OpCount {
    type Output = OpCount;
    fn add(self, rhs: OpCount) -> OpCount {
        OpCount::new(
            self.additions + rhs.additions,
            self.multiplications + rhs.multiplications,
            self.bit_shifts + rhs.bit_shifts,
        )
    }
}

/// A stage with a display label such as `"M1"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledStage {
    pub label: String,
    pub stage: Stage,
}

/// Ordered stage pipeline, applied input-to-output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizedTransform {
    order: usize,
    stages: Vec<LabeledStage>,
}

impl FactorizedTransform {
    pub fn new(stages: Vec<LabeledStage>) -> Result<Self> {
        let order = stages
            .first()
            .map(|s| s.stage.order())
            .ok_or_else(|| Error::invalid("a factorization needs at least one stage"))?;
        if let Some(s) = stages.iter().find(|s| s.stage.order() != order) {
            return Err(Error::invalid(format!(
                "stage {} has order {}, expected {order}",
                s.label,
                s.stage.order()
            )));
        }
        Ok(FactorizedTransform { order, stages })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn stages(&self) -> &[LabeledStage] {
        &self.stages
    }

    pub fn stage(&self, label: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.label == label).map(|s| &s.stage)
    }

    /// Evaluates the pipeline on one vector.
    pub fn apply<T: Signal>(&self, x: &[T]) -> Result<Vec<T>> {
        self.check_len(x.len())?;
        Ok(self.stages.iter().fold(x.to_vec(), |v, s| s.stage.apply(&v)))
    }

    /// Evaluates the transposed pipeline (stages reversed and transposed).
    pub fn apply_transpose<T: Signal>(&self, x: &[T]) -> Result<Vec<T>> {
        self.transpose()?.apply(x)
    }

    pub fn transpose(&self) -> Result<FactorizedTransform> {
        let stages = self
            .stages
            .iter()
            .rev()
            .map(|s| {
                Ok(LabeledStage {
                    label: format!("{}ᵀ", s.label),
                    stage: s.stage.transpose()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        FactorizedTransform::new(stages)
    }

    pub fn count_ops(&self) -> OpCount {
        OpCount::new(self.stages.iter().map(|s| s.stage.additions()).sum(), 0, 0)
    }

    /// The linear map of the whole pipeline as an integer kernel.
    pub fn compose(&self) -> IntegerKernel {
        let product = compose_stages(self.order, self.stages.iter().map(|s| &s.stage));
        let entries = product
            .iter()
            .map(|&e| i32::try_from(e).expect("small entries"))
            .collect();
        IntegerKernel::new(self.order, entries).expect("square")
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.order {
            return Err(Error::invalid(format!(
                "input of length {len} for a {}-point transform",
                self.order
            )));
        }
        Ok(())
    }
}

fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik != 0 {
                for j in 0..n {
                    out[i * n + j] += aik * b[k * n + j];
                }
            }
        }
    }
    out
}

/// Product `S_last · … · S_first` of stages listed in application order.
fn compose_stages<'a>(n: usize, stages: impl Iterator<Item = &'a Stage>) -> Vec<i64> {
    let mut acc: Vec<i64> = (0..n * n).map(|k| i64::from(k / n == k % n)).collect();
    for s in stages {
        acc = mat_mul(n, &s.to_matrix(), &acc);
    }
    acc
}

fn identity(n: usize) -> Vec<Vec<i32>> {
    (0..n).map(|i| (0..n).map(|j| i32::from(i == j)).collect()).collect()
}

fn neg_identity(n: usize) -> Vec<Vec<i32>> {
    (0..n).map(|i| (0..n).map(|j| -i32::from(i == j)).collect()).collect()
}

/// `[[I, Ī], [Ī, −I]]` of order `n`.
fn butterfly(n: usize) -> Vec<Vec<i32>> {
    let h = n / 2;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match (i < h, j < h) {
                    (true, true) => i32::from(i == j),
                    (true, false) => i32::from(j == n - 1 - i),
                    (false, true) => i32::from(i + j == n - 1),
                    (false, false) => -i32::from(i == j),
                })
                .collect()
        })
        .collect()
}

fn butterfly_stage(label: &str, blocks: &[Vec<Vec<i32>>]) -> Result<LabeledStage> {
    Ok(LabeledStage {
        label: label.to_string(),
        stage: Stage::Butterfly(ButterflyStage::block_diagonal(blocks)?),
    })
}

/// `M1, P1, M2, M3, M4` in application order.
pub fn proposed_partial_stages() -> Result<Vec<LabeledStage>> {
    Ok(vec![
        butterfly_stage("M1", &[butterfly(16)])?,
        LabeledStage {
            label: "P1".into(),
            stage: Stage::Permutation(parse_cycles(P1_CYCLES, 16)?),
        },
        butterfly_stage("M2", &[butterfly(8), butterfly(8)])?,
        butterfly_stage("M3", &[butterfly(4), neg_identity(4), butterfly(4), neg_identity(4)])?,
        butterfly_stage(
            "M4",
            &[
                vec![vec![1, 1, 0], vec![1, -1, 0], vec![0, 0, -1]],
                identity(4),
                vec![vec![-1, 0, 0], vec![0, 1, 1], vec![0, 1, -1]],
                neg_identity(4),
                vec![vec![1, 0], vec![0, -1]],
            ],
        )?,
    ])
}

/// The six-stage fast algorithm for [`proposed_kernel`].
///
/// The composed map is checked against the literal kernel; a mismatch means
/// a stage was transcribed wrongly and is reported as
/// [`Error::FactorizationMismatch`].
pub fn build_proposed_factorization() -> Result<FactorizedTransform> {
    let mut stages = proposed_partial_stages()?;
    stages.push(LabeledStage {
        label: "P2".into(),
        stage: Stage::Permutation(parse_cycles(P2_CYCLES, 16)?),
    });
    let ft = FactorizedTransform::new(stages)?;
    let composed = ft.compose();
    let target = proposed_kernel();
    if composed != target {
        let (i, j) = (0..256)
            .map(|k| (k / 16, k % 16))
            .find(|&(i, j)| composed.entry(i, j) != target.entry(i, j))
            .expect("kernels differ somewhere");
        return Err(Error::FactorizationMismatch(format!(
            "entry ({i}, {j}) is {} but the kernel has {}",
            composed.entry(i, j),
            target.entry(i, j)
        )));
    }
    Ok(ft)
}

/// Determinant-free nonsingularity test by fraction-free elimination.
fn is_nonsingular(n: usize, m: &[i64]) -> bool {
    let mut a: Vec<i128> = m.iter().map(|&v| v as i128).collect();
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| a[r * n + k] != 0) else {
            return false;
        };
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
            }
            a[i * n + k] = 0;
        }
        prev = a[k * n + k];
    }
    true
}

/// Solves `R · (S_last · … · S_first) = target` for `R` and returns it if it
/// is a permutation.
///
/// This fixes the final permutation of a factorization from the kernel and
/// the other stages alone.
pub fn derive_residual_permutation(target: &IntegerKernel, partial: &[LabeledStage]) -> Result<PermutationStage> {
    let n = target.order();
    if let Some(s) = partial.iter().find(|s| s.stage.order() != n) {
        return Err(Error::invalid(format!("stage {} does not have order {n}", s.label)));
    }
    let a = compose_stages(n, partial.iter().map(|s| &s.stage));
    if !is_nonsingular(n, &a) {
        return Err(Error::InconsistentFactorization("partial stages are singular".into()));
    }
    // With A invertible, R·A = T has exactly one solution; it is a permutation
    // iff every row of T is a distinct row of A.
    let mut mapping = Vec::with_capacity(n);
    let mut used = vec![false; n];
    for i in 0..n {
        let t_row: Vec<i64> = target.row(i).iter().map(|&v| v as i64).collect();
        let found = (0..n).find(|&j| !used[j] && a[j * n..(j + 1) * n] == t_row[..]);
        match found {
            Some(j) => {
                used[j] = true;
                mapping.push(j);
            }
            None => {
                let negated = (0..n).any(|j| a[j * n..(j + 1) * n].iter().zip(&t_row).all(|(x, y)| *x == -y));
                let detail = if negated { " (it matches a negated row)" } else { "" };
                return Err(Error::InconsistentFactorization(format!(
                    "kernel row {i} is not a row of the partial product{detail}"
                )));
            }
        }
    }
    PermutationStage::new(mapping)
}

/// Integer kernel evaluated through a factorization, followed by a diagonal
/// scaling: `diag(S)·K·x`.
#[derive(Clone, Debug)]
pub struct ScaledFastTransform {
    forward: FactorizedTransform,
    transposed: FactorizedTransform,
    scaling: DiagonalScaling,
}

impl ScaledFastTransform {
    pub fn new(forward: FactorizedTransform, scaling: DiagonalScaling) -> Result<Self> {
        if scaling.order() != forward.order() {
            return Err(Error::invalid("scaling order differs from factorization order"));
        }
        let transposed = forward.transpose()?;
        Ok(ScaledFastTransform {
            forward,
            transposed,
            scaling,
        })
    }

    pub fn order(&self) -> usize {
        self.forward.order()
    }

    pub fn factorization(&self) -> &FactorizedTransform {
        &self.forward
    }

    pub fn scaling(&self) -> &DiagonalScaling {
        &self.scaling
    }

    /// `diag(S)·K·x`
    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut y = self.forward.apply(x)?;
        for (v, s) in y.iter_mut().zip(self.scaling.values()) {
            *v *= s;
        }
        Ok(y)
    }

    /// `Kᵀ·diag(S)·y`, the inverse of [`Self::forward`].
    pub fn inverse(&self, y: &[f64]) -> Result<Vec<f64>> {
        self.forward.check_len(y.len())?;
        let scaled: Vec<f64> = y.iter().zip(self.scaling.values()).map(|(v, s)| v * s).collect();
        self.transposed.apply(&scaled)
    }

    pub(crate) fn kernel_forward(&self, x: &[f64]) -> Vec<f64> {
        self.forward.apply(x).expect("length checked by caller")
    }

    pub(crate) fn kernel_transpose(&self, x: &[f64]) -> Vec<f64> {
        self.transposed.apply(x).expect("length checked by caller")
    }
}
