use std::sync::Arc;

use super::kernel::proposed_kernel;
use super::orthonormal::{exact_dct_matrix, hadamard_matrix_16, orthogonalize, OrthonormalTransform};
use crate::fast::{build_proposed_factorization, FactorizedTransform, OpCount};
use crate::{Error, Result};

pub const DCT: &str = "dct";
pub const WHT: &str = "wht";
pub const PROPOSED: &str = "proposed";

/// A named transform with its declared arithmetic cost.
///
/// `fast` optionally carries a multiplier-free factorization of the integer
/// kernel; the block codec uses it in place of the dense matrix.
#[derive(Clone, Debug)]
pub struct TransformRegistryEntry {
    pub name: String,
    pub transform: OrthonormalTransform,
    pub cost: OpCount,
    pub fast: Option<Arc<FactorizedTransform>>,
}

impl TransformRegistryEntry {
    pub fn new(name: impl Into<String>, transform: OrthonormalTransform, cost: OpCount) -> Self {
        TransformRegistryEntry {
            name: name.into(),
            transform,
            cost,
            fast: None,
        }
    }

    /// Attaches a fast path. The factorization must compose to the entry's kernel.
    pub fn with_fast_path(mut self, fast: FactorizedTransform) -> Result<Self> {
        let kernel = self
            .transform
            .kernel()
            .ok_or_else(|| Error::invalid(format!("transform `{}` has no integer kernel", self.name)))?;
        if &fast.compose() != kernel {
            return Err(Error::FactorizationMismatch(format!(
                "fast path does not compose to the kernel of `{}`",
                self.name
            )));
        }
        self.fast = Some(Arc::new(fast));
        Ok(self)
    }
}

#[derive(Clone, Debug, Default)]
pub struct TransformRegistry {
    entries: Vec<TransformRegistryEntry>,
}

impl TransformRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Exact DCT, natural-order WHT and the proposed approximation, with the
    /// costs of the complexity comparison (Chen's algorithm for the DCT).
    pub fn builtin() -> Self {
        let mut reg = TransformRegistry::new();
        let dct = exact_dct_matrix(16).expect("order 16 is valid");
        reg.register(TransformRegistryEntry::new(DCT, dct, OpCount::new(74, 44, 0)))
            .expect("unique");
        reg.register(TransformRegistryEntry::new(
            WHT,
            hadamard_matrix_16(),
            OpCount::new(64, 0, 0),
        ))
        .expect("unique");
        let proposed = orthogonalize(&proposed_kernel()).expect("proposed kernel is orthogonal");
        let fast = build_proposed_factorization().expect("factorization self-check");
        let cost = fast.count_ops();
        let entry = TransformRegistryEntry::new(PROPOSED, proposed, cost)
            .with_fast_path(fast)
            .expect("fast path matches kernel");
        reg.register(entry).expect("unique");
        reg
    }

    pub fn register(&mut self, entry: TransformRegistryEntry) -> Result<()> {
        if self.get(&entry.name).is_some() {
            return Err(Error::DuplicateTransform(entry.name));
        }
        self.entries.push(entry);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&TransformRegistryEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn require(&self, name: &str) -> Result<&TransformRegistryEntry> {
        self.get(name).ok_or_else(|| Error::UnknownTransform(name.to_string()))
    }

    pub fn entries(&self) -> &[TransformRegistryEntry] {
        &self.entries
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.name.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Keeps only the named entries, in the order given.
    pub fn select(&self, names: &[String]) -> Result<TransformRegistry> {
        let mut out = TransformRegistry::new();
        for n in names {
            out.register(self.require(n)?.clone())?;
        }
        Ok(out)
    }
}
