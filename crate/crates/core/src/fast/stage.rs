use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::{Error, Result};

/// Sample types a multiplier-free stage can operate on.
pub trait Signal: Copy + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self> {}

impl<T> Signal for T where T: Copy + Add<Output = T> + Sub<Output = T> + Neg<Output = T> {}

/// How one output slot of a butterfly stage is produced from the stage input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Copy(usize),
    Negate(usize),
    Add(usize, usize),
    /// `input[a] − input[b]`
    Subtract(usize, usize),
}

impl Rule {
    fn sources(&self) -> impl Iterator<Item = (usize, i64)> {
        let (a, b) = match *self {
            Rule::Copy(s) => ((s, 1), None),
            Rule::Negate(s) => ((s, -1), None),
            Rule::Add(x, y) => ((x, 1), Some((y, 1))),
            Rule::Subtract(x, y) => ((x, 1), Some((y, -1))),
        };
        std::iter::once(a).chain(b)
    }

    fn is_addition(&self) -> bool {
        matches!(self, Rule::Add(..) | Rule::Subtract(..))
    }

    /// Builds the rule for a sparse row given as `(input, ±1)` terms.
    fn from_terms(terms: &[(usize, i64)]) -> Option<Rule> {
        match *terms {
            [(s, 1)] => Some(Rule::Copy(s)),
            [(s, -1)] => Some(Rule::Negate(s)),
            [(a, 1), (b, 1)] => Some(Rule::Add(a, b)),
            [(a, 1), (b, -1)] => Some(Rule::Subtract(a, b)),
            [(a, -1), (b, 1)] => Some(Rule::Subtract(b, a)),
            _ => None,
        }
    }

    fn eval<T: Signal>(&self, x: &[T]) -> T {
        match *self {
            Rule::Copy(s) => x[s],
            Rule::Negate(s) => -x[s],
            Rule::Add(a, b) => x[a] + x[b],
            Rule::Subtract(a, b) => x[a] - x[b],
        }
    }
}

/// One sparse stage: every output slot is a copy, a negation, a sum or a
/// difference of input slots. Rules only read the stage input, never other
/// outputs of the same stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ButterflyStage {
    rules: Vec<Rule>,
}

impl ButterflyStage {
    pub fn new(rules: Vec<Rule>) -> Result<Self> {
        let n = rules.len();
        for (slot, rule) in rules.iter().enumerate() {
            for (src, _) in rule.sources() {
                if src >= n {
                    return Err(Error::invalid(format!(
                        "rule for slot {slot} reads input {src}, outside order {n}"
                    )));
                }
            }
            if let Rule::Add(a, b) | Rule::Subtract(a, b) = *rule {
                if a == b {
                    return Err(Error::invalid(format!("rule for slot {slot} reads input {a} twice")));
                }
            }
        }
        Ok(ButterflyStage { rules })
    }

    /// Converts a sparse {−1, 0, +1} matrix (row-major) into rules.
    ///
    /// Fails when a row has no nonzero entry, more than two, an entry outside
    /// {−1, 0, +1}, or two negative entries (which would need a negation on
    /// top of the addition).
    pub fn from_matrix(order: usize, entries: &[i32]) -> Result<Self> {
        if entries.len() != order * order {
            return Err(Error::invalid("stage matrix has the wrong number of entries"));
        }
        let mut rules = Vec::with_capacity(order);
        for i in 0..order {
            let terms: Vec<(usize, i64)> = entries[i * order..(i + 1) * order]
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(j, &e)| (j, e as i64))
                .collect();
            let rule = Rule::from_terms(&terms)
                .ok_or_else(|| Error::invalid(format!("row {i} ({terms:?}) is not a single add/subtract/copy")))?;
            rules.push(rule);
        }
        ButterflyStage::new(rules)
    }

    /// Block-diagonal stage assembled from square blocks.
    pub fn block_diagonal(blocks: &[Vec<Vec<i32>>]) -> Result<Self> {
        let order: usize = blocks.iter().map(Vec::len).sum();
        let mut entries = vec![0; order * order];
        let mut offset = 0;
        for block in blocks {
            let k = block.len();
            for (i, row) in block.iter().enumerate() {
                if row.len() != k {
                    return Err(Error::invalid("stage blocks must be square"));
                }
                for (j, &e) in row.iter().enumerate() {
                    entries[(offset + i) * order + offset + j] = e;
                }
            }
            offset += k;
        }
        ButterflyStage::from_matrix(order, &entries)
    }

    pub fn order(&self) -> usize {
        self.rules.len()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn additions(&self) -> usize {
        self.rules.iter().filter(|r| r.is_addition()).count()
    }

    pub fn apply<T: Signal>(&self, x: &[T]) -> Vec<T> {
        self.rules.iter().map(|r| r.eval(x)).collect()
    }

    /// Row-major integer matrix of the stage.
    pub fn to_matrix(&self) -> Vec<i64> {
        let n = self.order();
        let mut m = vec![0; n * n];
        for (i, rule) in self.rules.iter().enumerate() {
            for (src, coef) in rule.sources() {
                m[i * n + src] += coef;
            }
        }
        m
    }

    /// The transposed stage.
    ///
    /// Only possible when every input slot is read by one or two rules.
    pub fn transpose(&self) -> Result<ButterflyStage> {
        let n = self.order();
        let mut columns: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
        for (i, rule) in self.rules.iter().enumerate() {
            for (src, coef) in rule.sources() {
                columns[src].push((i, coef));
            }
        }
        let rules = columns
            .iter()
            .enumerate()
            .map(|(j, terms)| {
                Rule::from_terms(terms)
                    .ok_or_else(|| Error::invalid(format!("column {j} ({terms:?}) has no multiplier-free transpose")))
            })
            .collect::<Result<Vec<_>>>()?;
        ButterflyStage::new(rules)
    }
}

/// Reorders slots: output `i` takes input `mapping[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationStage {
    mapping: Vec<usize>,
}

impl PermutationStage {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; mapping.len()];
        for &m in &mapping {
            if m >= mapping.len() || std::mem::replace(&mut seen[m], true) {
                return Err(Error::invalid(format!("{mapping:?} is not a bijection")));
            }
        }
        Ok(PermutationStage { mapping })
    }

    pub fn identity(order: usize) -> Self {
        PermutationStage {
            mapping: (0..order).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.mapping.len()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &m)| i == m)
    }

    pub fn apply<T: Copy>(&self, x: &[T]) -> Vec<T> {
        self.mapping.iter().map(|&m| x[m]).collect()
    }

    pub fn inverse(&self) -> PermutationStage {
        let mut inv = vec![0; self.mapping.len()];
        for (i, &m) in self.mapping.iter().enumerate() {
            inv[m] = i;
        }
        PermutationStage { mapping: inv }
    }

    pub fn to_matrix(&self) -> Vec<i64> {
        let n = self.order();
        let mut m = vec![0; n * n];
        for (i, &src) in self.mapping.iter().enumerate() {
            m[i * n + src] = 1;
        }
        m
    }

    /// Cycle notation over 1-based indices, fixed points included.
    pub fn to_cycles(&self) -> String {
        let mut done = vec![false; self.order()];
        let mut out = String::new();
        for start in 0..self.order() {
            if done[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !done[i] {
                done[i] = true;
                cycle.push((i + 1).to_string());
                i = self.mapping[i];
            }
            out.push('(');
            out.push_str(&cycle.join(" "));
            out.push(')');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stage {
    Butterfly(ButterflyStage),
    Permutation(PermutationStage),
}

impl Stage {
    pub fn order(&self) -> usize {
        match self {
            Stage::Butterfly(b) => b.order(),
            Stage::Permutation(p) => p.order(),
        }
    }

    pub fn additions(&self) -> usize {
        match self {
            Stage::Butterfly(b) => b.additions(),
            Stage::Permutation(_) => 0,
        }
    }

    pub fn apply<T: Signal>(&self, x: &[T]) -> Vec<T> {
        match self {
            Stage::Butterfly(b) => b.apply(x),
            Stage::Permutation(p) => p.apply(x),
        }
    }

    pub fn to_matrix(&self) -> Vec<i64> {
        match self {
            Stage::Butterfly(b) => b.to_matrix(),
            Stage::Permutation(p) => p.to_matrix(),
        }
    }

    pub fn transpose(&self) -> Result<Stage> {
        Ok(match self {
            Stage::Butterfly(b) => Stage::Butterfly(b.transpose()?),
            Stage::Permutation(p) => Stage::Permutation(p.inverse()),
        })
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stage::Butterfly(b) => write!(f, "butterfly({} additions)", b.additions()),
            Stage::Permutation(p) => write!(f, "permutation{}", p.to_cycles()),
        }
    }
}
