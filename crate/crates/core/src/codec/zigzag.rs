use super::block::{Block, BLOCK};
use crate::{Error, Result};

/// Anti-diagonal scan of an `n×n` block, JPEG style: starts at DC, steps
/// right first, then alternates down-left and up-right diagonals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigZagOrder {
    size: usize,
    sequence: Vec<(usize, usize)>,
}

impl ZigZagOrder {
    pub fn new(size: usize) -> Self {
        let mut sequence = Vec::with_capacity(size * size);
        for s in 0..(2 * size).saturating_sub(1) {
            let lo = s.saturating_sub(size - 1);
            let hi = s.min(size - 1);
            if s % 2 == 0 {
                // up-right: row decreasing
                sequence.extend((lo..=hi).rev().map(|row| (row, s - row)));
            } else {
                sequence.extend((lo..=hi).map(|row| (row, s - row)));
            }
        }
        ZigZagOrder { size, sequence }
    }

    pub fn block() -> Self {
        ZigZagOrder::new(BLOCK)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `(row, col)` positions in scan order.
    pub fn sequence(&self) -> &[(usize, usize)] {
        &self.sequence
    }

    /// 0/1 mask that keeps the first `r` scanned positions.
    pub fn mask(&self, r: usize) -> Result<[[bool; BLOCK]; BLOCK]> {
        if self.size != BLOCK {
            return Err(Error::invalid("mask requires a 16×16 scan"));
        }
        check_r(r)?;
        let mut m = [[false; BLOCK]; BLOCK];
        for &(i, j) in &self.sequence[..r] {
            m[i][j] = true;
        }
        Ok(m)
    }
}

pub(crate) fn check_r(r: usize) -> Result<()> {
    if !(1..=BLOCK * BLOCK).contains(&r) {
        return Err(Error::invalid(format!(
            "retained coefficient count {r} outside 1..=256"
        )));
    }
    Ok(())
}

/// Keeps the first `r` coefficients in scan order and zeroes the rest.
pub fn zigzag_truncate(coeffs: &Block, order: &ZigZagOrder, r: usize) -> Result<Block> {
    let mask = order.mask(r)?;
    Ok(apply_mask(coeffs, &mask))
}

pub(crate) fn apply_mask(coeffs: &Block, mask: &[[bool; BLOCK]; BLOCK]) -> Block {
    let mut out = [[0.0; BLOCK]; BLOCK];
    for i in 0..BLOCK {
        for j in 0..BLOCK {
            if mask[i][j] {
                out[i][j] = coeffs[i][j];
            }
        }
    }
    out
}
