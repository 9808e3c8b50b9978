use super::image::{GrayImage, Plane};
use crate::fast::ScaledFastTransform;
use crate::linalg::Matrix;
use crate::transform::{OrthonormalTransform, TransformRegistryEntry};
use crate::{Error, Result};

pub const BLOCK: usize = 16;

/// A 16×16 tile, indexed `[row][col]`.
pub type Block = [[f64; BLOCK]; BLOCK];

/// What to do with images whose sides are not multiples of 16.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Padding {
    #[default]
    Reject,
    /// Replicate the last row/column out to the next multiple of 16; the
    /// reconstruction is cropped back afterwards.
    Replicate,
}

/// How a 16-point transform is evaluated on a block.
#[derive(Clone, Debug)]
pub enum TransformPath {
    /// `M·A·Mᵀ` with the dense orthonormal matrix.
    Dense(Matrix),
    /// Integer kernel through its factorization, then `S` on rows and columns.
    Fast(ScaledFastTransform),
}

impl TransformPath {
    pub fn dense(t: &OrthonormalTransform) -> Result<Self> {
        if t.order() != BLOCK {
            return Err(Error::invalid(format!(
                "block transform must have order {BLOCK}, got {}",
                t.order()
            )));
        }
        Ok(TransformPath::Dense(t.matrix().clone()))
    }

    /// Fast path when the entry has one, dense otherwise.
    pub fn for_entry(entry: &TransformRegistryEntry) -> Result<Self> {
        match (&entry.fast, entry.transform.scaling()) {
            (Some(fast), Some(scaling)) => {
                if fast.order() != BLOCK {
                    return Err(Error::invalid("fast path must be 16-point"));
                }
                Ok(TransformPath::Fast(ScaledFastTransform::new(
                    (**fast).clone(),
                    scaling.clone(),
                )?))
            }
            _ => TransformPath::dense(&entry.transform),
        }
    }
}

fn dense_rows(m: &Matrix, rows: &Block, transpose: bool) -> Block {
    // Applies M (or Mᵀ) to each row of `rows`, treating rows as vectors.
    let mut out = [[0.0; BLOCK]; BLOCK];
    for (r, row) in rows.iter().enumerate() {
        for k in 0..BLOCK {
            let mut acc = 0.0;
            for (n, v) in row.iter().enumerate() {
                let coef = if transpose { m[(n, k)] } else { m[(k, n)] };
                acc += coef * v;
            }
            out[r][k] = acc;
        }
    }
    out
}

fn transpose(b: &Block) -> Block {
    let mut t = [[0.0; BLOCK]; BLOCK];
    for i in 0..BLOCK {
        for j in 0..BLOCK {
            t[j][i] = b[i][j];
        }
    }
    t
}

fn map_rows(b: &Block, f: impl Fn(&[f64]) -> Vec<f64>) -> Block {
    let mut out = [[0.0; BLOCK]; BLOCK];
    for (o, row) in out.iter_mut().zip(b) {
        o.copy_from_slice(&f(row));
    }
    out
}

/// `B = M·A·Mᵀ`.
pub fn forward_2d(block: &Block, path: &TransformPath) -> Block {
    match path {
        TransformPath::Dense(m) => {
            // (M·A·Mᵀ) = ((A·Mᵀ)ᵀ·Mᵀ)ᵀ, two passes of "M times each row".
            let pass = dense_rows(m, block, false);
            transpose(&dense_rows(m, &transpose(&pass), false))
        }
        TransformPath::Fast(fast) => {
            let pass = map_rows(block, |r| fast.kernel_forward(r));
            let y = transpose(&map_rows(&transpose(&pass), |r| fast.kernel_forward(r)));
            let s = fast.scaling().values();
            let mut out = y;
            for i in 0..BLOCK {
                for j in 0..BLOCK {
                    out[i][j] *= s[i] * s[j];
                }
            }
            out
        }
    }
}

/// `A = Mᵀ·B·M`.
pub fn inverse_2d(coeffs: &Block, path: &TransformPath) -> Block {
    match path {
        TransformPath::Dense(m) => {
            let pass = dense_rows(m, coeffs, true);
            transpose(&dense_rows(m, &transpose(&pass), true))
        }
        TransformPath::Fast(fast) => {
            let s = fast.scaling().values();
            let mut z = *coeffs;
            for i in 0..BLOCK {
                for j in 0..BLOCK {
                    z[i][j] *= s[i] * s[j];
                }
            }
            let pass = map_rows(&z, |r| fast.kernel_transpose(r));
            transpose(&map_rows(&transpose(&pass), |r| fast.kernel_transpose(r)))
        }
    }
}

/// Block grid of an image after the padding policy is applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tiling {
    pub width: usize,
    pub height: usize,
    pub blocks_x: usize,
    pub blocks_y: usize,
}

impl Tiling {
    pub fn new(width: usize, height: usize, padding: Padding) -> Result<Self> {
        let aligned = width.is_multiple_of(BLOCK) && height.is_multiple_of(BLOCK);
        if !aligned && padding == Padding::Reject {
            return Err(Error::InvalidDimensions {
                width,
                height,
                block: BLOCK,
            });
        }
        Ok(Tiling {
            width,
            height,
            blocks_x: width.div_ceil(BLOCK),
            blocks_y: height.div_ceil(BLOCK),
        })
    }

    pub fn block_count(&self) -> usize {
        self.blocks_x * self.blocks_y
    }
}

/// Disjoint 16×16 tiles in raster order.
pub fn partition_16(image: &GrayImage, padding: Padding) -> Result<Vec<Block>> {
    let tiling = Tiling::new(image.width(), image.height(), padding)?;
    let mut blocks = Vec::with_capacity(tiling.block_count());
    for by in 0..tiling.blocks_y {
        for bx in 0..tiling.blocks_x {
            let mut b = [[0.0; BLOCK]; BLOCK];
            for (i, row) in b.iter_mut().enumerate() {
                let y = (by * BLOCK + i).min(image.height() - 1);
                for (j, v) in row.iter_mut().enumerate() {
                    let x = (bx * BLOCK + j).min(image.width() - 1);
                    *v = image.get(x, y) as f64;
                }
            }
            blocks.push(b);
        }
    }
    Ok(blocks)
}

/// Inverse of [`partition_16`]; padded samples are dropped.
pub fn assemble(blocks: &[Block], tiling: &Tiling) -> Result<Plane> {
    if blocks.len() != tiling.block_count() {
        return Err(Error::invalid(format!(
            "{} blocks for a grid of {}",
            blocks.len(),
            tiling.block_count()
        )));
    }
    let mut data = vec![0.0; tiling.width * tiling.height];
    for (k, b) in blocks.iter().enumerate() {
        let (bx, by) = (k % tiling.blocks_x, k / tiling.blocks_x);
        for (i, row) in b.iter().enumerate() {
            let y = by * BLOCK + i;
            if y >= tiling.height {
                break;
            }
            for (j, &v) in row.iter().enumerate() {
                let x = bx * BLOCK + j;
                if x < tiling.width {
                    data[y * tiling.width + x] = v;
                }
            }
        }
    }
    Ok(Plane {
        width: tiling.width,
        height: tiling.height,
        data,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::{exact_dct_matrix, orthogonalize, proposed_kernel, TransformRegistry, PROPOSED};

    fn ramp() -> Block {
        let mut b = [[0.0; BLOCK]; BLOCK];
        for (i, row) in b.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = ((i * 37 + j * 11) % 256) as f64;
            }
        }
        b
    }

    fn dense_oracle(m: &Matrix, a: &Block) -> Block {
        let am = Matrix::from_fn(16, 16, |i, j| a[i][j]);
        let b = m.mul(&am).unwrap().mul(&m.transpose()).unwrap();
        let mut out = [[0.0; 16]; 16];
        for i in 0..16 {
            for j in 0..16 {
                out[i][j] = b[(i, j)];
            }
        }
        out
    }

    fn max_diff(a: &Block, b: &Block) -> f64 {
        a.iter()
            .flatten()
            .zip(b.iter().flatten())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn constant_block_has_only_dc() {
        let reg = TransformRegistry::builtin();
        let a = [[128.0; BLOCK]; BLOCK];
        for path in [
            TransformPath::for_entry(reg.require(PROPOSED).unwrap()).unwrap(),
            TransformPath::dense(&orthogonalize(&proposed_kernel()).unwrap()).unwrap(),
        ] {
            let b = forward_2d(&a, &path);
            assert!((b[0][0] - 2048.0).abs() < 1e-9);
            for (k, v) in b.iter().flatten().enumerate().skip(1) {
                assert!(v.abs() < 1e-9, "coefficient {k} = {v}");
            }
        }
        let zero = [[0.0; BLOCK]; BLOCK];
        let dct = TransformPath::dense(&exact_dct_matrix(16).unwrap()).unwrap();
        assert_eq!(forward_2d(&zero, &dct), zero);
    }

    #[test]
    fn separable_product_matches_oracle() {
        let a = ramp();
        let c = exact_dct_matrix(16).unwrap();
        let path = TransformPath::dense(&c).unwrap();
        assert!(max_diff(&forward_2d(&a, &path), &dense_oracle(c.matrix(), &a)) < 1e-9);

        let p = orthogonalize(&proposed_kernel()).unwrap();
        let fast = TransformPath::for_entry(TransformRegistry::builtin().require(PROPOSED).unwrap()).unwrap();
        assert!(matches!(fast, TransformPath::Fast(_)));
        assert!(max_diff(&forward_2d(&a, &fast), &dense_oracle(p.matrix(), &a)) < 1e-9);
    }

    #[test]
    fn round_trip() {
        let a = ramp();
        let reg = TransformRegistry::builtin();
        for e in reg.entries() {
            let path = TransformPath::for_entry(e).unwrap();
            let back = inverse_2d(&forward_2d(&a, &path), &path);
            assert!(max_diff(&a, &back) < 1e-9, "{}", e.name);
        }
    }

    #[test]
    fn wrong_order_rejected() {
        assert!(TransformPath::dense(&exact_dct_matrix(8).unwrap()).is_err());
    }

    #[test]
    fn partition_counts() {
        let img = GrayImage::filled(512, 512, 7).unwrap();
        assert_eq!(partition_16(&img, Padding::Reject).unwrap().len(), 1024);
        let small = GrayImage::from_fn(16, 16, |x, y| (x * 16 + y) as u8).unwrap();
        let blocks = partition_16(&small, Padding::Reject).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0][3][5], small.get(5, 3) as f64);
        let odd = GrayImage::filled(17, 16, 0).unwrap();
        assert!(matches!(
            partition_16(&odd, Padding::Reject),
            Err(Error::InvalidDimensions { .. })
        ));
        assert_eq!(partition_16(&odd, Padding::Replicate).unwrap().len(), 2);
    }

    #[test]
    fn partition_assemble_round_trip() {
        let img = GrayImage::from_fn(40, 20, |x, y| (x * 5 + y * 3) as u8).unwrap();
        let tiling = Tiling::new(40, 20, Padding::Replicate).unwrap();
        let blocks = partition_16(&img, Padding::Replicate).unwrap();
        assert_eq!(blocks.len(), 6);
        // Replicated edge.
        assert_eq!(blocks[2][0][15], img.get(39, 0) as f64);
        assert_eq!(assemble(&blocks, &tiling).unwrap().to_gray(), img);
    }
}
