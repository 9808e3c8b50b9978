use rayon::prelude::*;

use super::block::{assemble, forward_2d, inverse_2d, partition_16, Block, Padding, Tiling, TransformPath};
use super::image::{GrayImage, Plane};
use super::quality::{psnr_db, SsimReference};
use super::zigzag::{apply_mask, ZigZagOrder};
use crate::Result;

#[derive(Clone, Debug)]
pub struct CompressionResult {
    pub r: usize,
    pub reconstructed: GrayImage,
    /// `f64::INFINITY` when the reconstruction is exact.
    pub psnr_db: f64,
    pub ssim: f64,
}

/// Fixed-rate block codec: forward 2-D transform, keep the first `r`
/// zig-zag coefficients of every block, inverse transform.
#[derive(Clone, Debug)]
pub struct BlockCodec {
    path: TransformPath,
    zigzag: ZigZagOrder,
    padding: Padding,
}

/// Forward coefficients of every block of one image, ready to be truncated
/// at any number of retained coefficients.
pub struct Analysis<'a> {
    codec: &'a BlockCodec,
    tiling: Tiling,
    coeffs: Vec<Block>,
}

impl BlockCodec {
    pub fn new(path: TransformPath) -> Self {
        BlockCodec {
            path,
            zigzag: ZigZagOrder::block(),
            padding: Padding::Reject,
        }
    }

    pub fn with_padding(mut self, padding: Padding) -> Self {
        self.padding = padding;
        self
    }

    pub fn path(&self) -> &TransformPath {
        &self.path
    }

    pub fn analyze(&self, image: &GrayImage) -> Result<Analysis<'_>> {
        let tiling = Tiling::new(image.width(), image.height(), self.padding)?;
        let blocks = partition_16(image, self.padding)?;
        let coeffs = blocks.par_iter().map(|b| forward_2d(b, &self.path)).collect();
        Ok(Analysis {
            codec: self,
            tiling,
            coeffs,
        })
    }

    /// Reconstruction before rounding to 8 bits.
    pub fn reconstruct(&self, image: &GrayImage, r: usize) -> Result<Plane> {
        self.analyze(image)?.reconstruct(r)
    }

    pub fn compress(&self, image: &GrayImage, r: usize) -> Result<CompressionResult> {
        let reference = SsimReference::new(image)?;
        self.analyze(image)?.score(r, &reference)
    }
}

impl Analysis<'_> {
    pub fn coefficients(&self) -> &[Block] {
        &self.coeffs
    }

    pub fn reconstruct(&self, r: usize) -> Result<Plane> {
        let mask = self.codec.zigzag.mask(r)?;
        let path = &self.codec.path;
        let blocks: Vec<Block> = self
            .coeffs
            .par_iter()
            .map(|c| inverse_2d(&apply_mask(c, &mask), path))
            .collect();
        assemble(&blocks, &self.tiling)
    }

    /// Reconstructs, rounds and scores against `reference`.
    pub fn score(&self, r: usize, reference: &SsimReference) -> Result<CompressionResult> {
        let reconstructed = self.reconstruct(r)?.to_gray();
        Ok(CompressionResult {
            r,
            psnr_db: psnr_db(reference.image(), &reconstructed)?,
            ssim: reference.compare(&reconstructed)?,
            reconstructed,
        })
    }
}

/// Single-shot compression with a given evaluation path.
pub fn compress(image: &GrayImage, path: &TransformPath, r: usize) -> Result<CompressionResult> {
    BlockCodec::new(path.clone()).compress(image, r)
}
