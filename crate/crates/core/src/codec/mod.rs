//! Fixed-rate block compression with 16×16 tiles.
//!
//! Each tile `A` goes through `B = C·A·Cᵀ`, keeps only the first `r`
//! coefficients of a zig-zag scan, and is reconstructed as `Cᵀ·B̃·C`. There is
//! no quantization or entropy coding; the experiment isolates how much
//! energy each transform packs into its leading coefficients.

mod block;
mod image;
mod pipeline;
mod quality;
mod sweep;
mod zigzag;

pub use block::{assemble, forward_2d, inverse_2d, partition_16, Block, Padding, Tiling, TransformPath, BLOCK};
pub use image::{GrayImage, Plane};
pub use pipeline::{compress, Analysis, BlockCodec, CompressionResult};
pub use quality::{gaussian_taps, psnr_db, psnr_from_mse, ssim, SsimReference, SSIM_SIGMA, SSIM_WINDOW};
pub use sweep::{default_r_values, sweep, NamedImage, SkippedImage, SweepReport, SweepRow};
pub use zigzag::{zigzag_truncate, ZigZagOrder};
