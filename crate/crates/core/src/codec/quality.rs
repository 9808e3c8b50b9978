//! PSNR and SSIM for 8-bit grayscale images.
//!
//! SSIM follows the reference formulation: an 11×11 Gaussian window with
//! σ = 1.5, K1 = 0.01, K2 = 0.03, L = 255, evaluated at every position where
//! the window fits inside the image, and averaged.

use super::image::GrayImage;
use crate::{Error, Result};

pub const SSIM_WINDOW: usize = 11;
pub const SSIM_SIGMA: f64 = 1.5;
const K1: f64 = 0.01;
const K2: f64 = 0.03;
const PEAK: f64 = 255.0;

fn check_pair(a: &GrayImage, b: &GrayImage) -> Result<()> {
    if !a.same_dimensions(b) {
        return Err(Error::invalid(format!(
            "image dimensions differ: {}×{} vs {}×{}",
            a.width(),
            a.height(),
            b.width(),
            b.height()
        )));
    }
    Ok(())
}

/// `10·log₁₀(255²/MSE)`; identical images give `f64::INFINITY`.
pub fn psnr_db(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    check_pair(a, b)?;
    let sse: u64 = a
        .samples()
        .iter()
        .zip(b.samples())
        .map(|(&x, &y)| {
            let d = x as i64 - y as i64;
            (d * d) as u64
        })
        .sum();
    Ok(psnr_from_mse(sse as f64 / a.samples().len() as f64))
}

pub fn psnr_from_mse(mse: f64) -> f64 {
    if mse == 0.0 {
        return f64::INFINITY;
    }
    10.0 * (PEAK * PEAK / mse).log10()
}

/// Normalized 1-D Gaussian taps.
pub fn gaussian_taps(size: usize, sigma: f64) -> Vec<f64> {
    let c = (size as f64 - 1.0) / 2.0;
    let raw: Vec<f64> = (0..size)
        .map(|i| (-((i as f64 - c).powi(2)) / (2.0 * sigma * sigma)).exp())
        .collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / total).collect()
}

/// Separable "valid" Gaussian filtering of a `w×h` raster.
fn filter_valid(data: &[f64], w: usize, h: usize, taps: &[f64]) -> Vec<f64> {
    let k = taps.len();
    let (ow, oh) = (w - k + 1, h - k + 1);
    let mut horiz = vec![0.0; ow * h];
    for y in 0..h {
        let row = &data[y * w..(y + 1) * w];
        for x in 0..ow {
            horiz[y * ow + x] = taps.iter().zip(&row[x..x + k]).map(|(t, v)| t * v).sum();
        }
    }
    let mut out = vec![0.0; ow * oh];
    for y in 0..oh {
        for x in 0..ow {
            let mut acc = 0.0;
            for (i, t) in taps.iter().enumerate() {
                acc += t * horiz[(y + i) * ow + x];
            }
            out[y * ow + x] = acc;
        }
    }
    out
}

/// Local statistics of a fixed reference image, reusable across many
/// comparisons against it.
#[derive(Clone, Debug)]
pub struct SsimReference {
    image: GrayImage,
    data: Vec<f64>,
    mu: Vec<f64>,
    sigma_sq: Vec<f64>,
    taps: Vec<f64>,
}

impl SsimReference {
    pub fn new(image: &GrayImage) -> Result<Self> {
        if image.width() < SSIM_WINDOW || image.height() < SSIM_WINDOW {
            return Err(Error::invalid(format!(
                "SSIM needs at least {SSIM_WINDOW}×{SSIM_WINDOW} pixels, got {}×{}",
                image.width(),
                image.height()
            )));
        }
        let taps = gaussian_taps(SSIM_WINDOW, SSIM_SIGMA);
        let (w, h) = (image.width(), image.height());
        let data: Vec<f64> = image.samples().iter().map(|&v| v as f64).collect();
        let mu = filter_valid(&data, w, h, &taps);
        let sq: Vec<f64> = data.iter().map(|v| v * v).collect();
        let sigma_sq = filter_valid(&sq, w, h, &taps)
            .into_iter()
            .zip(&mu)
            .map(|(e, m)| e - m * m)
            .collect();
        Ok(SsimReference {
            image: image.clone(),
            data,
            mu,
            sigma_sq,
            taps,
        })
    }

    pub fn image(&self) -> &GrayImage {
        &self.image
    }

    pub fn compare(&self, other: &GrayImage) -> Result<f64> {
        check_pair(&self.image, other)?;
        let (w, h) = (other.width(), other.height());
        let b: Vec<f64> = other.samples().iter().map(|&v| v as f64).collect();
        let mu_b = filter_valid(&b, w, h, &self.taps);
        let bb: Vec<f64> = b.iter().map(|v| v * v).collect();
        let ab: Vec<f64> = self.data.iter().zip(&b).map(|(x, y)| x * y).collect();
        let e_bb = filter_valid(&bb, w, h, &self.taps);
        let e_ab = filter_valid(&ab, w, h, &self.taps);
        let c1 = (K1 * PEAK).powi(2);
        let c2 = (K2 * PEAK).powi(2);
        let n = mu_b.len();
        let mut total = 0.0;
        for i in 0..n {
            let (ma, mb) = (self.mu[i], mu_b[i]);
            let va = self.sigma_sq[i];
            let vb = e_bb[i] - mb * mb;
            let cov = e_ab[i] - ma * mb;
            total += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
        }
        Ok(total / n as f64)
    }
}

/// Mean structural similarity of `b` against `a`.
pub fn ssim(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    check_pair(a, b)?;
    SsimReference::new(a)?.compare(b)
}
