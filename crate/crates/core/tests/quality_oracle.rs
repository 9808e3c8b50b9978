//! SSIM and PSNR against naive direct implementations.

use dct16::codec::{psnr_db, ssim, GrayImage, SsimReference};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Direct 2-D windowed SSIM with an explicit 11×11 Gaussian kernel.
#[allow(clippy::needless_range_loop)]
fn naive_ssim(a: &GrayImage, b: &GrayImage) -> f64 {
    let sigma = 1.5f64;
    let mut w = [[0.0f64; 11]; 11];
    let mut total = 0.0;
    for (i, row) in w.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let (di, dj) = (i as f64 - 5.0, j as f64 - 5.0);
            *v = (-(di * di + dj * dj) / (2.0 * sigma * sigma)).exp();
            total += *v;
        }
    }
    let c1 = (0.01f64 * 255.0).powi(2);
    let c2 = (0.03f64 * 255.0).powi(2);
    let mut sum = 0.0;
    let mut count = 0;
    for y0 in 0..=a.height() - 11 {
        for x0 in 0..=a.width() - 11 {
            let (mut ma, mut mb, mut aa, mut bb, mut ab) = (0.0, 0.0, 0.0, 0.0, 0.0);
            for i in 0..11 {
                for j in 0..11 {
                    let k = w[i][j] / total;
                    let p = a.get(x0 + j, y0 + i) as f64;
                    let q = b.get(x0 + j, y0 + i) as f64;
                    ma += k * p;
                    mb += k * q;
                    aa += k * p * p;
                    bb += k * q * q;
                    ab += k * p * q;
                }
            }
            let (va, vb, cov) = (aa - ma * ma, bb - mb * mb, ab - ma * mb);
            sum += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
            count += 1;
        }
    }
    sum / count as f64
}

fn noisy_pair(w: usize, h: usize, seed: u64, noise: i32) -> (GrayImage, GrayImage) {
    let mut rng = StdRng::seed_from_u64(seed);
    let a = GrayImage::from_fn(w, h, |x, y| ((x * 7 + y * 3) % 180 + rng.gen_range(0..60)) as u8).unwrap();
    let b = GrayImage::from_fn(w, h, |x, y| {
        (a.get(x, y) as i32 + rng.gen_range(-noise..=noise)).clamp(0, 255) as u8
    })
    .unwrap();
    (a, b)
}

#[test]
fn ssim_matches_direct_windowing() {
    for (w, h, seed, noise) in [(11, 11, 1, 5), (23, 17, 2, 30), (48, 32, 3, 90), (40, 40, 4, 0)] {
        let (a, b) = noisy_pair(w, h, seed, noise);
        let fast = ssim(&a, &b).unwrap();
        let slow = naive_ssim(&a, &b);
        assert!((fast - slow).abs() < 1e-6, "{w}×{h}: {fast} vs {slow}");
    }
}

#[test]
fn cached_reference_agrees() {
    let (a, b) = noisy_pair(32, 32, 9, 20);
    let reference = SsimReference::new(&a).unwrap();
    assert_eq!(reference.compare(&b).unwrap(), ssim(&a, &b).unwrap());
}

#[test]
fn ssim_is_symmetric() {
    let (a, b) = noisy_pair(30, 20, 5, 40);
    assert!((ssim(&a, &b).unwrap() - ssim(&b, &a).unwrap()).abs() < 1e-12);
}

#[test]
fn psnr_matches_direct_formula() {
    let (a, b) = noisy_pair(37, 29, 6, 12);
    let mse: f64 = a
        .samples()
        .iter()
        .zip(b.samples())
        .map(|(&p, &q)| (p as f64 - q as f64).powi(2))
        .sum::<f64>()
        / a.samples().len() as f64;
    let expected = 10.0 * (255.0f64.powi(2) / mse).log10();
    assert!((psnr_db(&a, &b).unwrap() - expected).abs() < 1e-12);
}
