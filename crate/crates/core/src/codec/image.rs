use crate::{Error, Result};

/// 8-bit grayscale raster, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrayImage {
    width: usize,
    height: usize,
    samples: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, samples: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::invalid(format!(
                "image dimensions {width}×{height} must be positive"
            )));
        }
        if samples.len() != width * height {
            return Err(Error::invalid(format!(
                "{width}×{height} image needs {} samples, got {}",
                width * height,
                samples.len()
            )));
        }
        Ok(GrayImage { width, height, samples })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        let mut samples = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                samples.push(f(x, y));
            }
        }
        GrayImage::new(width, height, samples)
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        GrayImage::new(width, height, vec![value; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn samples(&self) -> &[u8] {
        &self.samples
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.samples[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, v: u8) {
        self.samples[y * self.width + x] = v;
    }

    pub fn same_dimensions(&self, other: &GrayImage) -> bool {
        self.width == other.width && self.height == other.height
    }

    pub fn to_plane(&self) -> Plane {
        Plane {
            width: self.width,
            height: self.height,
            data: self.samples.iter().map(|&v| v as f64).collect(),
        }
    }
}

impl std::fmt::Debug for GrayImage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GrayImage({}×{})", self.width, self.height)
    }
}

const TIE_GRID: f64 = (1u64 << 20) as f64;

/// Real-valued raster, used for reconstructions before 8-bit rounding.
#[derive(Clone, Debug, PartialEq)]
pub struct Plane {
    pub width: usize,
    pub height: usize,
    pub data: Vec<f64>,
}

impl Plane {
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    /// Rounds to nearest (ties away from zero) and clamps to [0, 255].
    ///
    /// Values are first snapped to a 2⁻²⁰ grid, so two evaluations of the same
    /// exact half-integer that differ only by floating-point noise round alike.
    pub fn to_gray(&self) -> GrayImage {
        let samples = self
            .data
            .iter()
            .map(|v| ((v * TIE_GRID).round() / TIE_GRID).round().clamp(0.0, 255.0) as u8)
            .collect();
        GrayImage::new(self.width, self.height, samples).expect("plane dimensions are valid")
    }

    /// Mean squared difference against an 8-bit image of equal size.
    pub fn mse_against(&self, image: &GrayImage) -> Result<f64> {
        if self.width != image.width() || self.height != image.height() {
            return Err(Error::invalid("plane and image dimensions differ"));
        }
        let sum: f64 = self
            .data
            .iter()
            .zip(image.samples())
            .map(|(a, &b)| (a - b as f64) * (a - b as f64))
            .sum();
        Ok(sum / self.data.len() as f64)
    }

    pub fn max_abs_diff(&self, image: &GrayImage) -> f64 {
        self.data
            .iter()
            .zip(image.samples())
            .map(|(a, &b)| (a - b as f64).abs())
            .fold(0.0, f64::max)
    }
}
