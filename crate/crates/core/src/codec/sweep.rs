use rayon::prelude::*;

use super::block::{Padding, TransformPath};
use super::image::GrayImage;
use super::pipeline::BlockCodec;
use super::quality::SsimReference;
use super::zigzag::check_r;
use crate::transform::TransformRegistry;
use crate::{Error, Result};

/// Default retained-coefficient grid, `1..=150`.
pub fn default_r_values() -> Vec<usize> {
    (1..=150).collect()
}

#[derive(Clone, Debug)]
pub struct NamedImage {
    pub name: String,
    pub image: GrayImage,
}

impl NamedImage {
    pub fn new(name: impl Into<String>, image: GrayImage) -> Self {
        NamedImage {
            name: name.into(),
            image,
        }
    }
}

/// Corpus averages for one transform at one `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub transform: String,
    pub r: usize,
    pub images: usize,
    pub mean_psnr_db: f64,
    pub mean_ssim: f64,
    /// `mean_psnr_db` divided by the declared addition count.
    pub psnr_per_add: f64,
    pub ssim_per_add: f64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkippedImage {
    pub name: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    /// Sorted by transform name, then `r`.
    pub rows: Vec<SweepRow>,
    pub skipped: Vec<SkippedImage>,
}

impl SweepReport {
    pub fn row(&self, transform: &str, r: usize) -> Option<&SweepRow> {
        self.rows.iter().find(|row| row.transform == transform && row.r == r)
    }

    pub fn rows_for<'a>(&'a self, transform: &'a str) -> impl Iterator<Item = &'a SweepRow> + 'a {
        self.rows.iter().filter(move |row| row.transform == transform)
    }
}

#[derive(Clone, Copy, Default)]
struct Accum {
    psnr: f64,
    ssim: f64,
}

/// Compresses every corpus image with every registered transform at every
/// `r`, averaging PSNR and SSIM over the images.
///
/// Images that cannot be processed (for example, sides not a multiple of 16
/// under [`Padding::Reject`]) are skipped and listed in
/// [`SweepReport::skipped`]; an empty corpus or one where every image is
/// skipped is an error.
pub fn sweep(
    corpus: &[NamedImage],
    registry: &TransformRegistry,
    r_values: &[usize],
    padding: Padding,
) -> Result<SweepReport> {
    if corpus.is_empty() {
        return Err(Error::invalid("sweep needs at least one image"));
    }
    if r_values.is_empty() {
        return Err(Error::invalid("sweep needs at least one r value"));
    }
    for &r in r_values {
        check_r(r)?;
    }
    let codecs: Vec<(String, BlockCodec, usize)> = registry
        .entries()
        .iter()
        .map(|e| {
            let path = TransformPath::for_entry(e)?;
            Ok((
                e.name.clone(),
                BlockCodec::new(path).with_padding(padding),
                e.cost.additions,
            ))
        })
        .collect::<Result<_>>()?;

    // Per image: codecs × r_values scores, or a skip reason.
    let per_image: Vec<std::result::Result<Vec<Vec<Accum>>, SkippedImage>> = corpus
        .par_iter()
        .map(|item| {
            let run = || -> Result<Vec<Vec<Accum>>> {
                let reference = SsimReference::new(&item.image)?;
                codecs
                    .iter()
                    .map(|(_, codec, _)| {
                        let analysis = codec.analyze(&item.image)?;
                        r_values
                            .iter()
                            .map(|&r| {
                                let res = analysis.score(r, &reference)?;
                                Ok(Accum {
                                    psnr: res.psnr_db,
                                    ssim: res.ssim,
                                })
                            })
                            .collect()
                    })
                    .collect()
            };
            run().map_err(|e| SkippedImage {
                name: item.name.clone(),
                reason: e.to_string(),
            })
        })
        .collect();

    let mut skipped = Vec::new();
    let mut totals = vec![vec![Accum::default(); r_values.len()]; codecs.len()];
    let mut used = 0usize;
    for outcome in per_image {
        match outcome {
            Ok(scores) => {
                used += 1;
                for (t, row) in scores.iter().enumerate() {
                    for (k, s) in row.iter().enumerate() {
                        totals[t][k].psnr += s.psnr;
                        totals[t][k].ssim += s.ssim;
                    }
                }
            }
            Err(skip) => skipped.push(skip),
        }
    }
    if used == 0 {
        return Err(Error::invalid(format!(
            "every image was skipped; first reason: {}",
            skipped[0].reason
        )));
    }

    let mut rows = Vec::with_capacity(codecs.len() * r_values.len());
    for (t, (name, _, adds)) in codecs.iter().enumerate() {
        for (k, &r) in r_values.iter().enumerate() {
            let mean_psnr_db = totals[t][k].psnr / used as f64;
            let mean_ssim = totals[t][k].ssim / used as f64;
            rows.push(SweepRow {
                transform: name.clone(),
                r,
                images: used,
                mean_psnr_db,
                mean_ssim,
                psnr_per_add: mean_psnr_db / *adds as f64,
                ssim_per_add: mean_ssim / *adds as f64,
            });
        }
    }
    rows.sort_by(|a, b| a.transform.cmp(&b.transform).then(a.r.cmp(&b.r)));
    Ok(SweepReport { rows, skipped })
}
