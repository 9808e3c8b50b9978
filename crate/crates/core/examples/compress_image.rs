//! Compresses a PGM image with every built-in transform at one or more
//! retained-coefficient counts.
//!
//!     cargo run --release --example compress_image -- tests/data/lena512.pgm 16 [OUT_DIR]

use std::path::PathBuf;

use dct16::codec::{BlockCodec, TransformPath};
use dct16::io::{read_pgm, write_pgm};
use dct16::transform::TransformRegistry;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let input = PathBuf::from(args.next().unwrap_or_else(|| "tests/data/lena512.pgm".into()));
    let r: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(16);
    let out_dir = args.next().map(PathBuf::from);

    let image = read_pgm(&input)?;
    println!("{} {}×{}, r={r}", input.display(), image.width(), image.height());
    for entry in TransformRegistry::builtin().entries() {
        let codec = BlockCodec::new(TransformPath::for_entry(entry)?);
        let res = codec.compress(&image, r)?;
        println!(
            "{:<10} PSNR {:>8.4} dB  SSIM {:.4}  ({} additions)",
            entry.name, res.psnr_db, res.ssim, entry.cost.additions
        );
        if let Some(dir) = &out_dir {
            std::fs::create_dir_all(dir)?;
            write_pgm(&res.reconstructed, dir.join(format!("{}_r{r}.pgm", entry.name)))?;
        }
    }
    Ok(())
}
