//! Sweeps a directory of PGM images over r and prints per-addition PSNR.
//!
//!     cargo run --release --example corpus_sweep -- tests/data/corpus

use std::path::PathBuf;

use dct16::cli::collect_inputs;
use dct16::codec::{sweep, NamedImage, Padding};
use dct16::io::read_pgm;
use dct16::transform::{TransformRegistry, DCT, PROPOSED, WHT};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "tests/data/corpus".into()));
    let corpus = collect_inputs(&[dir])?
        .into_iter()
        .map(|p| Ok(NamedImage::new(p.display().to_string(), read_pgm(&p)?)))
        .collect::<Result<Vec<_>, dct16::Error>>()?;

    let registry = TransformRegistry::builtin();
    let rs = [1, 2, 4, 8, 16, 32, 64, 100, 150];
    let report = sweep(&corpus, &registry, &rs, Padding::Replicate)?;
    for s in &report.skipped {
        eprintln!("skipped {}: {}", s.name, s.reason);
    }

    println!("{} images", corpus.len() - report.skipped.len());
    println!(
        "{:>4} {:>10} {:>10} {:>10} {:>12} {:>12}",
        "r", "dct dB", "prop dB", "wht dB", "prop dB/add", "wht dB/add"
    );
    for r in rs {
        let row = |name| report.row(name, r).expect("row exists");
        let (d, p, w) = (row(DCT), row(PROPOSED), row(WHT));
        println!(
            "{r:>4} {:>10.3} {:>10.3} {:>10.3} {:>12.4} {:>12.4}",
            d.mean_psnr_db, p.mean_psnr_db, w.mean_psnr_db, p.psnr_per_add, w.psnr_per_add
        );
    }
    Ok(())
}
