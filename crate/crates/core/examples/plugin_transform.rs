//! Registers an extra transform and runs it through the metrics and the
//! block codec next to the built-ins.
//!
//!     cargo run --example plugin_transform

use dct16::codec::{BlockCodec, GrayImage, TransformPath};
use dct16::fast::OpCount;
use dct16::metrics::{performance_table, DEFAULT_RHO};
use dct16::transform::{wht_matrix, TransformRegistry, TransformRegistryEntry, WhtOrdering};

fn main() -> Result<(), dct16::Error> {
    let mut registry = TransformRegistry::builtin();
    registry.register(TransformRegistryEntry::new(
        "wht-sequency",
        wht_matrix(WhtOrdering::Sequency),
        OpCount::new(64, 0, 0),
    ))?;

    for r in performance_table(&registry, DEFAULT_RHO)? {
        println!(
            "{:<13} ε={:>8.4} MSE={:.4} Cg={:.4} dB η={:.4}%",
            r.name, r.epsilon, r.mse, r.coding_gain_db, r.efficiency_pct
        );
    }

    let image = GrayImage::from_fn(64, 64, |x, y| {
        (128.0 + 90.0 * ((x as f64 / 9.0).sin() * (y as f64 / 13.0).cos())) as u8
    })?;
    for entry in registry.entries() {
        let res = BlockCodec::new(TransformPath::for_entry(entry)?).compress(&image, 10)?;
        println!(
            "{:<13} r=10 PSNR {:.3} dB SSIM {:.4}",
            entry.name, res.psnr_db, res.ssim
        );
    }

    match registry.register(TransformRegistryEntry::new(
        "wht",
        wht_matrix(WhtOrdering::Natural),
        OpCount::new(64, 0, 0),
    )) {
        Err(e) => println!("duplicate rejected: {e}"),
        Ok(()) => unreachable!(),
    }
    Ok(())
}
