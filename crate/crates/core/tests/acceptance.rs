//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dct16::codec::{sweep, BlockCodec, GrayImage, NamedImage, Padding, TransformPath};
use dct16::fast::{build_proposed_factorization, OpCount};
use dct16::io::read_pgm;
use dct16::metrics::{performance_table, MetricReport, DEFAULT_RHO};
use dct16::transform::{proposed_kernel, TransformRegistry, DCT, PROPOSED, WHT};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const TABLE_TOL: f64 = 1e-3;
const PSNR_TOL: f64 = 0.5;
const SSIM_TOL: f64 = 0.02;

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Outcome {
            ok,
            detail: detail.into(),
        }
    }
}

type Check = fn() -> Result<Outcome, String>;

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

fn corpus() -> Result<Vec<NamedImage>, String> {
    let dir = data_dir().join("corpus");
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| format!("{}: {e}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "pgm"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            read_pgm(p)
                .map(|img| NamedImage::new(name, img))
                .map_err(|e| e.to_string())
        })
        .collect()
}

fn lena() -> Result<GrayImage, String> {
    read_pgm(data_dir().join("lena512.pgm")).map_err(|e| e.to_string())
}

fn ms(d: Duration) -> String {
    format!("{:.1} ms", d.as_secs_f64() * 1e3)
}

fn factorization_exactness() -> Result<Outcome, String> {
    let start = Instant::now();
    let fast = build_proposed_factorization().map_err(|e| e.to_string())?;
    let kernel = proposed_kernel();
    let mut mismatches = 0;
    for j in 0..16 {
        let mut e = vec![0i64; 16];
        e[j] = 1;
        let col = fast.apply(&e).map_err(|e| e.to_string())?;
        for (i, &v) in col.iter().enumerate() {
            if v != kernel.entry(i, j) as i64 {
                mismatches += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = mismatches == 0 && elapsed < Duration::from_secs(1);
    Ok(Outcome::new(
        ok,
        format!(
            "{mismatches} mismatched entries over 16 basis vectors, {} (limit 1 s)",
            ms(elapsed)
        ),
    ))
}

fn operation_count() -> Result<Outcome, String> {
    let fast = build_proposed_factorization().map_err(|e| e.to_string())?;
    let ops = fast.count_ops();
    let sub = |label: &str| fast.stage(label).map(|s| s.additions()).unwrap_or(usize::MAX);
    let subtotals = [sub("M1"), sub("M2"), sub("M3"), sub("M4")];
    let tail = subtotals[1] + subtotals[2] + subtotals[3];
    let perms = sub("P1") + sub("P2");
    let ok = ops == OpCount::new(44, 0, 0) && subtotals == [16, 16, 8, 4] && tail == 28 && tail == 2 * 14 && perms == 0;
    Ok(Outcome::new(
        ok,
        format!(
            "mult={} add={} shift={}; M1..M4 = {:?}; M2+M3+M4 = {tail}; permutations add {perms}",
            ops.multiplications, ops.additions, ops.bit_shifts, subtotals
        ),
    ))
}

fn orthonormality() -> Result<Outcome, String> {
    let registry = TransformRegistry::builtin();
    let entry = registry.require(PROPOSED).map_err(|e| e.to_string())?;
    let deviation = entry.transform.matrix().orthonormality_deviation();
    let scaling = entry.transform.scaling().ok_or("proposed transform has no scaling")?;
    let r2 = std::f64::consts::SQRT_2;
    let printed = [
        1.0, 1.0, 2.0, r2, r2, 1.0, 2.0, 2.0, 1.0, 2.0, 2.0, r2, r2, 2.0, 2.0, 2.0,
    ];
    let expected_gram: [i64; 16] = [16, 16, 4, 8, 8, 16, 4, 4, 16, 4, 4, 8, 8, 4, 4, 4];
    let gram = proposed_kernel().gram();
    let diag: Vec<i64> = (0..16).map(|i| gram[i * 16 + i]).collect();
    let mut s_err: f64 = 0.0;
    let mut inv_sq_exact = true;
    for i in 0..16 {
        let s = scaling.get(i);
        s_err = s_err.max((4.0 * s - printed[i]).abs());
        let inv_sq = 1.0 / (s * s);
        inv_sq_exact &= (inv_sq - expected_gram[i] as f64).abs() < 1e-9 && inv_sq.round() as i64 == diag[i];
    }
    let ok = deviation < 1e-12 && diag == expected_gram && s_err < 1e-15 && inv_sq_exact;
    Ok(Outcome::new(
        ok,
        format!(
            "max|ĈĈᵀ−I| = {deviation:.3e} (limit 1e-12); max|4S − printed| = {s_err:.1e}; S⁻² = diag(TTᵀ) = {:?}: {inv_sq_exact}",
            diag
        ),
    ))
}

fn performance_reproduction() -> Result<Outcome, String> {
    let start = Instant::now();
    let reports = performance_table(&TransformRegistry::builtin(), DEFAULT_RHO).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    // (d2, ε, MSE, Cg, η); `None` entries are not published for that row.
    let golden: [(&str, [Option<f64>; 5]); 3] = [
        (DCT, [None, Some(0.0), Some(0.0), Some(9.455), Some(88.452)]),
        (WHT, [Some(0.878), Some(92.563), Some(0.428), Some(8.194), Some(70.646)]),
        (
            PROPOSED,
            [Some(0.493), Some(41.000), Some(0.095), Some(7.857), Some(67.608)],
        ),
    ];
    let mut worst: f64 = 0.0;
    let mut lines = Vec::new();
    for (name, want) in golden {
        let r: &MetricReport = reports
            .iter()
            .find(|r| r.name == name)
            .ok_or(format!("no row for {name}"))?;
        let got = [r.d2, r.epsilon, r.mse, r.coding_gain_db, r.efficiency_pct];
        for (g, w) in got.iter().zip(want) {
            if let Some(w) = w {
                worst = worst.max((g - w).abs());
            }
        }
        lines.push(format!(
            "{name}=({:.4}, {:.4}, {:.4}, {:.4}, {:.4})",
            got[0], got[1], got[2], got[3], got[4]
        ));
    }
    let ok = worst <= TABLE_TOL && elapsed < Duration::from_secs(5);
    Ok(Outcome::new(
        ok,
        format!(
            "ρ={DEFAULT_RHO}; (d2, ε, MSE, Cg, η) {}; max deviation {worst:.2e} (tol {TABLE_TOL}); {} (limit 5 s)",
            lines.join(" "),
            ms(elapsed)
        ),
    ))
}

fn lossless_round_trip() -> Result<Outcome, String> {
    let mut images: Vec<GrayImage> = corpus()?.into_iter().map(|n| n.image).collect();
    images.push(lena()?);
    let mut rng = StdRng::seed_from_u64(5);
    images.push(GrayImage::from_fn(64, 48, |_, _| rng.gen()).map_err(|e| e.to_string())?);
    let registry = TransformRegistry::builtin();
    let mut worst: f64 = 0.0;
    let mut byte_equal = true;
    for entry in registry.entries() {
        for path in [TransformPath::for_entry(entry), TransformPath::dense(&entry.transform)] {
            let codec = BlockCodec::new(path.map_err(|e| e.to_string())?);
            for img in &images {
                let plane = codec.reconstruct(img, 256).map_err(|e| e.to_string())?;
                worst = worst.max(plane.max_abs_diff(img));
                byte_equal &= plane.to_gray() == *img;
            }
        }
    }
    let ok = worst < 1e-6 && byte_equal;
    Ok(Outcome::new(
        ok,
        format!(
            "{} images × {} transforms × 2 paths; max pre-rounding error {worst:.2e} (limit 1e-6); byte-equal: {byte_equal}",
            images.len(),
            registry.len()
        ),
    ))
}

fn lena_spot_check() -> Result<Outcome, String> {
    let image = lena()?;
    let registry = TransformRegistry::builtin();
    let targets = [(PROPOSED, 25.84, 0.7023), (DCT, 28.55, 0.7915)];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, psnr, ssim) in targets {
        let start = Instant::now();
        let entry = registry.require(name).map_err(|e| e.to_string())?;
        let path = TransformPath::for_entry(entry).map_err(|e| e.to_string())?;
        let res = BlockCodec::new(path).compress(&image, 16).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        let this = (res.psnr_db - psnr).abs() <= PSNR_TOL
            && (res.ssim - ssim).abs() <= SSIM_TOL
            && elapsed < Duration::from_secs(10);
        ok &= this;
        parts.push(format!(
            "{name}: PSNR {:.4} (target {psnr} ± {PSNR_TOL}) SSIM {:.4} (target {ssim} ± {SSIM_TOL}) {}",
            res.psnr_db,
            res.ssim,
            ms(elapsed)
        ));
    }
    Ok(Outcome::new(ok, format!("512×512, r=16; {}", parts.join("; "))))
}

fn property_suite() -> Result<Outcome, String> {
    let corpus = corpus()?;
    let chosen: Vec<&NamedImage> = corpus.iter().take(3).collect();
    let registry = TransformRegistry::builtin();
    let rs = [1usize, 4, 16, 64, 150, 256];

    let mut monotone = true;
    let mut identical = true;
    for entry in registry.entries() {
        let fast = BlockCodec::new(TransformPath::for_entry(entry).map_err(|e| e.to_string())?);
        let dense = BlockCodec::new(TransformPath::dense(&entry.transform).map_err(|e| e.to_string())?);
        for item in &chosen {
            let fa = fast.analyze(&item.image).map_err(|e| e.to_string())?;
            let da = dense.analyze(&item.image).map_err(|e| e.to_string())?;
            let mut prev = f64::NEG_INFINITY;
            for &r in &rs {
                let f = fa.reconstruct(r).map_err(|e| e.to_string())?.to_gray();
                let d = da.reconstruct(r).map_err(|e| e.to_string())?.to_gray();
                identical &= f == d;
                let psnr = dct16::codec::psnr_db(&item.image, &f).map_err(|e| e.to_string())?;
                monotone &= psnr >= prev;
                prev = psnr;
            }
        }
    }

    let fast = build_proposed_factorization().map_err(|e| e.to_string())?;
    let kernel = proposed_kernel();
    let dense = kernel.to_matrix();
    let mut rng = StdRng::seed_from_u64(1000);
    let mut oracle_ok = true;
    for _ in 0..1000 {
        let xi: Vec<i64> = (0..16).map(|_| rng.gen_range(-1_000_000..=1_000_000)).collect();
        oracle_ok &= fast.apply(&xi).map_err(|e| e.to_string())? == kernel.mul_vec(&xi).map_err(|e| e.to_string())?;
        let xf: Vec<f64> = (0..16).map(|_| rng.gen_range(-255.0..255.0)).collect();
        let a = fast.apply(&xf).map_err(|e| e.to_string())?;
        let b = dense.mul_vec(&xf).map_err(|e| e.to_string())?;
        oracle_ok &= a.iter().zip(&b).all(|(p, q)| (p - q).abs() <= 1e-9);
    }
    let names: Vec<&str> = chosen.iter().map(|n| n.name.as_str()).collect();
    Ok(Outcome::new(
        monotone && identical && oracle_ok,
        format!(
            "images {names:?}, r ∈ {rs:?}: PSNR monotone {monotone}; dense vs fast byte-identical {identical}; 1000 random vectors (integer and real) match kernel {oracle_ok}"
        ),
    ))
}

fn per_addition_shape() -> Result<Outcome, String> {
    let corpus = corpus()?;
    let registry = TransformRegistry::builtin()
        .select(&[PROPOSED.to_string(), WHT.to_string()])
        .map_err(|e| e.to_string())?;
    let rs: Vec<usize> = (1..=150).collect();
    let report = sweep(&corpus, &registry, &rs, Padding::Reject).map_err(|e| e.to_string())?;
    let mut failures = Vec::new();
    let mut min_margin = f64::INFINITY;
    for &r in &rs {
        let p = report.row(PROPOSED, r).ok_or("missing proposed row")?;
        let w = report.row(WHT, r).ok_or("missing wht row")?;
        let margin = p.psnr_per_add - w.psnr_per_add;
        min_margin = min_margin.min(margin);
        if margin <= 0.0 {
            failures.push(r);
        }
    }
    let used = corpus.len() - report.skipped.len();
    Ok(Outcome::new(
        failures.is_empty() && used >= 10,
        format!(
            "{used} images, r = 1..=150; proposed − WHT psnr_per_add min margin {min_margin:.5} dB/add; failing r: {failures:?}"
        ),
    ))
}

fn main() -> ExitCode {
    let checks: [(&str, Check); 8] = [
        ("1 factorization exactness", factorization_exactness),
        ("2 operation count", operation_count),
        ("3 orthonormality and scaling", orthonormality),
        ("4 performance table at rho=0.95", performance_reproduction),
        ("5 lossless round trip at r=256", lossless_round_trip),
        ("6 Lena r=16 spot check", lena_spot_check),
        ("7 property suite", property_suite),
        ("8 per-addition PSNR vs WHT", per_addition_shape),
    ];
    let mut failed = 0;
    for (name, check) in checks {
        let outcome = check().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        if !outcome.ok {
            failed += 1;
        }
        println!(
            "{} criterion {name}: {}",
            if outcome.ok { "PASS" } else { "FAIL" },
            outcome.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", checks.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
