use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dct16::codec::GrayImage;
use dct16::io::{read_pgm, write_pgm};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dct16"))
}

fn corpus_image(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data/corpus")
        .join(format!("{name}.pgm"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn verify_reports_44_additions() {
    let out = bin().arg("verify").output().unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    for line in ["additions=44", "multiplications=0", "bit_shifts=0", "verify ok"] {
        assert!(text.lines().any(|l| l == line), "missing `{line}` in\n{text}");
    }
    assert!(text.contains("stage M1 butterfly additions=16"));
    assert!(text.contains("stage P2 permutation additions=0"));
}

#[test]
fn metrics_to_stdout_and_directory() {
    let out = bin().arg("metrics").output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    let (complexity, performance) = text.split_once("\n\n").expect("two tables");
    assert!(complexity.starts_with("transform,multiplications,additions,bit_shifts,total"));
    assert!(complexity.contains("proposed,0,44,0,44"));
    assert!(complexity.contains("wht,0,64,0,64"));
    assert!(performance.contains("proposed,0.49"));

    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["metrics", "--transform", "proposed", "--rho", "0.9", "--out"])
        .arg(dir.path().join("tables"))
        .status()
        .unwrap();
    assert!(status.success());
    let perf = std::fs::read_to_string(dir.path().join("tables/performance.csv")).unwrap();
    assert_eq!(perf.lines().count(), 2);
    assert!(perf.lines().nth(1).unwrap().starts_with("proposed,"));
}

#[test]
fn compress_writes_reconstruction() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("rec.pgm");
    let out = bin()
        .args(["compress", "--r", "16", "--out"])
        .arg(&target)
        .arg(corpus_image("camera"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("transform=proposed r=16 psnr_db="), "{text}");
    assert!(text.contains("additions=44"));
    let rec = read_pgm(&target).unwrap();
    assert_eq!((rec.width(), rec.height()), (256, 256));

    let lossless = bin()
        .args(["compress", "--transform", "dct", "--r", "256", "--out"])
        .arg(dir.path().join("exact.pgm"))
        .arg(corpus_image("camera"))
        .output()
        .unwrap();
    assert!(stdout(&lossless).contains("psnr_db=inf ssim=1.000000"));
    assert_eq!(
        read_pgm(dir.path().join("exact.pgm")).unwrap(),
        read_pgm(corpus_image("camera")).unwrap()
    );
}

#[test]
fn sweep_is_deterministic_across_thread_counts() {
    let args = [
        "sweep",
        "--r-range",
        "1:6",
        "--transform",
        "proposed",
        "--transform",
        "wht",
    ];
    let dir = corpus_image("camera").parent().unwrap().to_path_buf();
    let one = bin().args(args).arg(&dir).env("DCT16_THREADS", "1").output().unwrap();
    let many = bin().args(args).arg(&dir).env("DCT16_THREADS", "4").output().unwrap();
    assert!(one.status.success(), "{}", stderr(&one));
    assert_eq!(stdout(&one), stdout(&many));
    let text = stdout(&one);
    assert_eq!(text.lines().count(), 1 + 2 * 6);
    assert!(text.lines().nth(1).unwrap().starts_with("proposed,1,11,"));
}

#[test]
fn sweep_skips_unusable_images() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(corpus_image("coins"), dir.path().join("a.pgm")).unwrap();
    std::fs::write(dir.path().join("b.pgm"), b"P2\n2 2\n255\n0 0 0 0\n").unwrap();
    write_pgm(&GrayImage::filled(20, 16, 9).unwrap(), dir.path().join("c.pgm")).unwrap();
    let out = bin().args(["sweep", "--r", "8"]).arg(dir.path()).output().unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let err = stderr(&out);
    assert!(err.contains("b.pgm") && err.contains("unsupported-format"), "{err}");
    assert!(err.contains("c.pgm"), "{err}");
    assert!(stdout(&out).contains("proposed,8,1,"));
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pgm");
    std::fs::write(&bad, b"P5\n4 4\n255\nabc").unwrap();
    let cases: Vec<(Vec<String>, i32, &str)> = vec![
        (
            vec!["compress".into(), "--r".into(), "4".into(), bad.display().to_string()],
            6,
            "truncated-payload",
        ),
        (
            vec!["compress".into(), "--r".into(), "0".into(), bad.display().to_string()],
            2,
            "invalid-argument",
        ),
        (
            vec!["metrics".into(), "--transform".into(), "dst".into()],
            3,
            "unknown-transform",
        ),
        (
            vec!["compress".into(), "--r".into(), "4".into(), "/nonexistent/x.pgm".into()],
            4,
            "io-error",
        ),
    ];
    for (args, code, tag) in cases {
        let out = bin().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(code), "{args:?}: {}", stderr(&out));
        assert!(
            stderr(&out).starts_with(&format!("error[{tag}]")),
            "{args:?}: {}",
            stderr(&out)
        );
    }
    let odd = dir.path().join("odd.pgm");
    write_pgm(&GrayImage::filled(24, 16, 1).unwrap(), &odd).unwrap();
    let out = bin()
        .args(["compress", "--r", "4"])
        .arg(&odd)
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(8));
    let padded = bin()
        .args(["compress", "--r", "4", "--pad"])
        .arg(&odd)
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(padded.status.success(), "{}", stderr(&padded));
    assert!(dir.path().join("odd_proposed_r4.pgm").exists());
}
