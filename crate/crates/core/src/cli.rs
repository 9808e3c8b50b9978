//! Command-line engine behind the `dct16` binary.
//!
//! Arguments are parsed with clap into [`Cli`], validated into a
//! [`RunConfig`] before any work starts, and executed by [`run`]. Report
//! output goes to the supplied writer; diagnostics are the caller's job (see
//! [`diagnostic`] and [`exit_code`]).

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::codec::{sweep, BlockCodec, NamedImage, Padding, SkippedImage, TransformPath};
use crate::fast::{build_proposed_factorization, Stage};
use crate::io::{complexity_csv, performance_csv, read_pgm, sweep_csv, write_pgm, CsvReport};
use crate::metrics::{complexity_table, performance_table, DEFAULT_RHO};
use crate::transform::{
    orthogonalize, proposed_kernel, scaling_diagonal, TransformRegistry, ORTHONORMAL_TOLERANCE, PROPOSED,
};
use crate::{Error, Result};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "DCT16_THREADS";

#[derive(Debug, Parser)]
#[command(name = "dct16", version, about = "16-point multiplierless DCT approximation toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check orthonormality, factorization exactness and operation counts.
    Verify(Options),
    /// Emit the complexity and performance tables as CSV.
    Metrics(Options),
    /// Compress one PGM image, write the reconstruction, print PSNR/SSIM.
    Compress(Options),
    /// Average PSNR/SSIM over a corpus for a range of retained coefficients.
    Sweep(Options),
}

#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Transform name (repeat for several); defaults depend on the subcommand.
    #[arg(long = "transform", value_name = "NAME")]
    pub transforms: Vec<String>,
    /// Number of zig-zag coefficients kept per block.
    #[arg(long, value_name = "N", conflicts_with = "r_range")]
    pub r: Option<usize>,
    /// Inclusive range of coefficient counts, `A:B`.
    #[arg(long, value_name = "A:B")]
    pub r_range: Option<String>,
    /// Correlation coefficient of the Markov model.
    #[arg(long, value_name = "F")]
    pub rho: Option<f64>,
    /// Replicate edges of images whose sides are not multiples of 16.
    #[arg(long)]
    pub pad: bool,
    /// Output file (directory for `metrics`).
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Input files or directories.
    pub inputs: Vec<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RunConfig {
    Verify,
    Metrics {
        transforms: Vec<String>,
        rho: f64,
        out: Option<PathBuf>,
    },
    Compress {
        input: PathBuf,
        transform: String,
        r: usize,
        padding: Padding,
        out: PathBuf,
    },
    Sweep {
        inputs: Vec<PathBuf>,
        transforms: Vec<String>,
        r_values: Vec<usize>,
        padding: Padding,
        out: Option<PathBuf>,
    },
}

fn parse_range(text: &str) -> Result<Vec<usize>> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| Error::invalid(format!("r-range `{text}` must look like A:B")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::invalid(format!("r-range bound `{s}` is not an integer")))
    };
    let (a, b) = (parse(a)?, parse(b)?);
    if a == 0 || b > 256 || a > b {
        return Err(Error::invalid(format!("r-range {a}:{b} must satisfy 1 ≤ A ≤ B ≤ 256")));
    }
    Ok((a..=b).collect())
}

fn check_transforms(names: &[String]) -> Result<()> {
    let reg = TransformRegistry::builtin();
    for n in names {
        reg.require(n)?;
    }
    Ok(())
}

fn padding(pad: bool) -> Padding {
    if pad {
        Padding::Replicate
    } else {
        Padding::Reject
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let (name, opts) = match &cli.command {
            Command::Verify(o) => ("verify", o),
            Command::Metrics(o) => ("metrics", o),
            Command::Compress(o) => ("compress", o),
            Command::Sweep(o) => ("sweep", o),
        };
        let reject = |flag: &str, present: bool| -> Result<()> {
            if present {
                return Err(Error::invalid(format!("`{name}` does not take {flag}")));
            }
            Ok(())
        };
        check_transforms(&opts.transforms)?;
        match cli.command {
            Command::Verify(o) => {
                reject("--transform", !o.transforms.is_empty())?;
                reject("--r/--r-range", o.r.is_some() || o.r_range.is_some())?;
                reject("--rho", o.rho.is_some())?;
                reject("--pad", o.pad)?;
                reject("--out", o.out.is_some())?;
                reject("inputs", !o.inputs.is_empty())?;
                Ok(RunConfig::Verify)
            }
            Command::Metrics(o) => {
                reject("--r/--r-range", o.r.is_some() || o.r_range.is_some())?;
                reject("--pad", o.pad)?;
                reject("inputs", !o.inputs.is_empty())?;
                let rho = o.rho.unwrap_or(DEFAULT_RHO);
                crate::metrics::MarkovModel::new(16, rho)?;
                Ok(RunConfig::Metrics {
                    transforms: o.transforms,
                    rho,
                    out: o.out,
                })
            }
            Command::Compress(o) => {
                reject("--rho", o.rho.is_some())?;
                reject("--r-range", o.r_range.is_some())?;
                let transform = match o.transforms.as_slice() {
                    [] => PROPOSED.to_string(),
                    [one] => one.clone(),
                    _ => return Err(Error::invalid("`compress` takes a single --transform")),
                };
                let r = o.r.ok_or_else(|| Error::invalid("`compress` requires --r"))?;
                if !(1..=256).contains(&r) {
                    return Err(Error::invalid(format!("--r {r} outside 1..=256")));
                }
                let input = match o.inputs.as_slice() {
                    [one] => one.clone(),
                    _ => return Err(Error::invalid("`compress` takes exactly one input image")),
                };
                let out = o.out.unwrap_or_else(|| default_output(&input, &transform, r));
                if out == input {
                    return Err(Error::invalid("--out must differ from the input file"));
                }
                Ok(RunConfig::Compress {
                    input,
                    transform,
                    r,
                    padding: padding(o.pad),
                    out,
                })
            }
            Command::Sweep(o) => {
                reject("--rho", o.rho.is_some())?;
                if o.inputs.is_empty() {
                    return Err(Error::invalid("`sweep` needs a corpus directory or image files"));
                }
                let r_values = match (o.r, &o.r_range) {
                    (Some(r), _) => parse_range(&format!("{r}:{r}"))?,
                    (None, Some(range)) => parse_range(range)?,
                    (None, None) => crate::codec::default_r_values(),
                };
                Ok(RunConfig::Sweep {
                    inputs: o.inputs,
                    transforms: o.transforms,
                    r_values,
                    padding: padding(o.pad),
                    out: o.out,
                })
            }
        }
    }
}

fn default_output(input: &Path, transform: &str, r: usize) -> PathBuf {
    let stem = input
        .file_stem()
        .map_or_else(|| "image".into(), |s| s.to_string_lossy().into_owned());
    PathBuf::from(format!("{stem}_{transform}_r{r}.pgm"))
}

fn registry_for(names: &[String]) -> Result<TransformRegistry> {
    let all = TransformRegistry::builtin();
    if names.is_empty() {
        Ok(all)
    } else {
        all.select(names)
    }
}

fn emit(csv: &CsvReport, out: &Option<PathBuf>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => csv.write(path),
        None => stdout
            .write_all(csv.render().as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

fn say(stdout: &mut dyn Write, line: impl AsRef<str>) -> Result<()> {
    writeln!(stdout, "{}", line.as_ref()).map_err(|e| Error::io("<stdout>", e))
}

fn run_verify(stdout: &mut dyn Write) -> Result<()> {
    let mut failures = Vec::new();
    let kernel = proposed_kernel();

    let c = orthogonalize(&kernel)?;
    let dev = c.matrix().orthonormality_deviation();
    let ok = dev < ORTHONORMAL_TOLERANCE;
    say(
        stdout,
        format!(
            "orthonormality max_deviation={dev:.3e} {}",
            if ok { "ok" } else { "FAIL" }
        ),
    )?;
    if !ok {
        failures.push("orthonormality");
    }

    let s = scaling_diagonal(&kernel)?;
    let g = kernel.gram();
    let scaled_ok = (0..16).all(|i| {
        let four_s = 4.0 * s.get(i);
        (1.0 / (four_s * four_s) - g[i * 16 + i] as f64 / 16.0).abs() < 1e-12
    });
    say(
        stdout,
        format!(
            "scaling diag(4S)^-2 == diag(T·Tᵀ)/16 {}",
            if scaled_ok { "ok" } else { "FAIL" }
        ),
    )?;
    if !scaled_ok {
        failures.push("scaling");
    }

    let ft = build_proposed_factorization()?;
    let exact = (0..16).all(|i| {
        let e: Vec<i64> = (0..16).map(|j| i64::from(i == j)).collect();
        ft.apply(&e).ok() == kernel.mul_vec(&e).ok()
    });
    say(
        stdout,
        format!(
            "factorization basis-vector equality {}",
            if exact { "ok" } else { "FAIL" }
        ),
    )?;
    if !exact {
        failures.push("factorization");
    }

    for s in ft.stages() {
        let kind = match s.stage {
            Stage::Butterfly(_) => "butterfly",
            Stage::Permutation(_) => "permutation",
        };
        say(
            stdout,
            format!("stage {} {kind} additions={}", s.label, s.stage.additions()),
        )?;
    }
    let ops = ft.count_ops();
    say(stdout, format!("additions={}", ops.additions))?;
    say(stdout, format!("multiplications={}", ops.multiplications))?;
    say(stdout, format!("bit_shifts={}", ops.bit_shifts))?;
    if (ops.additions, ops.multiplications, ops.bit_shifts) != (44, 0, 0) {
        failures.push("operation count");
    }

    if failures.is_empty() {
        say(stdout, "verify ok")
    } else {
        Err(Error::VerificationFailed(failures.join(", ")))
    }
}

fn run_metrics(transforms: &[String], rho: f64, out: &Option<PathBuf>, stdout: &mut dyn Write) -> Result<()> {
    let reg = registry_for(transforms)?;
    let complexity = complexity_csv(&complexity_table(&reg));
    let performance = performance_csv(&performance_table(&reg, rho)?);
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
            complexity.write(dir.join("complexity.csv"))?;
            performance.write(dir.join("performance.csv"))
        }
        None => {
            emit(&complexity, &None, stdout)?;
            say(stdout, "")?;
            emit(&performance, &None, stdout)
        }
    }
}

/// Expands directories into their `.pgm` files, sorted by path.
pub fn collect_inputs(inputs: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for p in inputs {
        if p.is_dir() {
            let mut found: Vec<PathBuf> = std::fs::read_dir(p)
                .map_err(|e| Error::io(p, e))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|f| f.is_file() && f.extension().is_some_and(|x| x.eq_ignore_ascii_case("pgm")))
                .collect();
            found.sort();
            files.extend(found);
        } else {
            files.push(p.clone());
        }
    }
    if files.is_empty() {
        return Err(Error::invalid("no .pgm files found in the inputs"));
    }
    Ok(files)
}

/// Result of a sweep run, for callers that want the skip list.
#[derive(Debug, Default)]
pub struct RunSummary {
    pub skipped: Vec<SkippedImage>,
}

fn run_sweep(
    inputs: &[PathBuf],
    transforms: &[String],
    r_values: &[usize],
    padding: Padding,
    out: &Option<PathBuf>,
    stdout: &mut dyn Write,
) -> Result<RunSummary> {
    let reg = registry_for(transforms)?;
    let mut corpus = Vec::new();
    let mut unreadable = Vec::new();
    for path in collect_inputs(inputs)? {
        let name = path.display().to_string();
        match read_pgm(&path) {
            Ok(image) => corpus.push(NamedImage::new(name, image)),
            Err(e) => unreadable.push(SkippedImage {
                name,
                reason: format!("[{}] {e}", e.code()),
            }),
        }
    }
    if corpus.is_empty() {
        return Err(Error::invalid(format!(
            "no readable images ({} skipped)",
            unreadable.len()
        )));
    }
    let report = sweep(&corpus, &reg, r_values, padding)?;
    emit(&sweep_csv(&report), out, stdout)?;
    let mut skipped = unreadable;
    skipped.extend(report.skipped);
    Ok(RunSummary { skipped })
}

fn run_compress(
    input: &Path,
    transform: &str,
    r: usize,
    padding: Padding,
    out: &Path,
    stdout: &mut dyn Write,
) -> Result<()> {
    let reg = TransformRegistry::builtin();
    let entry = reg.require(transform)?;
    let image = read_pgm(input)?;
    let codec = BlockCodec::new(TransformPath::for_entry(entry)?).with_padding(padding);
    let res = codec.compress(&image, r)?;
    write_pgm(&res.reconstructed, out)?;
    say(
        stdout,
        format!(
            "transform={transform} r={r} psnr_db={} ssim={} additions={} out={}",
            crate::io::format_number(res.psnr_db),
            crate::io::format_number(res.ssim),
            entry.cost.additions,
            out.display()
        ),
    )
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::invalid(format!("{THREADS_ENV}={v} is not a positive integer")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| Error::invalid(format!("thread pool: {e}")))
}

/// Executes a validated configuration.
pub fn run(config: &RunConfig, stdout: &mut (dyn Write + Send)) -> Result<RunSummary> {
    let pool = thread_pool()?;
    pool.install(|| match config {
        RunConfig::Verify => run_verify(stdout).map(|_| RunSummary::default()),
        RunConfig::Metrics { transforms, rho, out } => {
            run_metrics(transforms, *rho, out, stdout).map(|_| RunSummary::default())
        }
        RunConfig::Compress {
            input,
            transform,
            r,
            padding,
            out,
        } => run_compress(input, transform, *r, *padding, out, stdout).map(|_| RunSummary::default()),
        RunConfig::Sweep {
            inputs,
            transforms,
            r_values,
            padding,
            out,
        } => run_sweep(inputs, transforms, r_values, *padding, out, stdout),
    })
}

/// Process exit status for an error class.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidArgument(_) => 2,
        Error::UnknownTransform(_) | Error::DuplicateTransform(_) => 3,
        Error::Io { .. } => 4,
        Error::UnsupportedFormat { .. } | Error::MalformedHeader { .. } => 5,
        Error::TruncatedPayload { .. } => 6,
        Error::UnsupportedMaxval { .. } => 7,
        Error::InvalidDimensions { .. } => 8,
        Error::Parse { .. } => 9,
        Error::VerificationFailed(_) => 10,
        Error::FactorizationMismatch(_) | Error::InconsistentFactorization(_) => 11,
        Error::NotOrthogonalizable { .. } | Error::RankDeficient { .. } | Error::NotOrthonormal { .. } => 12,
        Error::NumericalDegeneracy(_) => 13,
    }
}

/// Single-line diagnostic: `error[<code>]: <message>`.
pub fn diagnostic(err: &Error) -> String {
    let msg = err.to_string().replace('\n', " ");
    format!("error[{}]: {msg}", err.code())
}
