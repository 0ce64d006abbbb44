//! Command implementations behind the `pthash` binary. Each command returns
//! a report value; the binary prints it and maps errors to exit codes.

pub mod keys;

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use pthash::analysis::{self, AnalysisError, EntropyRow};
use pthash::bits::BitVector;
use pthash::{build_unencoded, BuildConfig, BuildError, BuildOutput, DecodeError, EncoderKind, Exec, Mphf};
use thiserror::Error;

pub use keys::{KeySource, Keys};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot decode {path}: {source}")]
    Decode {
        path: PathBuf,
        #[source]
        source: DecodeError,
    },
    #[error("duplicate key {key:?} on lines {first_line} and {line}")]
    DuplicateKey {
        key: String,
        first_line: usize,
        line: usize,
    },
    #[error("build failed: {0}")]
    Build(#[from] BuildError),
    #[error("check failed: {0}")]
    Check(CheckFailure),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

impl CliError {
    /// 0 success, 1 build or verification failure, 2 usage error, 3 I/O error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } | CliError::Decode { .. } => 3,
            CliError::Analysis(AnalysisError::Io { .. } | AnalysisError::Csv { .. }) => 3,
            CliError::DuplicateKey { .. } | CliError::Build(_) | CliError::Check(_) | CliError::Analysis(_) => 1,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn build_output(keys: &Keys, cfg: &BuildConfig) -> Result<BuildOutput, BuildError> {
    match keys {
        Keys::U64(k) => build_unencoded(k, cfg),
        Keys::Bytes(k) => build_unencoded(k, cfg),
    }
}

#[derive(Debug, Clone)]
pub struct BuildSummary {
    pub n: u64,
    pub n_prime: u64,
    pub m: u64,
    pub seed: u64,
    pub attempts: u32,
    pub encoder: EncoderKind,
    pub map_time: Duration,
    pub search_time: Duration,
    pub free_time: Duration,
    pub encode_time: Duration,
    pub total_time: Duration,
    pub bits_per_key: f64,
}

impl std::fmt::Display for BuildSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "n={} n'={} m={} seed={} attempts={} encoder={} map+order={:.3}s search={:.3}s free={:.3}s encode={:.3}s total={:.3}s bits/key={:.3}",
            self.n,
            self.n_prime,
            self.m,
            self.seed,
            self.attempts,
            self.encoder,
            self.map_time.as_secs_f64(),
            self.search_time.as_secs_f64(),
            self.free_time.as_secs_f64(),
            self.encode_time.as_secs_f64(),
            self.total_time.as_secs_f64(),
            self.bits_per_key
        )
    }
}

/// Builds over `keys` and encodes with `cfg.encoder`.
pub fn build_mphf(keys: &Keys, cfg: &BuildConfig) -> Result<(Mphf, BuildSummary), CliError> {
    let start = Instant::now();
    let out = build_output(keys, cfg)?;
    let t = Instant::now();
    let mphf = Mphf::from_output(&out, cfg.encoder);
    let encode_time = t.elapsed();
    let summary = BuildSummary {
        n: out.n,
        n_prime: out.params.n_prime,
        m: out.params.m,
        seed: out.seed,
        attempts: out.attempts,
        encoder: cfg.encoder,
        map_time: out.timings.map,
        search_time: out.timings.search,
        free_time: out.timings.free,
        encode_time,
        total_time: start.elapsed(),
        bits_per_key: mphf.bits_per_key(),
    };
    Ok((mphf, summary))
}

pub fn cmd_build(source: &KeySource, cfg: &BuildConfig, out: &Path) -> Result<BuildSummary, CliError> {
    let keys = source.load()?;
    let (mphf, summary) = build_mphf(&keys, cfg)?;
    std::fs::write(out, mphf.to_bytes()).map_err(io_err(out))?;
    Ok(summary)
}

pub fn load_mphf(path: &Path) -> Result<Mphf, CliError> {
    let bytes = std::fs::read(path).map_err(io_err(path))?;
    Mphf::from_bytes(&bytes).map_err(|source| CliError::Decode {
        path: path.to_path_buf(),
        source,
    })
}

/// First reason a key set fails to map bijectively onto `[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckFailure {
    #[error("function covers {expected} keys but {actual} were supplied")]
    CountMismatch { expected: u64, actual: u64 },
    #[error("function was built over {expected:?} keys, got {actual:?} keys")]
    KindMismatch {
        expected: pthash::KeyKind,
        actual: pthash::KeyKind,
    },
    #[error("key #{index} ({key}) evaluates to {value}, outside [0, {n})")]
    OutOfRange {
        index: usize,
        key: String,
        value: u64,
        n: u64,
    },
    #[error("key #{index} ({key}) collides with an earlier key at {value}")]
    Collision { index: usize, key: String, value: u64 },
}

fn describe(keys: &Keys, i: usize) -> String {
    match keys {
        Keys::U64(k) => k[i].to_string(),
        Keys::Bytes(k) => format!("{:?}", String::from_utf8_lossy(&k[i])),
    }
}

/// Verifies that `mphf` is minimal and perfect over `keys`.
pub fn check_keys(mphf: &Mphf, keys: &Keys, exec: Exec) -> Result<(), CheckFailure> {
    let n = mphf.num_keys();
    if keys.kind() != mphf.key_kind() {
        return Err(CheckFailure::KindMismatch {
            expected: mphf.key_kind(),
            actual: keys.kind(),
        });
    }
    let values = match keys {
        Keys::U64(k) => mphf.evaluate_all(k, exec),
        Keys::Bytes(k) => mphf.evaluate_all(k, exec),
    };
    let mut seen = BitVector::new(n as usize);
    for (index, &value) in values.iter().enumerate() {
        if value >= n {
            return Err(CheckFailure::OutOfRange {
                index,
                key: describe(keys, index),
                value,
                n,
            });
        }
        if seen.get(value as usize) {
            return Err(CheckFailure::Collision {
                index,
                key: describe(keys, index),
                value,
            });
        }
        seen.set(value as usize, true);
    }
    if values.len() as u64 != n {
        return Err(CheckFailure::CountMismatch {
            expected: n,
            actual: values.len() as u64,
        });
    }
    Ok(())
}

pub fn cmd_check(mphf_path: &Path, source: &KeySource, exec: Exec) -> Result<u64, CliError> {
    let mphf = load_mphf(mphf_path)?;
    let keys = source.load()?;
    check_keys(&mphf, &keys, exec).map_err(CliError::Check)?;
    Ok(mphf.num_keys())
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub runs: Vec<f64>,
    pub mean_ns_per_key: f64,
    pub sink: u64,
}

/// Evaluates every key `runs` times on the calling thread.
pub fn bench_keys(mphf: &Mphf, keys: &Keys, runs: usize) -> Result<BenchReport, CliError> {
    if runs == 0 {
        return Err(CliError::Usage("--runs must be at least 1".into()));
    }
    if keys.is_empty() {
        return Err(CliError::Usage("no keys to look up".into()));
    }
    let mut sink = 0u64;
    let mut per_run = Vec::with_capacity(runs);
    for _ in 0..runs {
        let start = Instant::now();
        match keys {
            Keys::U64(k) => {
                for key in k {
                    sink ^= mphf.evaluate(key);
                }
            }
            Keys::Bytes(k) => {
                for key in k {
                    sink ^= mphf.evaluate(key.as_slice());
                }
            }
        }
        per_run.push(start.elapsed().as_nanos() as f64 / keys.len() as f64);
        sink = std::hint::black_box(sink);
    }
    let mean = per_run.iter().sum::<f64>() / runs as f64;
    Ok(BenchReport {
        runs: per_run,
        mean_ns_per_key: mean,
        sink,
    })
}

pub fn cmd_bench(mphf_path: &Path, source: &KeySource, runs: usize) -> Result<BenchReport, CliError> {
    if runs == 0 {
        return Err(CliError::Usage("--runs must be at least 1".into()));
    }
    let mphf = load_mphf(mphf_path)?;
    let keys = source.load()?;
    bench_keys(&mphf, &keys, runs)
}

#[derive(Debug, Clone)]
pub struct StatsReport {
    pub entropy: Vec<EntropyRow>,
    pub empty_fraction: Vec<(f64, f64)>,
    pub files: Vec<PathBuf>,
}

fn c_label(c: f64) -> String {
    format!("{c}")
}

/// Builds once per `c` value and writes entropy, trial-profile and bucket
/// profile CSVs into `out_dir`; search timings only when `with_timings`.
pub fn cmd_stats(
    source: &KeySource,
    base: &BuildConfig,
    cs: &[f64],
    out_dir: &Path,
    with_timings: bool,
) -> Result<StatsReport, CliError> {
    if cs.is_empty() {
        return Err(CliError::Usage("at least one -c value is required".into()));
    }
    std::fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
    let keys = source.load()?;
    let mut report = StatsReport {
        entropy: Vec::new(),
        empty_fraction: Vec::new(),
        files: Vec::new(),
    };
    for &c in cs {
        let cfg = BuildConfig { c, ..base.clone() };
        let out = build_output(&keys, &cfg)?;
        let p2 = out.params.p2 as usize;
        let entropy = if p2 > 0 && p2 < out.pilots.len() {
            analysis::front_back_entropy(&out.pilots, p2)?
        } else {
            let h = analysis::empirical_entropy(out.pilots.as_slice())?;
            analysis::EntropyReport {
                whole: h,
                front: h,
                back: h,
                distinct: analysis::distinct_count(out.pilots.as_slice()),
            }
        };
        report.entropy.push(EntropyRow::new(c, &entropy));
        report
            .empty_fraction
            .push((c, analysis::empty_bucket_fraction(&out.buckets)));

        let label = c_label(c);
        let path = out_dir.join(format!("trials_c{label}.csv"));
        analysis::emit_csv(&analysis::trial_profile(&out.stats, &out.buckets), &path)?;
        report.files.push(path);

        let path = out_dir.join(format!("buckets_c{label}.csv"));
        analysis::emit_csv(&analysis::bucket_profile(&out.buckets, out.params.n_prime), &path)?;
        report.files.push(path);

        if with_timings {
            let path = out_dir.join(format!("search_time_c{label}.csv"));
            analysis::emit_csv(&analysis::search_time_profile(&out.stats), &path)?;
            report.files.push(path);
        }
    }
    let path = out_dir.join("entropy.csv");
    analysis::emit_csv(&report.entropy, &path)?;
    report.files.push(path);
    Ok(report)
}
