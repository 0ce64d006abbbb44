use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pthash::{BuildConfig, EncoderKind, Exec};
use pthash_cli::{cmd_bench, cmd_build, cmd_check, cmd_stats, CliError, KeySource};

#[derive(Parser)]
#[command(
    name = "pthash",
    version,
    about = "Build, verify and measure minimal perfect hash functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a function over a key set and write it to a file.
    Build {
        #[command(flatten)]
        keys: KeyArgs,
        #[command(flatten)]
        build: BuildArgs,
        /// Average keys per bucket scale (larger is smaller and slower to build).
        #[arg(short, default_value_t = 7.0)]
        c: f64,
        #[arg(short, long, default_value = "dd", value_parser = parse_encoder)]
        encoder: EncoderKind,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Verify that a stored function maps the keys one-to-one onto [0, n).
    Check {
        #[arg(short, long)]
        mphf: PathBuf,
        #[command(flatten)]
        keys: KeyArgs,
        /// Evaluate keys on all cores.
        #[arg(long)]
        parallel: bool,
    },
    /// Time lookups of every key, single-threaded.
    Bench {
        #[arg(short, long)]
        mphf: PathBuf,
        #[command(flatten)]
        keys: KeyArgs,
        #[arg(long, default_value_t = 5)]
        runs: usize,
    },
    /// Build once per c value and write entropy and search profiles as CSV.
    Stats {
        #[command(flatten)]
        keys: KeyArgs,
        #[command(flatten)]
        build: BuildArgs,
        /// One or more values, comma separated or repeated.
        #[arg(short, value_delimiter = ',', default_value = "7")]
        c: Vec<f64>,
        #[arg(long, default_value = ".")]
        csv_out: PathBuf,
        /// Also write wall-clock search timings (not reproducible).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Args)]
struct KeyArgs {
    /// Generate this many distinct random 64-bit keys.
    #[arg(
        short = 'n',
        long,
        conflicts_with = "input_file",
        required_unless_present = "input_file"
    )]
    num_keys: Option<u64>,
    #[arg(long, default_value_t = 0)]
    rng_seed: u64,
    /// Read newline-delimited keys from a file.
    #[arg(short, long)]
    input_file: Option<PathBuf>,
}

impl KeyArgs {
    fn source(&self) -> KeySource {
        match (&self.input_file, self.num_keys) {
            (Some(path), _) => KeySource::File { path: path.clone() },
            (None, Some(count)) => KeySource::Random {
                count,
                rng_seed: self.rng_seed,
            },
            (None, None) => unreachable!("clap requires one key source"),
        }
    }
}

#[derive(Args)]
struct BuildArgs {
    /// Maximum load factor of the search table, in (0, 1].
    #[arg(short, long, default_value_t = 0.99)]
    alpha: f64,
    /// Construction seed; drawn at random and printed when absent.
    #[arg(short, long)]
    seed: Option<u64>,
    /// Hash and group keys on all cores.
    #[arg(long)]
    parallel: bool,
}

impl BuildArgs {
    fn config(&self, c: f64) -> BuildConfig {
        let seed = self.seed.unwrap_or_else(rand::random);
        BuildConfig::new(c, self.alpha)
            .with_seed(seed)
            .with_exec(exec(self.parallel))
    }
}

fn exec(parallel: bool) -> Exec {
    if parallel {
        Exec::default()
    } else {
        Exec::Sequential
    }
}

fn parse_encoder(s: &str) -> Result<EncoderKind, String> {
    s.parse()
        .map_err(|_| format!("unknown encoder {s:?}; expected one of c, cc, d, dd, def, ef, sdc"))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Build {
            keys,
            build,
            c,
            encoder,
            output,
        } => {
            let cfg = build.config(c).with_encoder(encoder);
            eprintln!("seed={}", cfg.seed);
            let summary = cmd_build(&keys.source(), &cfg, &output)?;
            println!("{summary}");
        }
        Command::Check { mphf, keys, parallel } => {
            let n = cmd_check(&mphf, &keys.source(), exec(parallel))?;
            println!("ok: {n} keys map one-to-one onto [0, {n})");
        }
        Command::Bench { mphf, keys, runs } => {
            let r = cmd_bench(&mphf, &keys.source(), runs)?;
            for (i, ns) in r.runs.iter().enumerate() {
                println!("run {}: {ns:.2} ns/key", i + 1);
            }
            println!("mean: {:.2} ns/key (sink {:#018x})", r.mean_ns_per_key, r.sink);
        }
        Command::Stats {
            keys,
            build,
            c,
            csv_out,
            timings,
        } => {
            let cfg = build.config(c[0]);
            eprintln!("seed={}", cfg.seed);
            let report = cmd_stats(&keys.source(), &cfg, &c, &csv_out, timings)?;
            println!("c\tH_all\tH_front\tH_back\tr\tempty");
            for (row, (_, empty)) in report.entropy.iter().zip(&report.empty_fraction) {
                println!(
                    "{}\t{:.2}\t{:.2}\t{:.2}\t{}\t{:.4}",
                    row.c, row.h_all, row.h_front, row.h_back, row.r, empty
                );
            }
            for f in &report.files {
                eprintln!("wrote {}", f.display());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
