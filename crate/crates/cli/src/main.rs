use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hecl_cli::error::exit;
use hecl_cli::pipeline::factored;
use hecl_cli::search::{conductor_of, search, SearchParams, DEFAULT_SEED};
use hecl_cli::selftest::selftest;
use hecl_cli::{io, run, PipelineError, RunOptions};
use hecl_fe::Verdict;
use num_bigint::BigUint;

#[derive(Parser)]
#[command(name = "hecl", version, about = "L-series of hyperelliptic curves: conductor, coefficients and functional equation")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bad primes, conductor, coefficients and root number of a curve file.
    Analyze {
        curve: PathBuf,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Coefficient cutoff; overrides the curve file.
        #[arg(long = "M", alias = "m")]
        cutoff: Option<u64>,
        /// Working precision in bits.
        #[arg(long)]
        precision: Option<u32>,
        /// Residual tolerance.
        #[arg(long)]
        tolerance: Option<f64>,
        /// Reuse or create an L-series cache file.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Random semistable curves with small conductor, as curve JSON lines.
    Search {
        #[arg(long)]
        genus: usize,
        #[arg(long = "coeff-bound")]
        coeff_bound: i64,
        #[arg(long = "max-conductor")]
        max_conductor: BigUint,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Maximum number of samples.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Fixture regression suite.
    Selftest {
        /// Also check the functional equation of every fixture.
        #[arg(long)]
        full: bool,
        #[arg(long)]
        precision: Option<u32>,
    },
}

fn fail(e: &PipelineError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(exit::INTERNAL as u8);
        }
    }
    match cli.command {
        Command::Analyze {
            curve,
            out,
            cutoff,
            precision,
            tolerance,
            cache,
        } => {
            let input = match io::load_curve(&curve) {
                Ok(c) => c,
                Err(e) => return fail(&e),
            };
            let options = RunOptions {
                cutoff,
                precision_bits: precision,
                tolerance,
                test_points: None,
                cache,
            };
            let report = match run(&input, &options) {
                Ok(r) => r,
                Err(e) => return fail(&e),
            };
            let text = io::to_json(&report);
            match out {
                Some(path) => {
                    if let Err(e) = io::write(&path, &text) {
                        return fail(&e);
                    }
                }
                None => print!("{text}"),
            }
            eprintln!(
                "N = {} = {}, M = {}, verdict {:?}, root number {}",
                report.conductor,
                factored(&report.bad_primes),
                report.cutoff,
                report.fe.verdict,
                report.fe.root_number.map_or("undetermined".to_string(), |w| format!("{w:+}"))
            );
            match report.fe.verdict {
                Verdict::Verified => ExitCode::from(exit::VERIFIED as u8),
                _ => ExitCode::from(exit::NOT_VERIFIED as u8),
            }
        }
        Command::Search {
            genus,
            coeff_bound,
            max_conductor,
            count,
            seed,
            budget,
        } => {
            let params = SearchParams {
                genus,
                coeff_bound,
                max_conductor,
                count,
                seed,
                budget,
            };
            let outcome = match search(&params) {
                Ok(o) => o,
                Err(e) => return fail(&e),
            };
            for c in &outcome.curves {
                println!("{}", serde_json::to_string(c).expect("serializable"));
                if let Ok(n) = conductor_of(c) {
                    eprintln!("N = {n}");
                }
            }
            if outcome.exhausted {
                eprintln!(
                    "warning: sampling budget exhausted after {} samples; {} of {} curves found",
                    outcome.samples,
                    outcome.curves.len(),
                    count
                );
            }
            ExitCode::SUCCESS
        }
        Command::Selftest { full, precision } => {
            let options = RunOptions {
                precision_bits: precision,
                ..RunOptions::default()
            };
            let outcomes = selftest(full, &options);
            let mut ok = true;
            for o in &outcomes {
                println!("{} {}: {}", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail);
                ok &= o.passed;
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(exit::INTERNAL as u8)
            }
        }
    }
}
