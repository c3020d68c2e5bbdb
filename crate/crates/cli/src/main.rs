use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use quadperm_cli::{
    parse_checks, run_bound_table, run_diagnose, run_verify, Check, Format, HarnessError,
    RunConfig, RunMode,
};

#[derive(Parser)]
#[command(
    name = "quadperm",
    version,
    about = "Permutation quadrinomial verification harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the permutation criterion over many triples.
    Verify {
        #[arg(long)]
        m: u32,
        /// exhaustive | sample
        #[arg(long, default_value = "sample")]
        mode: String,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// jsonl | tsv
        #[arg(long, default_value = "jsonl")]
        format: String,
        /// Comma-separated subset of theorem,lemma4,curve,hasseweil,fmap.
        #[arg(long, default_value = "theorem,lemma4,curve,hasseweil,fmap")]
        checks: String,
        /// Number of triples also checked by brute force.
        #[arg(long)]
        bruteforce: Option<u64>,
        #[arg(long)]
        summary_only: bool,
    },
    /// Report everything about one triple.
    Diagnose {
        #[arg(long)]
        m: u32,
        /// Base-field element in hex.
        #[arg(long)]
        a1: String,
        /// Extension element as `u,v` in hex.
        #[arg(long)]
        a2: String,
        #[arg(long)]
        a3: String,
    },
    /// Tabulate the Hasse-Weil lower bound for d = 4.
    Bounds {
        #[arg(long, default_value_t = 4)]
        m_min: u32,
        #[arg(long, default_value_t = 20)]
        m_max: u32,
    },
}

fn verify_config(cmd: Command) -> Result<RunConfig, HarnessError> {
    let Command::Verify {
        m,
        mode,
        samples,
        seed,
        jobs,
        out,
        format,
        checks,
        bruteforce,
        summary_only,
    } = cmd
    else {
        unreachable!()
    };
    let mode: RunMode = mode.parse()?;
    let checks = parse_checks(&checks)?;
    Ok(RunConfig {
        m,
        mode,
        samples: if mode == RunMode::Sample { samples } else { 0 },
        seed,
        jobs,
        output: out,
        format: format.parse::<Format>()?,
        checks: if checks.is_empty() {
            Check::ALL.into_iter().collect()
        } else {
            checks
        },
        bruteforce,
        summary_only,
    })
}

fn verify(cfg: RunConfig) -> Result<i32, HarnessError> {
    cfg.validate()?;
    let mut out: Box<dyn Write> = match &cfg.output {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let start = Instant::now();
    let summary = run_verify(&cfg, &mut out)?;
    eprintln!(
        "{} triples, {} discrepancies, {:.3} s",
        summary.triples,
        summary.discrepancies,
        start.elapsed().as_secs_f64()
    );
    Ok(summary.exit_code())
}

fn run(cli: Cli) -> Result<i32, HarnessError> {
    match cli.command {
        cmd @ Command::Verify { .. } => verify(verify_config(cmd)?),
        Command::Diagnose { m, a1, a2, a3 } => {
            let d = run_diagnose(m, &a1, &a2, &a3)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&d).expect("diagnosis serializes")
            );
            Ok(0)
        }
        Command::Bounds { m_min, m_max } => {
            print!("{}", run_bound_table(m_min, m_max)?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
