use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use liaison_cli::harness::{run_harness, Counts};
use liaison_cli::repro::repro7;
use liaison_cli::{emit, run_source, Flags, OutputRecord, EXIT_INTERNAL, EXIT_PARSE};

#[derive(Parser)]
#[command(name = "liaison", version, about = "Linkage of modules over local rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Emit one JSON object per record.
    #[arg(long, global = true)]
    json: bool,
    /// Resolution bound and top of the Ext/Tor window.
    #[arg(long, global = true, default_value_t = 8)]
    bound: usize,
    /// Characteristic of the field `k`: 0 or a prime.
    #[arg(long = "char", global = true, default_value_t = 32003)]
    characteristic: u32,
    /// Seed for the sampling harnesses.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Run the heavy stages of the reproduction.
    #[arg(long, global = true)]
    deep: bool,
    /// Stop at the first failed check.
    #[arg(long, global = true)]
    fail_fast: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a script.
    Run { script: std::path::PathBuf },
    /// Reproduce the counterexample computations over k[x,y,z]/(x^2+y^2+z^2).
    Repro7,
    /// Run the seeded property harnesses.
    Harness,
}

fn print(records: &[OutputRecord], json: bool) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(emit(records, json).as_bytes());
}

fn checks_exit(records: &[OutputRecord]) -> u8 {
    if records.iter().any(|r| r.check.as_ref().is_some_and(|c| !c.pass)) {
        1
    } else {
        0
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = cli.common;
    let flags = Flags {
        json: c.json,
        bound: c.bound,
        characteristic: c.characteristic,
        seed: c.seed,
        deep: c.deep,
        fail_fast: c.fail_fast,
    };
    if let Err(e) = flags.field() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_PARSE as u8);
    }
    match cli.command {
        Command::Run { script } => {
            let source = match std::fs::read_to_string(&script) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", script.display());
                    return ExitCode::from(EXIT_PARSE as u8);
                }
            };
            match run_source(&source, &flags) {
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
                Ok(outcome) => {
                    print(&outcome.records, flags.json);
                    if let Some((stmt, e)) = &outcome.error {
                        eprintln!("error in `{stmt}`: {e}");
                    }
                    ExitCode::from(outcome.exit_code() as u8)
                }
            }
        }
        Command::Repro7 => match repro7(&flags) {
            Ok(r) => {
                print(&r.records, flags.json);
                ExitCode::from(checks_exit(&r.records))
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_INTERNAL as u8)
            }
        },
        Command::Harness => match run_harness(&flags, Counts::default()) {
            Ok(r) => {
                print(&r.records, flags.json);
                for s in &r.sections {
                    eprintln!("{}: {} cases, {} failed", s.name, s.cases, s.failures.len());
                }
                ExitCode::from(checks_exit(&r.records))
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_INTERNAL as u8)
            }
        },
    }
}
