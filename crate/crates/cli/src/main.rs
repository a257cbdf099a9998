use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use confluence_cli::{run_file, Flags};

/// Run the tasks of a problem file and report the verdicts.
#[derive(Parser)]
#[command(name = "qconf", version)]
struct Args {
    /// Problem file (JSON).
    file: PathBuf,
    /// Override the field precision N.
    #[arg(long)]
    precision: Option<u32>,
    /// Series truncation order M.
    #[arg(long, default_value_t = default_truncation())]
    truncation: usize,
    /// Run independent tasks on several threads.
    #[arg(long)]
    parallel: bool,
    /// Deform even without a passing admissibility report; results are marked uncertified.
    #[arg(long)]
    override_admissibility: bool,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
}

fn default_truncation() -> usize {
    Flags::default().truncation
}

fn main() -> ExitCode {
    let args = Args::parse();
    let flags = Flags {
        precision: args.precision,
        truncation: args.truncation,
        parallel: args.parallel,
        override_admissibility: args.override_admissibility,
    };
    let out = match run_file(&args.file, &flags) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("qconf: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    print!("{}", out.report.table());
    let json = out.report.to_json();
    match &args.report {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json) {
                eprintln!("qconf: {}: {e}", path.display());
                return ExitCode::from(4);
            }
        }
        None => print!("\n{json}"),
    }
    ExitCode::from(out.exit_code as u8)
}
