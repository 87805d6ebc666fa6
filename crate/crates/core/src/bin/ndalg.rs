use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ndalg::cli::{self, Outcome};

/// Certify jump-symmetry actions on generalized solutions of U' = F.
#[derive(Parser)]
#[command(name = "ndalg", version, about)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify that the transformed solution still solves the equation.
    Verify { scenario: PathBuf },
    /// Write sampled representative values for the scenario's export block.
    Export {
        scenario: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Compose action descriptors (JSON) into one.
    Compose {
        #[arg(required = true)]
        descriptors: Vec<String>,
    },
    /// Print samples of the cutoff ρ.
    RhoTable {
        #[arg(long, num_args = 3, value_names = ["LO", "HI", "N"], allow_negative_numbers = true)]
        grid: Vec<String>,
    },
}

fn rho_table(grid: &[String]) -> Outcome {
    let bad = || Outcome {
        code: cli::EXIT_MALFORMED,
        stdout: String::new(),
        stderr: "error: --grid expects LO HI N\n".into(),
    };
    let (Ok(lo), Ok(hi), Ok(n)) = (grid[0].parse::<f64>(), grid[1].parse::<f64>(), grid[2].parse::<usize>()) else {
        return bad();
    };
    cli::cmd_rho_table(lo, hi, n)
}

fn run(args: Args) -> Outcome {
    match args.command {
        Command::Verify { scenario } => match cli::index_cap_from_env() {
            Ok(cap) => cli::cmd_verify(&scenario, cap),
            Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
        },
        Command::Export { scenario, output } => cli::cmd_export(&scenario, &output),
        Command::Compose { descriptors } => cli::cmd_compose(&descriptors),
        Command::RhoTable { grid } => rho_table(&grid),
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { cli::EXIT_MALFORMED } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let outcome = run(args);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
