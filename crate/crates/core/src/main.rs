use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use quartic_pell::cli::{self, EpsChoice, Format, SolveArgs, EXIT_USAGE};

#[derive(Parser, Debug)]
#[command(name = "quartic-pell", version, about = "Exact Pell-based solver for x^2 = 2y^4 - 1 and C*X^2a = D*Y^2b + E")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format: table, csv or json.
    #[arg(long, default_value = "table")]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print Pell pairs (x_n, t_n) for n = 0..=max-index.
    Generate {
        #[arg(long, default_value_t = 64)]
        max_index: u64,
        /// Seed branch: +1, -1 or both.
        #[arg(long, default_value = "both", allow_hyphen_values = true)]
        eps: EpsChoice,
        /// Cross-check every pair against the recurrence.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Solve an equation of the form C*x^2a = D*y^2b + E.
    Solve {
        equation: String,
        #[arg(long, default_value_t = 64)]
        max_index: u64,
        #[arg(long, default_value_t = 1_000_000)]
        v_bound: u64,
        #[arg(long, default_value_t = 64)]
        family_steps: u64,
        /// Admit solutions with a zero component.
        #[arg(long)]
        allow_zero: bool,
        /// Residue pre-filter for square tests: on or off.
        #[arg(long, default_value = "off", value_parser = ["on", "off"])]
        prefilter: String,
        #[command(flatten)]
        common: Common,
    },
    /// Verify the eigen-decomposition and the agreement of all generation paths.
    Check {
        #[arg(long, default_value_t = 64)]
        max_index: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Time recurrence, matrix power and closed form up to max-index.
    Bench {
        #[arg(long, default_value_t = 64)]
        max_index: u64,
        #[arg(long, default_value_t = 3)]
        repetitions: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let (report, format) = match args.command {
        Command::Generate { max_index, eps, verify, common } => {
            (cli::cmd_generate(max_index, eps, verify), common.format)
        }
        Command::Solve { equation, max_index, v_bound, family_steps, allow_zero, prefilter, common } => {
            let solve = SolveArgs {
                max_index,
                v_bound,
                family_steps,
                allow_zero,
                prefilter: prefilter == "on",
            };
            match cli::cmd_solve(&equation, &solve) {
                Ok(r) => (r, common.format),
                Err(e) => {
                    eprintln!("error: {e}");
                    eprintln!("error kind: {}", e.kind.code());
                    return ExitCode::from(EXIT_USAGE as u8);
                }
            }
        }
        Command::Check { max_index, common } => (cli::cmd_check(max_index), common.format),
        Command::Bench { max_index, repetitions, common } => {
            (cli::cmd_bench(max_index, repetitions), common.format)
        }
    };
    print!("{}", cli::render(&report, format));
    ExitCode::from(report.exit_code as u8)
}
