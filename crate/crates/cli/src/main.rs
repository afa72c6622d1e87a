mod args;
mod config;
mod failure;
mod gaussian_cmd;
mod ldic_cmd;
mod output;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command, GaussianCommand, LdicCommand};
use crate::failure::Failure;

fn main() -> ExitCode {
    let argv = match config::merged_args(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(f) => return report(f),
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version also land here, with a success code
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => report(f),
    }
}

fn report(f: Failure) -> ExitCode {
    eprintln!("error: {f}");
    ExitCode::from(f.code())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Ldic { command } => match command {
            LdicCommand::Region(a) => ldic_cmd::region(&a),
            LdicCommand::SumrateSweep(a) => ldic_cmd::sumrate_sweep(&a),
            LdicCommand::Simulate(a) => ldic_cmd::simulate(&a),
        },
        Command::Gaussian { command } => match command {
            GaussianCommand::Bounds(a) => gaussian_cmd::bounds(&a),
            GaussianCommand::GapSweep(a) => gaussian_cmd::gap_sweep(&a),
        },
    }
}
