mod args;
mod cmd;
mod output;

use std::process::ExitCode;

use clap::Parser;
use zmeasure::kernel::KernelError;

use args::{Cli, Command, UsageError};

fn dispatch(cli: &Cli) -> anyhow::Result<bool> {
    match &cli.command {
        Command::Measure(a) => cmd::measure::run(a),
        Command::Verify(a) => cmd::verify::run(a),
        Command::Ensemble(c) => cmd::ensemble::run(c),
        Command::Kernel(a) => cmd::kernel::run(a),
        Command::Sample(a) => cmd::sample::run(a),
        Command::Convergence(a) => cmd::convergence::run(a),
    }
}

/// 0: all identities hold; 1: an identity failed; 2: invalid invocation.
fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let identity_failure =
                matches!(e.downcast_ref::<KernelError>(), Some(KernelError::Singular | KernelError::NotSkew));
            if identity_failure && e.downcast_ref::<UsageError>().is_none() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
