use clap::Parser;

mod args;
mod commands;
mod output;

use args::{Cli, Command};
use commands::CliError;

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Response { a, b, medium, out } => commands::response(a, b, &medium, &out),
        Command::Scan { a, b, medium, out, run } => commands::scan(a, b, &medium, &out, &run),
        Command::Dispersion { mode, a, b, medium, out, run } => {
            commands::dispersion_cmd(mode, a, b, &medium, &out, &run)
        }
        Command::NrScan { omega, q, pf, alpha, units, out } => commands::nr_scan(omega, q, pf, alpha, units, &out),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("relresp: {e}");
        std::process::exit(e.exit_code());
    }
}
