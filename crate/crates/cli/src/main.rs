use std::io::IsTerminal;
use std::process::ExitCode;

use clap::Parser;

use qmix_cli::output::{emit, Format};
use qmix_cli::{run, Cli, CliError, CliResult};

fn execute(cli: &Cli) -> CliResult<()> {
    let format = cli.format.unwrap_or(if std::io::stdout().is_terminal() { Format::Table } else { Format::Json });
    let output = match cli.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(format!("--jobs {n}: {e}")))?
            .install(|| run(cli))?,
        None => run(cli)?,
    };
    emit(&output, format)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qmix: {e}");
            ExitCode::FAILURE
        }
    }
}
