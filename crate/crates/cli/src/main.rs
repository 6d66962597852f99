use std::io;
use std::process::ExitCode;

use clap::Parser;
use env_logger::Env;

use ris_cli::Cli;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    env_logger::Builder::from_env(Env::new().filter_or("RISPLAN_LOG", "warn")).init();
    match ris_cli::run(&cli, &mut io::stdout().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("risplan: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
