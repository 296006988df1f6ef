use std::io;
use std::process::ExitCode;

use clap::Parser;
use cpforge::cli::{run, Cli, Io};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let stdin = io::stdin();
    let mut stdin = stdin.lock();
    let mut stdout = io::stdout().lock();
    let mut stderr = io::stderr().lock();
    let code = run(&cli, &mut Io { stdin: &mut stdin, stdout: &mut stdout, stderr: &mut stderr });
    ExitCode::from(code as u8)
}
