use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = tricl::Cli::parse();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = tricl::run(cli, &mut stdout.lock(), &mut stderr.lock());
    ExitCode::from(code)
}
