use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(gini_cli::run(std::env::args_os()))
}
