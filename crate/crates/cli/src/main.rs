use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(xray_hyperbolic_cli::run(std::env::args_os()))
}
