use std::process::ExitCode;

fn main() -> ExitCode {
    wmw_design::cli::run()
}
