use std::process::ExitCode;

fn main() -> ExitCode {
    rcplan::cli::main()
}
