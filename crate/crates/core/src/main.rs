use std::process::ExitCode;

fn main() -> ExitCode {
    elect_advice::cli::main()
}
