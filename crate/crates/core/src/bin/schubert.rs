use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(schubert_core::cli::main_from_env())
}
