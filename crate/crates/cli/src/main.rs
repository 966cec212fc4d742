use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let exec = gfcoh_cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(exec.stdout.as_bytes());
    let _ = std::io::stderr().write_all(exec.stderr.as_bytes());
    ExitCode::from(u8::try_from(exec.code).unwrap_or(1))
}
