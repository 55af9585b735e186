use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let code = satlab::cli::run(std::env::args_os(), &mut io::stdin(), &mut io::stdout().lock(), &mut io::stderr());
    ExitCode::from(code.clamp(0, 255) as u8)
}
