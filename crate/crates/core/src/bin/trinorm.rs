use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let args = std::env::args().collect();
    let code = trinorm::cli::run(args, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
