use std::io;
use std::process::ExitCode;

use sdom_core::cli::{run, Io};

fn main() -> ExitCode {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let stdin = io::stdin();
    let mut io = Io {
        stdout: &mut stdout.lock(),
        stderr: &mut stderr.lock(),
        stdin: &mut stdin.lock(),
    };
    let code = run(std::env::args_os(), &mut io);
    ExitCode::from(code as u8)
}
