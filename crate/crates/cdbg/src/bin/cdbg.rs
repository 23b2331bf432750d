use std::io::Write;
use std::process::ExitCode;

use cdbg::cli;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cmd = match cli::parse_args(&args) {
        Ok(cmd) => cmd,
        Err(e) => {
            eprintln!("cdbg: {}", e.message);
            eprint!("{}", cli::USAGE);
            return ExitCode::from(e.code as u8);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli::run(cmd, &mut out) {
        Ok(()) => {
            let _ = out.flush();
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("cdbg: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
