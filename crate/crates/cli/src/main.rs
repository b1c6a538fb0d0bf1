use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    match zelcoh_cli::run(std::env::args_os()) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.stdout.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("{}", e.message.trim_end());
            ExitCode::from(e.code)
        }
    }
}
