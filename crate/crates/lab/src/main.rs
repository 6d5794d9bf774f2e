use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let config = match toroidal_lab::parse_args(std::env::args_os()) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let outcome = toroidal_lab::run(&config);
    for m in &outcome.messages {
        eprintln!("{m}");
    }
    let written = match &config.out {
        Some(path) => std::fs::write(path, &outcome.bytes),
        None => std::io::stdout().lock().write_all(&outcome.bytes),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.code as u8)
}
