use std::process::ExitCode;

fn main() -> ExitCode {
    let (outcome, out) = perfcert_cli::execute(std::env::args_os());
    if let Some(msg) = &outcome.diagnostic {
        eprintln!("{}", msg.trim_end());
    }
    if let Some(doc) = &outcome.document {
        match &out {
            Some(path) if outcome.exit_code != perfcert_cli::INPUT_ERROR => {
                if let Err(e) = std::fs::write(path, doc) {
                    eprintln!("error: writing {}: {e}", path.display());
                    return ExitCode::from(perfcert_cli::INPUT_ERROR as u8);
                }
            }
            _ => print!("{doc}"),
        }
    }
    ExitCode::from(outcome.exit_code as u8)
}
