use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let report = obstrukt::run_command(std::env::args());
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(report.rendered.as_bytes());
    let _ = out.flush();
    ExitCode::from(report.exit_code() as u8)
}
