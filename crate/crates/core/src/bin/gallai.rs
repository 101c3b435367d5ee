use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = gallai::cli::run(std::env::args_os());
    let report = result.report.as_bytes();
    let written = if result.code == 0 {
        std::io::stdout().write_all(report)
    } else {
        std::io::stderr().write_all(report)
    };
    if written.is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(result.code as u8)
}
