use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use mmpkit::{render, run, AnalysisRequest, Cli, EXIT_OK};

fn main() -> ExitCode {
    let req = AnalysisRequest::from(Cli::parse());
    let (report, code) = run(&req);
    let out = render(&report, req.format);
    // errors go to stderr in text mode so that pipes only see results
    let written = if code != EXIT_OK && req.format == mmpkit::Format::Text {
        std::io::stderr().write_all(out.as_bytes())
    } else {
        std::io::stdout().write_all(out.as_bytes())
    };
    if written.is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}
