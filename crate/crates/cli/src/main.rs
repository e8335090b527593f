use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

mod commands;
mod describe;
mod input;

use commands::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (doc, code) = match commands::run(&cli) {
        Ok(v) => (v, 0),
        Err(e) => {
            let code = match &e {
                superspecial::Error::Domain(_)
                | superspecial::Error::NotFound { .. }
                | superspecial::Error::Inconclusive(_) => 2,
                superspecial::Error::Resource(_) => 3,
                superspecial::Error::Consistency(_) => 1,
            };
            let body = serde_json::json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            (body, code)
        }
    };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{doc}");
    ExitCode::from(code)
}
