mod args;
mod run;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use args::Cli;

/// Writes the text to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) {
    let mut out = io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
        }
    }
}

fn pretty(doc: &serde_json::Value) -> String {
    serde_json::to_string_pretty(doc).expect("valid JSON") + "\n"
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }

    match run::run(&cli) {
        Ok(out) => {
            if cli.json {
                emit(&pretty(&out.json));
            } else {
                let mut text = String::new();
                for line in &out.lines {
                    text.push_str(line);
                    text.push('\n');
                }
                emit(&text);
            }
            ExitCode::from(if out.negative { 1 } else { 0 })
        }
        Err(e) => {
            let code = e.exit_code();
            if cli.json {
                emit(&pretty(
                    &serde_json::json!({ "error": e.to_string(), "exit_code": code }),
                ));
            }
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}
