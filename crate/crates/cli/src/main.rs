use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use log::LevelFilter;
use ntk::{run, RunConfig, EXIT_BAD_INPUT};

/// `NTK_LOG` picks the log level: `off`, `steps` (one line per extension) or `full`.
fn init_logging() -> Result<(), String> {
    let level = match std::env::var("NTK_LOG").as_deref() {
        Err(_) | Ok("off") | Ok("") => LevelFilter::Off,
        Ok("steps") => LevelFilter::Info,
        Ok("full") => LevelFilter::Debug,
        Ok(other) => return Err(format!("NTK_LOG must be off, steps or full, not {other:?}")),
    };
    env_logger::Builder::new().filter_level(level).format_timestamp(None).target(env_logger::Target::Stderr).init();
    Ok(())
}

fn main() -> ExitCode {
    let config = RunConfig::parse();
    if let Err(msg) = init_logging() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_BAD_INPUT);
    }
    let outcome = run(&config);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code)
}
