use std::process::ExitCode;

use geopursuit::cli::{load_run_spec, run, CliError};

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match load_run_spec(&args).and_then(|spec| run(&spec)) {
        Ok(report) => {
            for line in &report.stdout {
                println!("{line}");
            }
            ExitCode::from(report.exit_code as u8)
        }
        Err(CliError::Help(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("{}", msg.trim_end());
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
