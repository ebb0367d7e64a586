use std::process::ExitCode;

use ffdist_cli::parse_cli;
use ffdist_core::harness::summary_text;
use ffdist_core::run_suite;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let config = match parse_cli(std::env::args_os()) {
        Ok(config) => config,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                print!("{e}");
            } else {
                eprint!("{e}");
                if !e.to_string().ends_with('\n') {
                    eprintln!();
                }
            }
            return ExitCode::from(code as u8);
        }
    };
    log::info!("config: {config:?}");
    match run_suite(&config) {
        Ok(report) => {
            print!("{}", summary_text(&report));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
