use clap::Parser;
use igusa::cli::{render_error, run, JobSpec};
use std::process::ExitCode;

fn main() -> ExitCode {
    let job = JobSpec::parse();
    match run(&job) {
        Ok(r) => {
            print!("{}", r.text);
            if r.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("certified comparison failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprint!("{}", render_error(&e));
            ExitCode::from(2)
        }
    }
}
