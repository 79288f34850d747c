use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use multihead_cli::{run, Cli, Failure};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    let output = match run(&cli.command) {
        Ok(o) => o,
        Err(f) => {
            eprintln!("error: {}", f.message());
            return exit(&f);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &output.text),
        None => std::io::stdout().lock().write_all(output.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(3);
    }
    ExitCode::from(output.exit_code as u8)
}

fn exit(f: &Failure) -> ExitCode {
    ExitCode::from(f.exit_code() as u8)
}
