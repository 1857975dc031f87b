mod eval;
mod sample;
mod simulate;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "gjtrig", version, about = "Hyperspherical trigonometry and generalized Jacobi functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run randomized identity suites and print a JSON report.
    Verify(verify::VerifyArgs),
    /// Evaluate elliptic functions and print JSON.
    #[command(subcommand)]
    Eval(eval::EvalCommand),
    /// Integrate a top and write a CSV trajectory.
    #[command(subcommand)]
    Simulate(simulate::SimulateCommand),
    /// Draw random simplex configurations as JSON lines.
    Sample(sample::SampleArgs),
}

/// What a subcommand produced: text for stdout and whether it passed.
pub struct Output {
    pub text: String,
    pub pass: bool,
}

impl Output {
    pub fn ok(text: String) -> Self {
        Self { text, pass: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Verify(a) => verify::run(a),
        Command::Eval(c) => eval::run(c),
        Command::Simulate(c) => simulate::run(c),
        Command::Sample(a) => sample::run(a),
    };
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
