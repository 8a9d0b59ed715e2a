use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use cohh_cli::{run, Format, Request, Task};
use cohh_core::FieldSpec;

/// Exact cobar, coHochschild and Hochschild computations over a field.
#[derive(Parser, Debug)]
#[command(name = "cohh", version)]
struct Cli {
    #[arg(value_enum)]
    task: Task,
    /// `.dgc` or `.sset` file, `builtin:NAME` or `sset:NAME`
    #[arg(long)]
    input: String,
    /// F2, F3, F5 or Q; defaults to the file's `field`, then Q
    #[arg(long)]
    field: Option<FieldSpec>,
    #[arg(long, default_value_t = 8)]
    max_degree: i32,
    /// cap on cobar word length; results past it are flagged approximate
    #[arg(long)]
    word_bound: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let req = Request {
        task: cli.task,
        input: cli.input,
        field: cli.field,
        max_degree: cli.max_degree,
        word_bound: cli.word_bound,
    };
    let outcome = match run(&req) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("cohh: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = outcome.report.render(cli.format);
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("cohh: I/O error: {}: {e}", path.display());
                return ExitCode::from(3);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(outcome.status.exit_code() as u8)
}
