use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use linfty::algebra::DEFAULT_TRUNCATION;
use linfty::deform::DEFAULT_MAX_ORDER;
use linfty_cli::{
    inline_document, load_document, load_overrides, parse_lambda, report_status, run_command, CliError, Command,
    Format, Options,
};

/// Exact computations with L-infinity structures on small graded spaces.
#[derive(Parser, Debug)]
#[command(name = "linfty", version)]
struct Args {
    command: Command,
    /// JSON codifferential document; give two for `bracket`.
    #[arg(long, value_name = "FILE")]
    input: Vec<PathBuf>,
    /// Inline cochain, e.g. "phi[101]_1 + (-1)*phi[011]_2".
    #[arg(long, value_name = "TEXT")]
    cochain: Vec<String>,
    /// Space for inline cochains.
    #[arg(long, default_value = "0|3")]
    space: String,
    /// Value substituted for `lambda` in coefficients.
    #[arg(long, value_name = "Q", allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
    #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
    truncation: usize,
    /// JSON file with `basis_override` and `complement_override` maps.
    #[arg(long, value_name = "FILE")]
    basis_override: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn run(args: Args) -> Result<(String, i32), CliError> {
    let lambda = args.lambda.as_deref().map(parse_lambda).transpose()?;
    let mut docs = args
        .input
        .iter()
        .map(|p| load_document(p))
        .collect::<Result<Vec<_>, _>>()?;
    for text in &args.cochain {
        docs.push(inline_document(text, &args.space, lambda.as_ref())?);
    }
    if docs.is_empty() {
        return Err(CliError::Usage("give --input FILE or --cochain TEXT".to_string()));
    }
    let options = Options {
        lambda,
        max_order: args.max_order,
        truncation: args.truncation,
        overrides: args
            .basis_override
            .as_deref()
            .map(load_overrides)
            .transpose()?
            .unwrap_or_default(),
    };
    let report = run_command(args.command, &docs, &options)?;
    Ok((report.render(args.format), report_status(&report)))
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(args) {
        Ok((out, status)) => {
            print!("{out}");
            ExitCode::from(status as u8)
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
