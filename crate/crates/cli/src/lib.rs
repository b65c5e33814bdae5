//! Front end for the `linfty` engine: input documents, command dispatch and
//! report rendering.

pub mod document;
pub mod report;

use std::path::Path;

use linfty::algebra::{Scalar, DEFAULT_TRUNCATION};
use linfty::classify::{classify, structure_matrix, ClassLabel};
use linfty::cochain::{basis_maps, bracket, coboundary, Cochain};
use linfty::cohomology::{cohomology_with_complements, BasisOverride};
use linfty::deform::{miniversal, verify_miniversal, DeformOptions, DEFAULT_MAX_ORDER};
use linfty::superspace::GradedSpace;
use linfty::text::{infer_params, parse_cochain, parse_scalar};

pub use document::{CodifferentialDocument, OverrideFile, ParameterDecl, Term};
pub use report::{Command, Format, Label, Outcome, Report};

/// Exit status for a finished `deform` that did not terminate.
pub const EXIT_NON_TERMINATION: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{origin}: line {line}, column {column}: {message}")]
    Json {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    /// A document or option that does not describe a valid cochain.
    #[error("{context}: {source}")]
    Input {
        context: String,
        #[source]
        source: linfty::Error,
    },
    #[error("{context}: {source}")]
    Engine {
        context: String,
        #[source]
        source: linfty::Error,
    },
}

impl CliError {
    pub fn engine(context: &str, source: linfty::Error) -> CliError {
        CliError::Engine {
            context: context.to_string(),
            source,
        }
    }

    pub fn input(context: &str, source: linfty::Error) -> CliError {
        CliError::Input {
            context: context.to_string(),
            source,
        }
    }

    pub fn json(origin: &str, e: &serde_json::Error) -> CliError {
        CliError::Json {
            origin: origin.to_string(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "cli.usage",
            CliError::Io { .. } => "cli.io",
            CliError::Json { .. } => "cli.json",
            CliError::Input { source, .. } | CliError::Engine { source, .. } => source.code(),
        }
    }

    /// 1 for usage and parse problems, 2 for mathematical ones.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine { .. } => 2,
            _ => 1,
        }
    }
}

/// Settings shared by all commands.
#[derive(Clone, Debug)]
pub struct Options {
    pub lambda: Option<Scalar>,
    pub max_order: usize,
    pub truncation: usize,
    /// Merged over the first document's own overrides, weight by weight.
    pub overrides: OverrideFile,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            lambda: None,
            max_order: DEFAULT_MAX_ORDER,
            truncation: DEFAULT_TRUNCATION,
            overrides: OverrideFile::default(),
        }
    }
}

pub fn parse_lambda(text: &str) -> Result<Scalar, CliError> {
    parse_scalar(text).map_err(|e| CliError::input("--lambda", e))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn load_document(path: &Path) -> Result<CodifferentialDocument, CliError> {
    CodifferentialDocument::from_json(&read(path)?, &path.display().to_string())
}

pub fn load_overrides(path: &Path) -> Result<OverrideFile, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::json(&path.display().to_string(), &e))
}

/// A document for the inline syntax `phi[101]_1 + (-1)*phi[011]_2`.
pub fn inline_document(text: &str, space: &str, lambda: Option<&Scalar>) -> Result<CodifferentialDocument, CliError> {
    let graded: GradedSpace = space.parse().map_err(|e| CliError::input("--space", e))?;
    let params = infer_params([text]).map_err(|e| CliError::input("--cochain", e))?;
    let c = parse_cochain(text, graded, params, lambda).map_err(|e| CliError::input("--cochain", e))?;
    Ok(CodifferentialDocument::from_cochain(&c))
}

fn require_odd(d: &Cochain) -> Result<(), CliError> {
    if !d.is_zero() && d.parity() != Some(linfty::algebra::Parity::Odd) {
        return Err(CliError::engine("input", linfty::Error::NotOdd));
    }
    Ok(())
}

fn engine<T>(context: &str, r: linfty::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::engine(context, e))
}

const EQUATIONS: [&str; 3] = [
    "a9*a2 - a3*a8 + a6*a1 - a3*a4",
    "-a5*a9 + a8*a6 + a5*a1 - a2*a4",
    "-a4*a9 - a1*a8 + a7*a6 + a7*a2",
];

fn label(l: &ClassLabel) -> Label {
    let show = |x: &Option<Scalar>| x.as_ref().map_or("inf".to_string(), Scalar::to_string);
    match l {
        ClassLabel::Family { j, lambda } => Label {
            tag: l.tag().to_string(),
            j: Some(show(j)),
            lambda: lambda.as_ref().map(|(a, b)| [a.to_string(), show(b)]),
        },
        _ => Label {
            tag: l.tag().to_string(),
            j: None,
            lambda: None,
        },
    }
}

fn merged(own: BasisOverride, file: BasisOverride) -> BasisOverride {
    let mut out = own;
    out.extend(file);
    out
}

/// Run `command` on the given documents. `bracket` takes one or two
/// documents (one means `[d, d]`); every other command takes exactly one.
pub fn run_command(command: Command, inputs: &[CodifferentialDocument], options: &Options) -> Result<Report, CliError> {
    let lambda = options.lambda.as_ref();
    let wanted = if command == Command::Bracket { 1..=2 } else { 1..=1 };
    if !wanted.contains(&inputs.len()) {
        return Err(CliError::Usage(format!(
            "{} expects {} input(s), got {}",
            command.name(),
            if command == Command::Bracket { "1 or 2" } else { "1" },
            inputs.len()
        )));
    }
    let cochains = inputs
        .iter()
        .map(|doc| doc.cochain(lambda))
        .collect::<Result<Vec<_>, _>>()?;
    let d = &cochains[0];
    let result = match command {
        Command::Bracket => {
            let other = cochains.get(1).unwrap_or(d);
            Outcome::Bracket {
                bracket: engine("bracket", bracket(d, other))?.to_string(),
            }
        }
        Command::Verify => {
            let square = engine("verify", bracket(d, d))?;
            let equations = structure_matrix(d).ok().map(|a| {
                EQUATIONS
                    .iter()
                    .zip(a.codifferential_equations())
                    .map(|(e, v)| report::Equation {
                        equation: e.to_string(),
                        value: v.to_string(),
                    })
                    .collect()
            });
            Outcome::Verify {
                codifferential: square.is_zero(),
                square: square.to_string(),
                equations,
            }
        }
        Command::Classify => Outcome::Classify {
            label: label(&engine("classify", classify(d))?),
        },
        Command::Tables => {
            require_odd(d)?;
            let space = d.space();
            let max = space
                .max_weight()
                .ok_or_else(|| CliError::Usage(format!("tables needs a space without even letters, got {space}")))?;
            let mut rows = Vec::new();
            for n in 1..=max {
                for m in basis_maps(&space, n) {
                    let phi = engine("tables", Cochain::elementary(space, d.params(), m.clone()))?;
                    rows.push(report::TableRow {
                        map: m.to_string(),
                        image: engine("tables", coboundary(d, &phi))?.to_string(),
                    });
                }
            }
            Outcome::Tables { rows }
        }
        Command::Cohomology | Command::Deform => {
            require_odd(d)?;
            let (own_reps, own_complements) = inputs[0].overrides(lambda)?;
            let space = d.space();
            let file = &options.overrides;
            let reps = merged(
                own_reps,
                document::parse_override(&file.basis_override, space, lambda, "basis_override")?,
            );
            let complements = merged(
                own_complements,
                document::parse_override(&file.complement_override, space, lambda, "complement_override")?,
            );
            if command == Command::Cohomology {
                let r = engine("cohomology", cohomology_with_complements(d, &reps, &complements))?;
                Outcome::Cohomology {
                    h: r.h(),
                    weights: r
                        .weights
                        .iter()
                        .map(|w| report::WeightRow {
                            weight: w.weight,
                            dim: w.dim(),
                            z: w.z,
                            b: w.b,
                            h: w.h,
                            representatives: w.representatives.iter().map(Cochain::to_string).collect(),
                        })
                        .collect(),
                }
            } else {
                let opts = DeformOptions {
                    overrides: reps,
                    complements,
                    max_order: options.max_order,
                    truncation: options.truncation,
                };
                let r = engine("deform", miniversal(d, &opts))?;
                Outcome::Deform {
                    parameters: r
                        .state
                        .parameters
                        .iter()
                        .map(|p| report::ParameterRow {
                            name: p.parameter.to_string(),
                            parity: if p.parameter.parity.is_odd() { "odd" } else { "even" }.to_string(),
                            weight: p.weight,
                            representative: p.representative.to_string(),
                        })
                        .collect(),
                    orders: r.state.history.iter().map(Cochain::to_string).collect(),
                    deformation: r.deformation().to_string(),
                    terminated: r.terminated,
                    termination_order: r.termination_order,
                    relations: r.relations.generators().iter().map(|g| g.to_string()).collect(),
                    verified: verify_miniversal(&r),
                }
            }
        }
    };
    Ok(Report {
        command,
        inputs: cochains.iter().map(Cochain::to_string).collect(),
        result,
    })
}

/// Exit status for a successfully produced report.
pub fn report_status(report: &Report) -> i32 {
    match report.result {
        Outcome::Deform { terminated: false, .. } => EXIT_NON_TERMINATION,
        _ => 0,
    }
}
