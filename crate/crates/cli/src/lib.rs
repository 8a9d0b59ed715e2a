//! Batch front end: reads an input, runs one task, emits a report.

pub mod input;
pub mod report;
mod tasks;

use clap::ValueEnum;
use cohh_core::{FieldSpec, F2, F3, F5, Q};

pub use report::{Format, Report, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Task {
    Validate,
    Cobar,
    Hh,
    Cohh,
    Compare,
    DualCheck,
    TotCheck,
    Loopspace,
    SdrCheck,
    MoritaCheck,
    TransferCheck,
}

impl Task {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Clone, Debug)]
pub struct Request {
    pub task: Task,
    pub input: String,
    pub field: Option<FieldSpec>,
    pub max_degree: i32,
    pub word_bound: Option<usize>,
}

/// Why no report was produced, or why it is a failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Failure {
    Io(String),
    Parse(String),
    Invalid(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Io(_) | Failure::Parse(_) => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Io(m) => write!(f, "I/O error: {m}"),
            Failure::Parse(m) => write!(f, "parse error: {m}"),
            Failure::Invalid(m) => write!(f, "invalid input: {m}"),
        }
    }
}

impl From<cohh_core::Error> for Failure {
    fn from(e: cohh_core::Error) -> Self {
        match e {
            cohh_core::Error::Parse { .. } => Failure::Parse(e.to_string()),
            e => Failure::Invalid(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Invalid,
    Mismatch,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Invalid => 1,
            Status::Mismatch => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub report: Report,
}

/// Runs one request. `Err` means there is no report to print.
pub fn run(req: &Request) -> Result<Outcome, Failure> {
    if req.max_degree < 0 {
        return Err(Failure::Invalid("max-degree must be nonnegative".into()));
    }
    let source = input::load(&req.input)?;
    let field = req.field.or(source.declared_field()).unwrap_or(FieldSpec::Rationals);
    match field {
        FieldSpec::Rationals => tasks::run::<Q>(req, &source),
        FieldSpec::Prime(2) => tasks::run::<F2>(req, &source),
        FieldSpec::Prime(3) => tasks::run::<F3>(req, &source),
        FieldSpec::Prime(5) => tasks::run::<F5>(req, &source),
        FieldSpec::Prime(p) => Err(Failure::Invalid(format!("field F{p} is not supported (use F2, F3, F5 or Q)"))),
    }
}
