use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Every failure the core algorithms can report.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Too few judgments, ratings or usable items to produce a result.
    InsufficientJudgments { needed: usize, got: usize },
    /// More judgments than the resolution rule accepts.
    ExcessJudgments { max: usize, got: usize },
    /// A value does not match the kind of the field it was given for.
    TypeMismatch(String),
    /// The same (worker, image, field) triple appeared twice.
    DuplicateJudgment(String),
    /// The requested pair design cannot exist.
    InfeasibleDesign(String),
    /// The randomized design search ran out of restarts.
    DesignNotFound { restarts: usize },
    /// A comparison of an item against itself, or with an unknown id.
    InvalidComparison(String),
    /// The maximum-likelihood estimate does not exist for the given data.
    DegenerateMle(String),
    /// Fewer items than the model needs.
    InsufficientItems { needed: usize, got: usize },
    InvalidStrength(f64),
    /// Only one class present among the labels.
    UndefinedAuc,
    /// One input has zero variance.
    UndefinedCorrelation,
    InsufficientSamples { needed: usize, got: usize },
    LengthMismatch { left: usize, right: usize },
    InvalidDof(i64),
    /// No positive labels to derive a recall threshold from.
    UndefinedThreshold,
    InvalidRegion(String),
    Config(String),
    /// A value outside its admissible range.
    Range(String),
    HeaderMismatch { expected: String, found: String },
    Parse { line: usize, message: String },
    DuplicateId(String),
    /// An inner join found no common keys.
    JoinEmpty,
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InsufficientJudgments { .. } => "insufficient-judgments",
            Error::ExcessJudgments { .. } => "excess-judgments",
            Error::TypeMismatch(_) => "type-mismatch",
            Error::DuplicateJudgment(_) => "duplicate-judgment",
            Error::InfeasibleDesign(_) => "infeasible-design",
            Error::DesignNotFound { .. } => "design-not-found",
            Error::InvalidComparison(_) => "invalid-comparison",
            Error::DegenerateMle(_) => "degenerate-mle",
            Error::InsufficientItems { .. } => "insufficient-items",
            Error::InvalidStrength(_) => "invalid-strength",
            Error::UndefinedAuc => "undefined-auc",
            Error::UndefinedCorrelation => "undefined-correlation",
            Error::InsufficientSamples { .. } => "insufficient-samples",
            Error::LengthMismatch { .. } => "length-mismatch",
            Error::InvalidDof(_) => "invalid-dof",
            Error::UndefinedThreshold => "undefined-threshold",
            Error::InvalidRegion(_) => "invalid-region",
            Error::Config(_) => "config-error",
            Error::Range(_) => "range-error",
            Error::HeaderMismatch { .. } => "header-mismatch",
            Error::Parse { .. } => "parse-error",
            Error::DuplicateId(_) => "duplicate-id",
            Error::JoinEmpty => "join-empty",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InsufficientJudgments { needed, got } => {
                write!(f, "insufficient judgments: need at least {needed}, got {got}")
            }
            Error::ExcessJudgments { max, got } => {
                write!(f, "too many judgments: at most {max} accepted, got {got}")
            }
            Error::TypeMismatch(msg) => write!(f, "type mismatch: {msg}"),
            Error::DuplicateJudgment(key) => write!(f, "duplicate judgment for {key}"),
            Error::InfeasibleDesign(msg) => write!(f, "infeasible design: {msg}"),
            Error::DesignNotFound { restarts } => {
                write!(f, "no design found after {restarts} restarts")
            }
            Error::InvalidComparison(msg) => write!(f, "invalid comparison: {msg}"),
            Error::DegenerateMle(msg) => write!(f, "maximum-likelihood estimate does not exist: {msg}"),
            Error::InsufficientItems { needed, got } => {
                write!(f, "insufficient items: need at least {needed}, got {got}")
            }
            Error::InvalidStrength(v) => write!(f, "strength must be positive and finite, got {v}"),
            Error::UndefinedAuc => f.write_str("AUC undefined: labels contain a single class"),
            Error::UndefinedCorrelation => f.write_str("correlation undefined: constant input"),
            Error::InsufficientSamples { needed, got } => {
                write!(f, "insufficient samples: need at least {needed}, got {got}")
            }
            Error::LengthMismatch { left, right } => {
                write!(f, "length mismatch: {left} vs {right}")
            }
            Error::InvalidDof(d) => write!(f, "degrees of freedom must be >= 1, got {d}"),
            Error::UndefinedThreshold => f.write_str("threshold undefined: no positive labels"),
            Error::InvalidRegion(msg) => write!(f, "invalid region: {msg}"),
            Error::Config(msg) => write!(f, "configuration error: {msg}"),
            Error::Range(msg) => write!(f, "out of range: {msg}"),
            Error::HeaderMismatch { expected, found } => {
                write!(f, "header mismatch: expected `{expected}`, found `{found}`")
            }
            Error::Parse { line, message } => write!(f, "line {line}: {message}"),
            Error::DuplicateId(id) => write!(f, "duplicate id `{id}`"),
            Error::JoinEmpty => f.write_str("join produced no rows: key sets are disjoint"),
        }
    }
}

impl core::error::Error for Error {}
