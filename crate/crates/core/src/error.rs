use thiserror::Error;

/// Errors produced by the differintegration engine and its oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of the gamma function at {0}")]
    Pole(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series diverges: {0}")]
    Divergence(String),
    #[error("series did not converge within {terms} terms (last relative term {last_ratio:e})")]
    NoConvergence { terms: usize, last_ratio: f64 },
    #[error("non-finite value produced in {0}")]
    NonFinite(&'static str),
    #[error("branch point: {0}")]
    BranchPoint(String),
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error("recurrence breaks down at index {0} (R_j = 0)")]
    RecurrenceBreakdown(usize),
    #[error("invalid step: {0}")]
    Step(String),
    #[error("support not covered: h * n_terms = {covered} < x = {x}")]
    Support { covered: f64, x: f64 },
    #[error("quadrature failed: {0}")]
    Quadrature(String),
    #[error("extrapolation did not stabilize: {0}")]
    Extrapolation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown form `{0}`")]
    UnknownForm(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown identifier `{name}` at line {line}, column {column}")]
    UnknownIdentifier {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("unsupported composition: {0}")]
    UnsupportedComposition(String),
}

impl Error {
    /// Stable snake-case name of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Pole(_) => "pole",
            Error::Domain(_) => "domain",
            Error::Divergence(_) => "divergence",
            Error::NoConvergence { .. } => "no_convergence",
            Error::NonFinite(_) => "non_finite",
            Error::BranchPoint(_) => "branch_point",
            Error::UnknownFunction(_) => "unknown_function",
            Error::Param(_) => "param",
            Error::RecurrenceBreakdown(_) => "recurrence_breakdown",
            Error::Step(_) => "step",
            Error::Support { .. } => "support",
            Error::Quadrature(_) => "quadrature",
            Error::Extrapolation(_) => "extrapolation",
            Error::Precondition(_) => "precondition",
            Error::Degenerate(_) => "degenerate",
            Error::Unsupported(_) => "unsupported",
            Error::UnknownForm(_) => "unknown_form",
            Error::Syntax { .. } => "syntax",
            Error::UnknownIdentifier { .. } => "unknown_identifier",
            Error::UnsupportedComposition(_) => "unsupported_composition",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
