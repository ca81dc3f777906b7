use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report. The variants carry enough context
/// (which form, which cone, which dimension) to be surfaced verbatim by a
/// front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vectors are not in general position: {0}")]
    GeneralPositionViolation(String),
    #[error("vectors do not form a basis")]
    SingularBasis,
    #[error("matrix is singular: {0}")]
    SingularMatrix(String),
    #[error("zero vector is not an admissible argument")]
    ZeroVector,
    #[error("matrix {0} admits neither closed-form factorization")]
    CaseDecompositionFailure(String),
    #[error("cone decomposition is implemented for n <= 3, got n = {0}")]
    UnsupportedDimension(usize),
    #[error("every linear form in the list is zero")]
    AllFormsZero,
    #[error("generator {0} gives a zero linear form")]
    ZeroForm(String),
    #[error("combination has a constant term but the test function does not vanish near 0")]
    ConstantAgainstNonVanishing,
    #[error("numerator is not divisible by denominator form {form} at degree {degree}")]
    NotDivisible { form: String, degree: u32 },
    #[error("truncation degree {have} is too small, need at least {need}")]
    TruncationTooSmall { have: u32, need: u32 },
    #[error("{0} is not a square-free integer > 1")]
    NotSquareFree(i64),
    #[error("narrow class number of Q(sqrt({d})) is {h}, not 1")]
    NarrowClassNumberNotOne { d: i64, h: u64 },
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("invalid test function: {0}")]
    InvalidSchwartz(String),
    #[error("element is not invertible in {0}")]
    NotInvertible(String),
    #[error("coefficient rings are incompatible: {0}")]
    RingMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("{context}: {source}")]
    Context { context: String, source: Box<Error> },
}

impl Error {
    /// Attaches a description of where the error happened.
    pub fn context(self, context: impl Into<String>) -> Error {
        Error::Context { context: context.into(), source: Box::new(self) }
    }

    /// The error with every layer of context removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::Context { source, .. } => source.root(),
            e => e,
        }
    }

    /// Stable machine-readable name of the underlying error.
    pub fn code(&self) -> &'static str {
        match self.root() {
            Error::DivisionByZero => "division_by_zero",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::GeneralPositionViolation(_) => "general_position_violation",
            Error::SingularBasis => "singular_basis",
            Error::SingularMatrix(_) => "singular_matrix",
            Error::ZeroVector => "zero_vector",
            Error::CaseDecompositionFailure(_) => "case_decomposition_failure",
            Error::UnsupportedDimension(_) => "unsupported_dimension",
            Error::AllFormsZero => "all_forms_zero",
            Error::ZeroForm(_) => "zero_form",
            Error::ConstantAgainstNonVanishing => "constant_against_non_vanishing",
            Error::NotDivisible { .. } => "not_divisible",
            Error::TruncationTooSmall { .. } => "truncation_too_small",
            Error::NotSquareFree(_) => "not_square_free",
            Error::NarrowClassNumberNotOne { .. } => "narrow_class_number_not_one",
            Error::InvalidCharacter(_) => "invalid_character",
            Error::InvalidSchwartz(_) => "invalid_schwartz",
            Error::NotInvertible(_) => "not_invertible",
            Error::RingMismatch(_) => "ring_mismatch",
            Error::Parse(_) => "parse",
            Error::Inconsistent(_) => "inconsistent",
            Error::Context { .. } => unreachable!("root has no context"),
        }
    }

    /// The layers of context, outermost first.
    pub fn contexts(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut e = self;
        while let Error::Context { context, source } = e {
            out.push(context.clone());
            e = source;
        }
        out
    }
}
