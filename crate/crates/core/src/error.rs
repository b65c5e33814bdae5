use thiserror::Error;

/// Errors raised by the algebraic layers.
///
/// Every variant carries a stable machine-readable code (see [`Error::code`])
/// that the command-line front end forwards verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parameter lists differ: {0} vs {1}")]
    ParameterMismatch(String, String),

    #[error("degree overflow: term {term} has degree {degree} > truncation {truncation}")]
    DegreeOverflow {
        term: String,
        degree: usize,
        truncation: usize,
    },

    #[error("too many odd parameters ({0}, at most 64 supported)")]
    TooManyOddParameters(usize),

    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),

    #[error("length mismatch: permutation has {perm} entries, parity list has {parities}")]
    LengthMismatch { perm: usize, parities: usize },

    #[error("unshuffle block size {k} out of range 1..={total}")]
    UnshuffleRange { k: usize, total: usize },

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("invalid basis index {index} for a space of dimension {dim}")]
    InvalidBasisIndex { index: usize, dim: usize },

    #[error("cochains live on different spaces: {0} vs {1}")]
    SpaceMismatch(String, String),

    #[error("codifferential must be odd")]
    NotOdd,

    #[error("cochain has parameter coefficients where a scalar cochain is required")]
    HasParameters,

    #[error("cochain is not quadratic: {0}")]
    NotQuadratic(String),

    #[error("not a codifferential: [d,d] = {0}")]
    NotCodifferential(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("automorphism does not respect the grading: entry ({row},{col}) mixes parities")]
    MixedParityAutomorphism { row: usize, col: usize },

    #[error("matrix has shape {rows}x{cols}, expected {expected}x{expected}")]
    MatrixShape { rows: usize, cols: usize, expected: usize },

    #[error("weight {weight} exceeds the maximal weight {max}")]
    WeightOutOfRange { weight: usize, max: usize },

    #[error("invalid basis override at weight {weight}: {reason}")]
    InvalidOverride { weight: usize, reason: String },

    #[error("bracket not a cocycle modulo relations at order {order}: {detail}")]
    NotCocycleModuloRelations { order: usize, detail: String },

    #[error("space must be 0|3 for this operation, got {0}")]
    NotThreeDimensionalOdd(String),

    #[error("lambda not representable over Q(i) (j = {0})")]
    LambdaNotRepresentable(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

impl Error {
    /// Stable identifier, prefixed with the module that raised the error.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "algebra.division_by_zero",
            Error::ParameterMismatch(..) => "algebra.parameter_mismatch",
            Error::DegreeOverflow { .. } => "algebra.degree_overflow",
            Error::TooManyOddParameters(_) => "algebra.too_many_odd_parameters",
            Error::NotAPermutation(_) => "superspace.not_a_permutation",
            Error::LengthMismatch { .. } => "superspace.length_mismatch",
            Error::UnshuffleRange { .. } => "superspace.unshuffle_range",
            Error::InvalidSpace(_) => "superspace.invalid_space",
            Error::InvalidWord(_) => "superspace.invalid_word",
            Error::InvalidBasisIndex { .. } => "cochain.invalid_basis_index",
            Error::SpaceMismatch(..) => "cochain.space_mismatch",
            Error::NotOdd => "cochain.not_odd",
            Error::HasParameters => "cochain.has_parameters",
            Error::NotQuadratic(_) => "cochain.not_quadratic",
            Error::NotCodifferential(_) => "cochain.not_codifferential",
            Error::SingularMatrix => "cochain.singular_matrix",
            Error::MixedParityAutomorphism { .. } => "cochain.mixed_parity_automorphism",
            Error::MatrixShape { .. } => "cochain.matrix_shape",
            Error::WeightOutOfRange { .. } => "cohomology.weight_out_of_range",
            Error::InvalidOverride { .. } => "cohomology.invalid_override",
            Error::NotCocycleModuloRelations { .. } => "deform.not_cocycle_modulo_relations",
            Error::NotThreeDimensionalOdd(_) => "classify.not_0_3",
            Error::LambdaNotRepresentable(_) => "classify.lambda_not_representable",
            Error::Parse { .. } => "parse.syntax",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
