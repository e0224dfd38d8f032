use thiserror::Error;

use crate::form::Side;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("non-homogeneous input: found terms of degree {first} and {second}")]
    NonHomogeneous { first: u32, second: u32 },

    #[error("variable index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("ring side mismatch: expected {expected:?}, found {found:?}")]
    SideMismatch { expected: Side, found: Side },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },

    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },

    #[error("scalar field mismatch")]
    FieldMismatch,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,

    #[error("the zero form is not allowed here")]
    ZeroForm,

    #[error("characteristic {p} too small for n = {n}, degree = {degree}")]
    CharacteristicGuard { p: u64, n: usize, degree: u32 },

    #[error("form is not smooth")]
    NotSmooth,

    #[error("annihilator has dimension {0}, expected 1")]
    KernelDimension(usize),

    #[error("guard exceeded: {what} = {value} > {limit}")]
    GuardExceeded { what: String, value: usize, limit: usize },

    #[error("no lucky evaluation found after {0} attempts")]
    UnluckyEvaluationExhausted(usize),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("assumption violated: n = {n}, degree = {degree} (need n >= 2, degree >= 4 if n = 2, degree >= 3 otherwise)")]
    AssumptionViolated { n: usize, degree: u32 },

    #[error("eigenvalues are not in the base field")]
    FieldExtensionRequired,

    #[error("gradient of g is not contained in the gradient span of f")]
    NotInFiber,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("size {0} too small (need at least 3)")]
    SizeTooSmall(usize),

    #[error("unsupported over this field: {0}")]
    Unsupported(String),
}

impl Error {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax_error",
            Error::NonHomogeneous { .. } => "non_homogeneous",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::SideMismatch { .. } => "side_mismatch",
            Error::DegreeMismatch { .. } => "degree_mismatch",
            Error::VariableCountMismatch { .. } => "variable_count_mismatch",
            Error::FieldMismatch => "field_mismatch",
            Error::InvalidField(_) => "invalid_field",
            Error::DivisionByZero => "division_by_zero",
            Error::SingularMatrix => "singular_matrix",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::AmbientMismatch => "ambient_mismatch",
            Error::ZeroForm => "zero_form",
            Error::CharacteristicGuard { .. } => "characteristic_guard",
            Error::NotSmooth => "not_smooth",
            Error::KernelDimension(_) => "kernel_dimension",
            Error::GuardExceeded { .. } => "guard_exceeded",
            Error::UnluckyEvaluationExhausted(_) => "unlucky_evaluation_exhausted",
            Error::InternalInconsistency(_) => "internal_inconsistency",
            Error::AssumptionViolated { .. } => "assumption_violated",
            Error::FieldExtensionRequired => "field_extension_required",
            Error::NotInFiber => "not_in_fiber",
            Error::ShapeMismatch(_) => "shape_mismatch",
            Error::SizeTooSmall(_) => "size_too_small",
            Error::Unsupported(_) => "unsupported",
        }
    }

    /// True for errors caused by the caller's input rather than by a guard or a bug.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::NonHomogeneous { .. }
                | Error::IndexOutOfRange { .. }
                | Error::SideMismatch { .. }
                | Error::DegreeMismatch { .. }
                | Error::VariableCountMismatch { .. }
                | Error::InvalidField(_)
                | Error::ZeroForm
                | Error::CharacteristicGuard { .. }
                | Error::ShapeMismatch(_)
                | Error::SizeTooSmall(_)
                | Error::SingularMatrix
                | Error::DimensionMismatch(_)
        )
    }

    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. } | Error::UnluckyEvaluationExhausted(_))
    }
}
