use thiserror::Error;

/// Errors raised by the numerical kernel and the correspondence maps.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("matrix is not hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not positive (smallest eigenvalue {0:e})")]
    NotPositive(f64),
    #[error("matrix is zero")]
    ZeroMatrix,
    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),
    #[error("velocity is not timelike (|v| = {0})")]
    NotTimelike(f64),
    #[error("velocity is not null (|v| = {0})")]
    NotNull(f64),
    #[error("velocity magnitude {0} is faster than light")]
    Superluminal(f64),
    #[error("rotation axis is not a unit vector (|n| = {0})")]
    BadAxis(f64),
    #[error("transform is not a restricted Lorentz transform")]
    NotRestricted,
    #[error("transform is neither a rescaled restricted transform nor a rescaled null boost product")]
    NotDecomposable,
    #[error("measurement element is zero")]
    ZeroElement,
    #[error("lambda {lambda} outside (0, {max}]")]
    LambdaOutOfRange { lambda: f64, max: f64 },
    #[error("element is too large to belong to a measurement (I - M^dag M has eigenvalue {0:e})")]
    TooLarge(f64),
    #[error("vector is null or spacelike (Minkowski norm {0:e})")]
    NullOrSpacelike(f64),
    #[error("trace component {0} is not positive")]
    NonPositiveTrace(f64),
    #[error("measurement is not complete (max deviation from identity {0:e})")]
    InvalidMeasurement(f64),
    #[error("measurement has no elements")]
    EmptyMeasurement,
    #[error("state does not have unit trace (trace {0})")]
    NotNormalized(f64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
