use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("value {value} does not fit in {width} bits")]
    IndexOutOfRange { value: usize, width: usize },
    #[error("bit tuple entry {0} is not 0 or 1")]
    InvalidBit(u8),
    #[error("signature has {0} units; the supported maximum is 24")]
    TooManyUnits(usize),
    #[error("lambda must be +1 or -1, got {0}")]
    InvalidLambda(i8),
    #[error("unit square at position {position} must be -1, 0 or +1, got {value}")]
    InvalidSquare { position: usize, value: i8 },
    #[error("squares list has {got} entries but the signature declares {expected} units")]
    SquaresLength { got: usize, expected: usize },
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error(
        "the quaternion preset ships as a golden multiplier table only, not as a \
         (squares, lambda) signature; use `tables --algebra quaternion`"
    )]
    QuaternionNotASignature,
    #[error("operands belong to different signatures")]
    SignatureMismatch,
    #[error("real-field algebra given a nonzero imaginary part at coefficient {0}")]
    ComplexCoefficientInRealAlgebra(usize),
    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("no diagonal basis: {0}")]
    NotDiagonalizable(String),
    #[error("not invertible: diagonal coordinate {index} has magnitude {magnitude:e}")]
    NotInvertible { index: usize, magnitude: f64 },
    #[error("power domain error: diagonal coordinate {index} is {value} with exponent {exponent}")]
    PowerDomain {
        index: usize,
        value: String,
        exponent: f64,
    },
    #[error("scalar conjugation requires a complex-field algebra")]
    ScalarConjOnRealField,
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
