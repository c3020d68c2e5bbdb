use thiserror::Error;

/// Errors raised by the field, tower, quadrinomial and curve layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field degree {0} is outside the supported range 1..={max}", max = crate::field::MAX_DEGREE)]
    DegreeOutOfRange(u32),

    #[error("{modulus:#x} is not an irreducible polynomial of degree {degree}")]
    NotIrreducible { degree: u32, modulus: u64 },

    #[error("value {bits:#x} is not an element of GF(2^{degree})")]
    NotInField { bits: u64, degree: u32 },

    #[error("operands belong to different field representations")]
    ContextMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("quadratic x^2 + bx + c needs b != 0; use sqrt for b = 0")]
    ZeroLinearCoefficient,

    #[error("no primitive cube root of unity outside GF(2^{0}) (m must be odd)")]
    OmegaUnavailable(u32),

    #[error("operation requires odd m, got m = {0}")]
    EvenDegree(u32),

    #[error("operation requires the {{1, w}} tower representation")]
    TowerModeRequired,

    #[error("a1 = 0 cannot be normalized")]
    ZeroLeadingCoefficient,

    #[error("1 + a1 + a2 + a3 = 0: the quadrinomial fixes both 0 and 1")]
    DegenerateTriple,

    #[error("rational map has a pole at x = {0}")]
    Pole(String),

    #[error("point counting over GF(2^{0})^2 is limited to m <= {max}", max = crate::curve::MAX_COUNT_DEGREE)]
    CountTooLarge(u32),

    #[error("factor reconstruction is inconsistent with class {0}")]
    ReconstructionFailed(&'static str),

    #[error("malformed element encoding {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
