//! Crate-wide error type.
//!
//! Mathematical failure conditions (a check coming out false) are *not*
//! errors; they are reported in the result structs. Errors signal that an
//! operation's preconditions were violated or that finite precision cannot
//! certify an answer.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("bad modulus: {0}")]
    BadModulus(String),

    #[error("operands belong to different p-adic contexts")]
    ContextMismatch,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("element is not a unit (valuation {valuation} > 0)")]
    NonUnit { valuation: usize },

    #[error("element is indistinguishable from zero at precision")]
    ZeroAtPrecision,

    #[error("precision loss: only {achieved} of {requested} digits are determined")]
    PrecisionLoss { achieved: usize, requested: usize },

    #[error("valuation {valuation} is not divisible by root exponent {exponent}")]
    RamifiedRoot { valuation: usize, exponent: u64 },

    #[error("no {exponent}-th root in the residue field")]
    NoResidueRoot { exponent: u64 },

    #[error("root exponent divisible by p is not supported")]
    WildExponent,

    #[error("series has no unit coefficient below degree {degree}")]
    InsufficientDegree { degree: usize },

    #[error("polynomial is not distinguished")]
    NotDistinguished,

    #[error("evaluation point is not topologically nilpotent")]
    NotTopologicallyNilpotent,

    #[error("finite precision cannot certify the result: {0}")]
    PrecisionAmbiguous(String),

    #[error("division by a series that vanishes at precision")]
    ZeroDivisor,

    #[error("presentation determinant vanishes at precision; module is not torsion")]
    NotTorsion,

    #[error("input exceeds the supported size for dense computation: {0}")]
    SizeLimit(String),

    #[error("specialized determinant vanishes at precision")]
    NotTorsionAfterSpecialization,

    #[error("no denominator bound K <= {k_max} works for the whole sequence")]
    BoundExceeded { k_max: usize },

    #[error("p divides the group order {order}")]
    BadResidueCharacteristic { order: u64 },

    #[error("assembled projector fails e^2 = e at precision")]
    NotProjector,

    #[error("matrix entry at ({row},{col}) is a unit; expected valuation >= 1")]
    EntryNotDivisible { row: usize, col: usize },

    #[error("class-group order is not a perfect power as required")]
    NotPerfectPower,

    #[error("Hecke roots coincide at precision")]
    IrregularAtPrecision,
}
