//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("argument {0} hits the pole at s = 1")]
    PoleAtOne(String),
    #[error("argument {0} lies outside the supported window |Re s| <= 60, |Im s| <= 60")]
    OutsideWindow(String),
    #[error("gamma factor has a pole at s = {0}")]
    GammaPole(String),
    #[error("zeta special values are only defined at integers m <= 0, got {0}")]
    PositiveSpecialArgument(i64),

    #[error("cyclotomic modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to}): {from} does not divide {to}")]
    NonDivisibleModulus { from: u64, to: u64 },
    #[error("cyclotomic element is not rational")]
    NonRationalElement,

    #[error("character of modulus {modulus} has conductor {conductor}; a primitive character is required")]
    ImprimitiveCharacter { modulus: u64, conductor: u64 },
    #[error("odd character rejected: the completed-L form used here is the even-character one")]
    OddCharacter,
    #[error("{0} is not an odd square-free integer")]
    NotOddSquareFree(u64),

    #[error("torsion order {order} at weight {weight} is not square-free")]
    TorsionNotSquareFree { weight: i64, order: u64 },
    #[error("torsion order {order} at weight {weight} is even; only odd torsion is supported")]
    EvenTorsion { weight: i64, order: u64 },
    #[error("excluded primes must contain 2")]
    MissingTwo,
    #[error("datum has no nonzero weight cell")]
    EmptyDatum,
    #[error("suspension shift {0} is odd; only even shifts preserve the even/odd degree split")]
    OddSuspension(i64),
    #[error("dual is defined here only for torsion-free data; torsion shifts to odd degree under duality")]
    DualOfTorsion,
    #[error("wedge would create non-square-free torsion of order {order} at weight {weight}")]
    WedgeTorsionCollision { weight: i64, order: u64 },
    #[error("operands have different excluded prime sets")]
    ExcludedPrimesMismatch,
    #[error("invalid builtin parameter: {0}")]
    InvalidParameter(String),
    #[error("K-theory must be concentrated in even degrees (beta_odd != 0 at weight {0})")]
    NotEvenConcentrated(i64),

    #[error("exact evaluation needs every zeta argument <= 1; weight {weight} contributes the transcendental argument {argument}")]
    TranscendentalArgument { weight: i64, argument: i64 },
    #[error("factors at argument {0} have cancelling zeros and poles; the exact path cannot evaluate the limit (use the numeric limit)")]
    CancellingFactors(i64),
    #[error("net vanishing order at argument {argument} is {order}, not 0; no finite nonzero limit")]
    NetOrderNonzero { argument: i64, order: i64 },
    #[error("degree {degree} lies in the middle band {lo}..={hi} where the special-value formulas are silent")]
    MiddleBandDegree { degree: i64, lo: i64, hi: i64 },
    #[error("torsion is present but the skeletal splitting flag is not \"complete\"; homotopy orders require it")]
    SplittingUnknown,
    #[error("prime {ell} does not divide the torsion order {order} at weight {weight}")]
    NoSuchTorsionPrime { weight: i64, ell: u64, order: u64 },
    #[error("shifted argument {0} must be <= 0 for exact torsion L-values")]
    PositiveShiftedArgument(i64),
    #[error("s = {s} is outside the convergence region Re(s) > {bound}")]
    OutOfConvergenceRegion { s: String, bound: f64 },
    #[error("Euler product truncation bound must be >= 2, got {0}")]
    BadTruncationBound(u64),
    #[error("functional equation check is unsupported for data mixing free and torsion K-theory")]
    MixedFunctionalEquation,
}
