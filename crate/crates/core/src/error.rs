use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("determinant must be at least 1, got {0}")]
    InvalidDeterminant(i64),

    #[error("tuple must have between 1 and {max} entries, got {got}")]
    BadArity { got: usize, max: usize },

    #[error("entries sum to {sum} which is not 0 mod {modulus}")]
    NonZeroSum { modulus: u32, sum: i64 },

    #[error("tuple {0} is not primitive")]
    NotPrimitive(String),

    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("arity differs: {0} vs {1}")]
    ArityMismatch(usize, usize),

    #[error("{divisor} does not divide {modulus}")]
    NotADivisor { divisor: u32, modulus: u32 },

    #[error("moduli {0} and {1} are not coprime")]
    NotCoprime(u32, u32),

    #[error("tuple {0} has no unimodular facet (no entry is a unit)")]
    NoUnimodularFacet(String),

    #[error("expected a tuple of length {expected}, got {got}")]
    WrongArity { expected: usize, got: usize },

    #[error("invalid width certificate: {0}")]
    BadCertificate(String),

    #[error("determinant {0} has five or more distinct prime factors; algorithm 1 does not apply")]
    TooManyPrimeFactors(u32),

    #[error("invalid split {a} x {b} of {d}")]
    InvalidSplit { d: u32, a: u32, b: u32 },

    #[error("determinant {0} is a prime power or 1 and cannot be split")]
    NoSplit(u32),

    #[error("no complete record for determinant {0}")]
    MissingRecord(u32),

    #[error("gcd({p}, {q}) != 1")]
    NotCoprimeParams { p: i64, q: u32 },

    #[error("width {0} is outside the domain of the bound")]
    OutOfDomain(f64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
