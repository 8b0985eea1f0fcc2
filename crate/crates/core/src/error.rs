use thiserror::Error;

/// Errors raised by the computation engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The Hilbert function of a sampled presentation disagrees with the
    /// constructor's expected value; the random draw was not generic.
    #[error("degenerate sample for {variety}: dim R_{degree} = {found}, expected {expected}")]
    DegenerateSample {
        variety: String,
        degree: usize,
        expected: usize,
        found: usize,
    },

    #[error("differential {rows}x{cols} exceeds entry budget {budget}")]
    ResourceLimit { rows: usize, cols: usize, budget: usize },

    #[error("Betti table has no entry at (p, q) = ({p}, {q})")]
    MissingEntry { p: usize, q: usize },

    /// Tables computed at different primes disagree and no majority exists.
    #[error("Betti tables disagree across primes {primes:?}")]
    BadPrime { primes: Vec<u64> },

    #[error("assertion failed: {0}")]
    AssertionFailure(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
