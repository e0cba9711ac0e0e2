use thiserror::Error;

/// Errors raised anywhere in the local or global pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("wild ramification at p = {p}")]
    WildRamification { p: u64 },
    #[error("precision exhausted at p = {p} (N = {precision})")]
    PrecisionExhausted { p: u64, precision: u32 },
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("eigenvalue bucket of order {order} has size {size}, not divisible by {expected}")]
    BucketMismatch {
        order: u64,
        size: usize,
        expected: u64,
    },
    #[error("nonzero toric part at even residue characteristic")]
    ToricAtEvenResidue,
    #[error("ramified quadratic twist at even residue characteristic")]
    RamifiedAtEvenResidue,
    #[error("criterion needs odd p or zero toric part (p = {p})")]
    WildOrEvenToric { p: u64 },
    #[error("behaviour at p = 2 cannot be certified; supply a conductor or assert good reduction")]
    Unknown2AdicPlace,
    #[error("could not factor cofactor {0}")]
    Unfactored(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
