use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),
    #[error("ring mismatch")]
    RingMismatch,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("V^-1 applied to a coefficient with ord_V = 0")]
    NotVDivisible,
    #[error("invalid canonical form: {0}")]
    InvalidForm(String),
    #[error("p-adic precision exhausted (have {have}, need {need})")]
    Precision { have: u32, need: u32 },
    #[error("non-confluent rewriting: {0}")]
    NonConfluent(String),
    #[error("unimplemented case: {0}")]
    Unimplemented(String),
}

pub type Result<T> = std::result::Result<T, Error>;
