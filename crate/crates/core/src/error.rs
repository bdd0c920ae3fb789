use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("series is not divisible by hbar^{k}: found a term with hbar exponent {found}")]
    NotDivisible { k: u32, found: u32 },

    #[error("invalid algebra description: {0}")]
    Spec(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("axiom `{axiom}` fails on ({witness})")]
    Axiom { axiom: String, witness: String },

    #[error("spectral sequence does not degenerate: class {class} is obstructed at hbar stage {stage}")]
    NotDegenerate { class: String, stage: u32 },

    #[error("splitting is certified to hbar order {have}, but {need} is required")]
    InsufficientOrder { have: u32, need: u32 },

    #[error("runtime identity failed at t-order {order}: {what}")]
    Invariant { order: u32, what: String },

    #[error("not closed: {0}")]
    NotClosed(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
