use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid blade: {0}")]
    InvalidBlade(String),
    #[error("element is not unitary: |S†S - e| = {defect:e}")]
    NotUnitary { defect: f64 },
    #[error("matrix is not in O(1,3): |PᵀηP - η| = {defect:e}")]
    NotLorentz { defect: f64 },
    #[error("jets at different base points")]
    BasePointMismatch,
    #[error("jet orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("jet order {have} too low, need at least {need}")]
    InsufficientOrder { have: usize, need: usize },
    #[error("jet order {0} exceeds the supported maximum")]
    OrderTooHigh(usize),
    #[error("gauge group {group} does not act on {algebra} potentials")]
    FlavorMismatch { group: String, algebra: String },
    #[error("invalid group direction: {0}")]
    InvalidDirection(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
