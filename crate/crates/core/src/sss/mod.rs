//! Space-efficient k-of-n sharing of k secrets at once.
//!
//! k secrets are placed at k fixed x-coordinates, the interpolating polynomial
//! of degree k-1 is sampled at n fresh coordinates, and those samples are the
//! shares. Any k shares pin the polynomial down again and with it all k
//! secrets. Each share is one field element, the same size as one secret.
//!
//! With k = 1 every share equals the secret. The parameters are accepted but
//! offer no secrecy.

mod enumerate;
mod params;
mod scheme;
mod shamir;

use thiserror::Error;

use crate::field::{FieldElement, FieldError};
use crate::poly::PolyError;

pub use enumerate::{enumerate_candidates, Candidate, CandidateMap, ENUMERATION_LIMIT};
pub use params::{Layout, SecretBlock, Share, ShareParams, MAX_SHARES};
pub use scheme::{
    draw_secret_xs, reconstruct_secrets, reconstruct_secrets_at_points,
    reconstruct_secrets_at_points_verified, reconstruct_secrets_verified, select_shares,
    split_secrets, split_secrets_at_points, split_secrets_with_secret_xs,
};
pub use shamir::{shamir_reconstruct, shamir_split};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SssError {
    #[error("threshold k must be at least 1")]
    ZeroThreshold,
    #[error("threshold k={k} exceeds share count n={n}")]
    ThresholdExceedsShares { k: usize, n: usize },
    #[error("share count n={0} exceeds the supported maximum")]
    TooManyShares(usize),
    #[error("prime {prime} too small: need {requirement}")]
    PrimeTooSmall { prime: String, requirement: String },
    #[error("expected {expected} secrets, got {got}")]
    SecretCount { expected: usize, got: usize },
    #[error("expected {expected} secret x-coordinates, got {got}")]
    SecretXCount { expected: usize, got: usize },
    #[error("expected {expected} partial shares, got {got}")]
    PartialCount { expected: usize, got: usize },
    #[error("insufficient shares: have {have}, need {need} ({} missing)", need - have)]
    InsufficientShares { have: usize, need: usize },
    #[error("duplicate share x-coordinate {0}")]
    DuplicateShareX(FieldElement),
    #[error("x-coordinate {0} collides with a secret coordinate")]
    CoordinateCollision(FieldElement),
    #[error("share at x={0} does not lie on the reconstructed polynomial")]
    VerificationFailed(FieldElement),
    #[error("operation requires the {0} layout")]
    WrongLayout(&'static str),
    #[error("prime {0} exceeds the enumeration limit")]
    EnumerationLimit(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
