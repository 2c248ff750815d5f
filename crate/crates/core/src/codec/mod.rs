//! Byte streams to share documents and back.

mod chunking;
mod document;
mod stream;

use thiserror::Error;

use crate::field::{FieldElement, FieldError};
use crate::poly::PolyError;
use crate::sss::SssError;

pub use chunking::{
    chunk_bytes_for, decode_stream, encode_stream, group_into_blocks, ChunkingSpec,
};
pub use document::{
    expected_payload_len, header_len, DocumentLayout, PlaintextUnit, ShareDocument, MAGIC, VERSION,
};
pub use stream::{
    combine_documents, combine_documents_with, shamir_combine_stream, shamir_payload_len,
    shamir_split_stream, split_documents, split_documents_with, Plaintext, StorageReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("bad magic: not a share document")]
    BadMagic,
    #[error("unsupported document version {0}")]
    UnsupportedVersion(u8),
    #[error("truncated document: {0} is incomplete")]
    Truncated(&'static str),
    #[error("{0} trailing bytes after the payload")]
    TrailingBytes(usize),
    #[error("range violation: {0}")]
    RangeViolation(String),
    #[error("inconsistent document: {0}")]
    Inconsistent(String),
    #[error("non-canonical encoding: {0}")]
    NonCanonical(String),
    #[error("unknown layout tag {0}")]
    UnknownLayout(u8),
    #[error("invalid prime in header: {0}")]
    InvalidPrime(FieldError),
    #[error("prime {0} is too small for byte chunking; share field elements instead")]
    PrimeTooSmallForBytes(String),
    #[error("plaintext length {length} exceeds decoded capacity {capacity}")]
    CapacityExceeded { length: u64, capacity: u64 },
    #[error("header mismatch between share documents: {0} differs")]
    HeaderMismatch(&'static str),
    #[error("insufficient shares: have {have}, need {need}")]
    InsufficientShares { have: usize, need: usize },
    #[error("share x={x} disagrees with the reconstruction in block {block}")]
    VerificationFailed { x: FieldElement, block: usize },
    #[error(transparent)]
    Sss(#[from] SssError),
}

impl From<PolyError> for CodecError {
    fn from(e: PolyError) -> Self {
        CodecError::Sss(SssError::Poly(e))
    }
}

impl From<FieldError> for CodecError {
    fn from(e: FieldError) -> Self {
        CodecError::Sss(SssError::Field(e))
    }
}
