//! Space-efficient secret sharing over prime fields.
//!
//! k secrets are interpolated into one polynomial and n >= k evaluations of it
//! become the shares, so each share is the size of a single secret. Any k
//! shares recover all k secrets.
//!
//! - [`field`]: arithmetic mod p and prime validation.
//! - [`poly`]: evaluation, Lagrange interpolation, Vandermonde solving.
//! - [`sss`]: split and reconstruct, the random-coordinate variant, the
//!   Shamir baseline, and exhaustive candidate enumeration.
//! - [`codec`]: byte streams to share documents and the share file format.
//! - [`par`]: sequential or rayon-parallel block processing.
//! - [`cli`]: the `sess` command line.

pub mod cli;
pub mod codec;
pub mod field;
pub mod par;
pub mod poly;
pub mod sss;
