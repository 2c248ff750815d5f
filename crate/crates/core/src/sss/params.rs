use num_bigint::BigUint;

use crate::field::{FieldElement, Prime};
use crate::poly::Point;

use super::SssError;

/// Share counts must fit the u16 header fields of a share document.
pub const MAX_SHARES: usize = u16::MAX as usize;

/// Where secrets and shares sit on the x-axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Layout {
    /// Secrets at `0..k`, shares at `k..k+n`.
    Sequential,
    /// Shares at the listed coordinates. Secret coordinates are drawn at
    /// split time and travel alongside the shares as public metadata.
    Explicit { share_xs: Vec<FieldElement> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareParams {
    k: usize,
    n: usize,
    prime: Prime,
    layout: Layout,
}

fn check_counts(k: usize, n: usize) -> Result<(), SssError> {
    if k == 0 {
        return Err(SssError::ZeroThreshold);
    }
    if k > n {
        return Err(SssError::ThresholdExceedsShares { k, n });
    }
    if n > MAX_SHARES {
        return Err(SssError::TooManyShares(n));
    }
    Ok(())
}

impl ShareParams {
    /// Requires `1 <= k <= n` and `p > k + n - 1`, so all k + n coordinates are distinct.
    pub fn sequential(k: usize, n: usize, prime: Prime) -> Result<Self, SssError> {
        check_counts(k, n)?;
        let needed = BigUint::from(k + n - 1);
        if prime.value() <= &needed {
            return Err(SssError::PrimeTooSmall {
                prime: prime.to_string(),
                requirement: format!("p > k + n - 1 = {needed}"),
            });
        }
        Ok(ShareParams {
            k,
            n,
            prime,
            layout: Layout::Sequential,
        })
    }

    /// Requires distinct share coordinates and `p >= k + n`, leaving room
    /// for k secret coordinates off the share coordinates.
    pub fn explicit(k: usize, prime: Prime, share_xs: Vec<FieldElement>) -> Result<Self, SssError> {
        let n = share_xs.len();
        check_counts(k, n)?;
        let needed = BigUint::from(k + n);
        if prime.value() < &needed {
            return Err(SssError::PrimeTooSmall {
                prime: prime.to_string(),
                requirement: format!("p >= k + n = {needed}"),
            });
        }
        let mut seen: Vec<&BigUint> = Vec::with_capacity(n);
        for x in &share_xs {
            if x.prime() != &prime {
                return Err(crate::field::FieldError::ModulusMismatch {
                    left: prime.value().clone(),
                    right: x.prime().value().clone(),
                }
                .into());
            }
            if seen.contains(&x.value()) {
                return Err(SssError::DuplicateShareX(x.clone()));
            }
            seen.push(x.value());
        }
        Ok(ShareParams {
            k,
            n,
            prime,
            layout: Layout::Explicit { share_xs },
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn prime(&self) -> &Prime {
        &self.prime
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn is_sequential(&self) -> bool {
        matches!(self.layout, Layout::Sequential)
    }

    /// Share coordinates in ascending order for Sequential, listed order for Explicit.
    pub fn share_xs(&self) -> Vec<FieldElement> {
        match &self.layout {
            Layout::Sequential => (self.k..self.k + self.n)
                .map(|x| FieldElement::reduce_u64(x as u64, &self.prime))
                .collect(),
            Layout::Explicit { share_xs } => share_xs.clone(),
        }
    }

    /// `0..k`, the secret coordinates of the Sequential layout.
    pub fn sequential_secret_xs(&self) -> Vec<FieldElement> {
        (0..self.k)
            .map(|x| FieldElement::reduce_u64(x as u64, &self.prime))
            .collect()
    }
}

/// Exactly k secrets to be shared together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecretBlock {
    secrets: Vec<FieldElement>,
}

impl SecretBlock {
    pub fn new(secrets: Vec<FieldElement>) -> Self {
        SecretBlock { secrets }
    }

    /// Builds a block from plain integers, rejecting any value `>= p`.
    pub fn from_u64s(values: &[u64], prime: &Prime) -> Result<Self, SssError> {
        let secrets = values
            .iter()
            .map(|&v| FieldElement::from_u64(v, prime))
            .collect::<Result<_, _>>()?;
        Ok(SecretBlock { secrets })
    }

    pub fn secrets(&self) -> &[FieldElement] {
        &self.secrets
    }

    pub fn into_secrets(self) -> Vec<FieldElement> {
        self.secrets
    }

    pub fn len(&self) -> usize {
        self.secrets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.secrets.is_empty()
    }

    pub(crate) fn check(&self, params: &ShareParams) -> Result<(), SssError> {
        if self.secrets.len() != params.k() {
            return Err(SssError::SecretCount {
                expected: params.k(),
                got: self.secrets.len(),
            });
        }
        for s in &self.secrets {
            if s.prime() != params.prime() {
                return Err(crate::field::FieldError::ModulusMismatch {
                    left: params.prime().value().clone(),
                    right: s.prime().value().clone(),
                }
                .into());
            }
        }
        Ok(())
    }
}

/// A point `(x, f(x))` on the sharing polynomial. `x` is public.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Share {
    pub x: FieldElement,
    pub y: FieldElement,
}

impl Share {
    pub fn new(x: FieldElement, y: FieldElement) -> Self {
        Share { x, y }
    }

    pub fn from_u64s(x: u64, y: u64, prime: &Prime) -> Result<Self, SssError> {
        Ok(Share {
            x: FieldElement::from_u64(x, prime)?,
            y: FieldElement::from_u64(y, prime)?,
        })
    }
}

impl From<&Share> for Point {
    fn from(share: &Share) -> Point {
        Point {
            x: share.x.clone(),
            y: share.y.clone(),
        }
    }
}
