//! Classical Shamir sharing of one secret, kept as the storage baseline.

use num_bigint::BigUint;
use rand::Rng;

use crate::field::FieldElement;
use crate::poly::{lagrange_interpolate, Point, Polynomial};

use super::{select_shares, Share, ShareParams, SssError};

/// Hides `secret` as the constant term of a random degree k-1 polynomial and
/// returns its values at `x = 1..=n`.
pub fn shamir_split<R: Rng + ?Sized>(
    secret: &FieldElement,
    params: &ShareParams,
    rng: &mut R,
) -> Result<Vec<Share>, SssError> {
    let prime = params.prime();
    if secret.prime() != prime {
        return Err(crate::field::FieldError::ModulusMismatch {
            left: prime.value().clone(),
            right: secret.prime().value().clone(),
        }
        .into());
    }
    if prime.value() <= &BigUint::from(params.n()) {
        return Err(SssError::PrimeTooSmall {
            prime: prime.to_string(),
            requirement: format!("p > n = {}", params.n()),
        });
    }
    let mut coeffs = Vec::with_capacity(params.k());
    coeffs.push(secret.clone());
    coeffs.extend((1..params.k()).map(|_| FieldElement::random(prime, rng)));
    let f = Polynomial::new(coeffs)?;
    (1..=params.n())
        .map(|x| {
            let x = FieldElement::reduce_u64(x as u64, prime);
            let y = f.eval(&x)?;
            Ok(Share { x, y })
        })
        .collect()
}

/// Interpolates the k shares with the smallest x and evaluates at zero.
pub fn shamir_reconstruct(
    shares: &[Share],
    params: &ShareParams,
) -> Result<FieldElement, SssError> {
    let zero = FieldElement::zero(params.prime());
    let selected = select_shares(shares, params.k(), std::slice::from_ref(&zero))?;
    let points: Vec<Point> = selected[..params.k()]
        .iter()
        .map(|s| Point::from(*s))
        .collect();
    let f = lagrange_interpolate(&points, params.k())?;
    Ok(f.eval(&zero)?)
}
