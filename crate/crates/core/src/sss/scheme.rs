use rand::Rng;

use crate::field::{FieldElement, FieldError};
use crate::poly::{lagrange_interpolate, Point, Polynomial};

use super::{Layout, SecretBlock, Share, ShareParams, SssError};

fn interpolate_at(
    secret_xs: &[FieldElement],
    secrets: &[FieldElement],
) -> Result<Polynomial, SssError> {
    let points: Vec<Point> = secret_xs
        .iter()
        .zip(secrets)
        .map(|(x, s)| Point {
            x: x.clone(),
            y: s.clone(),
        })
        .collect();
    Ok(lagrange_interpolate(&points, points.len())?)
}

/// Shares `block` under the Sequential layout: secrets at `0..k`, shares at
/// `k..k+n` in ascending order.
pub fn split_secrets(block: &SecretBlock, params: &ShareParams) -> Result<Vec<Share>, SssError> {
    if !params.is_sequential() {
        return Err(SssError::WrongLayout("sequential"));
    }
    block.check(params)?;
    let f = interpolate_at(&params.sequential_secret_xs(), block.secrets())?;
    params
        .share_xs()
        .into_iter()
        .map(|x| {
            let y = f.eval(&x)?;
            Ok(Share { x, y })
        })
        .collect()
}

/// Shares `block` with the secrets placed at `secret_xs` and the shares at
/// `share_xs`. The two coordinate sets must be disjoint.
pub fn split_secrets_with_secret_xs(
    block: &SecretBlock,
    secret_xs: &[FieldElement],
    share_xs: &[FieldElement],
) -> Result<Vec<Share>, SssError> {
    if secret_xs.len() != block.len() {
        return Err(SssError::SecretXCount {
            expected: block.len(),
            got: secret_xs.len(),
        });
    }
    if let Some(x) = share_xs.iter().find(|x| secret_xs.contains(x)) {
        return Err(SssError::CoordinateCollision(x.clone()));
    }
    let f = interpolate_at(secret_xs, block.secrets())?;
    share_xs
        .iter()
        .map(|x| {
            let y = f.eval(x)?;
            Ok(Share { x: x.clone(), y })
        })
        .collect()
}

/// Draws k distinct secret coordinates uniformly from Z_p minus the share coordinates.
pub fn draw_secret_xs<R: Rng + ?Sized>(
    params: &ShareParams,
    rng: &mut R,
) -> Result<Vec<FieldElement>, SssError> {
    let Layout::Explicit { share_xs } = params.layout() else {
        return Err(SssError::WrongLayout("explicit"));
    };
    let mut drawn: Vec<FieldElement> = Vec::with_capacity(params.k());
    while drawn.len() < params.k() {
        let x = FieldElement::random(params.prime(), rng);
        if !share_xs.contains(&x) && !drawn.contains(&x) {
            drawn.push(x);
        }
    }
    Ok(drawn)
}

/// The random-coordinate variant: returns the shares (at the layout's share
/// coordinates) and the secret coordinates that were drawn. The latter are
/// public and needed for reconstruction.
pub fn split_secrets_at_points<R: Rng + ?Sized>(
    block: &SecretBlock,
    params: &ShareParams,
    rng: &mut R,
) -> Result<(Vec<Share>, Vec<FieldElement>), SssError> {
    block.check(params)?;
    let secret_xs = draw_secret_xs(params, rng)?;
    let shares = split_secrets_with_secret_xs(block, &secret_xs, &params.share_xs())?;
    Ok((shares, secret_xs))
}

/// Validates a share set and sorts it by x. The first k entries of the
/// result are the ones reconstruction uses; the rest are surplus.
pub fn select_shares<'a>(
    shares: &'a [Share],
    k: usize,
    secret_xs: &[FieldElement],
) -> Result<Vec<&'a Share>, SssError> {
    if shares.len() < k {
        return Err(SssError::InsufficientShares {
            have: shares.len(),
            need: k,
        });
    }
    if let Some(prime) = secret_xs.first().map(|x| x.prime()) {
        for s in shares {
            for v in [&s.x, &s.y] {
                if v.prime() != prime {
                    return Err(FieldError::ModulusMismatch {
                        left: prime.value().clone(),
                        right: v.prime().value().clone(),
                    }
                    .into());
                }
            }
        }
    }
    let mut sorted: Vec<&Share> = shares.iter().collect();
    sorted.sort_by(|a, b| a.x.value().cmp(b.x.value()));
    if let Some(w) = sorted.windows(2).find(|w| w[0].x == w[1].x) {
        return Err(SssError::DuplicateShareX(w[0].x.clone()));
    }
    if let Some(s) = sorted.iter().find(|s| secret_xs.contains(&s.x)) {
        return Err(SssError::CoordinateCollision(s.x.clone()));
    }
    Ok(sorted)
}

fn reconstruct_with(
    shares: &[Share],
    k: usize,
    secret_xs: &[FieldElement],
    verify: bool,
) -> Result<SecretBlock, SssError> {
    let selected = select_shares(shares, k, secret_xs)?;
    let points: Vec<Point> = selected[..k].iter().map(|s| Point::from(*s)).collect();
    let f = lagrange_interpolate(&points, k)?;
    if verify {
        for surplus in &selected[k..] {
            if f.eval(&surplus.x)? != surplus.y {
                return Err(SssError::VerificationFailed(surplus.x.clone()));
            }
        }
    }
    let secrets = secret_xs
        .iter()
        .map(|x| f.eval(x))
        .collect::<Result<_, _>>()?;
    Ok(SecretBlock::new(secrets))
}

/// Recovers the k secrets of a Sequential split from any k or more shares.
/// Uses the k shares with the smallest x; surplus shares are validated for
/// distinctness but not checked against the polynomial.
pub fn reconstruct_secrets(
    shares: &[Share],
    params: &ShareParams,
) -> Result<SecretBlock, SssError> {
    if !params.is_sequential() {
        return Err(SssError::WrongLayout("sequential"));
    }
    reconstruct_with(shares, params.k(), &params.sequential_secret_xs(), false)
}

/// Like [`reconstruct_secrets`], but every surplus share must lie on the
/// reconstructed polynomial.
pub fn reconstruct_secrets_verified(
    shares: &[Share],
    params: &ShareParams,
) -> Result<SecretBlock, SssError> {
    if !params.is_sequential() {
        return Err(SssError::WrongLayout("sequential"));
    }
    reconstruct_with(shares, params.k(), &params.sequential_secret_xs(), true)
}

fn check_secret_xs(secret_xs: &[FieldElement], params: &ShareParams) -> Result<(), SssError> {
    if secret_xs.len() != params.k() {
        return Err(SssError::SecretXCount {
            expected: params.k(),
            got: secret_xs.len(),
        });
    }
    Ok(())
}

/// Recovers secrets placed at `secret_xs`, returned in the order of `secret_xs`.
pub fn reconstruct_secrets_at_points(
    shares: &[Share],
    secret_xs: &[FieldElement],
    params: &ShareParams,
) -> Result<SecretBlock, SssError> {
    check_secret_xs(secret_xs, params)?;
    reconstruct_with(shares, params.k(), secret_xs, false)
}

pub fn reconstruct_secrets_at_points_verified(
    shares: &[Share],
    secret_xs: &[FieldElement],
    params: &ShareParams,
) -> Result<SecretBlock, SssError> {
    check_secret_xs(secret_xs, params)?;
    reconstruct_with(shares, params.k(), secret_xs, true)
}
