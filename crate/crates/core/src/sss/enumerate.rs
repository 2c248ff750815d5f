//! Exhaustive guessing of the one missing share in a small field.
//!
//! With k - 1 shares known, every guess for a k-th share fixes a distinct
//! polynomial. If the map from guesses to a secret's value is a bijection on
//! Z_p, the k - 1 shares leave every value of that secret equally likely.

use num_bigint::BigUint;

use crate::field::FieldElement;
use crate::poly::{lagrange_interpolate, Point, Polynomial};

use super::{Share, ShareParams, SssError};

/// Largest modulus [`enumerate_candidates`] will walk.
pub const ENUMERATION_LIMIT: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    /// The guessed y at the probe coordinate.
    pub guess: FieldElement,
    /// The polynomial through the known shares and the guess.
    pub polynomial: Polynomial,
    /// That polynomial evaluated at the target coordinate.
    pub value: FieldElement,
}

/// One candidate per guess, indexed by the guessed value.
#[derive(Debug, Clone)]
pub struct CandidateMap {
    candidates: Vec<Candidate>,
}

impl CandidateMap {
    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn value_for(&self, guess: u64) -> Option<&FieldElement> {
        self.candidates.get(guess as usize).map(|c| &c.value)
    }

    /// True if every element of Z_p appears exactly once as a candidate value.
    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.candidates.len()];
        for c in &self.candidates {
            let Ok(v) = usize::try_from(c.value.value()) else {
                return false;
            };
            if v >= seen.len() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// True if no two guesses produced the same coefficient vector.
    pub fn polynomials_distinct(&self) -> bool {
        let mut coeffs: Vec<Vec<&BigUint>> = self
            .candidates
            .iter()
            .map(|c| c.polynomial.coeffs().iter().map(|e| e.value()).collect())
            .collect();
        coeffs.sort();
        coeffs.windows(2).all(|w| w[0] != w[1])
    }
}

/// For every `g` in Z_p, interpolates `partial` plus `(probe_x, g)` and
/// records the result at `target_x`.
pub fn enumerate_candidates(
    partial: &[Share],
    probe_x: &FieldElement,
    target_x: &FieldElement,
    params: &ShareParams,
) -> Result<CandidateMap, SssError> {
    let prime = params.prime();
    let size = prime
        .to_u64()
        .filter(|&p| p <= ENUMERATION_LIMIT)
        .ok_or_else(|| SssError::EnumerationLimit(prime.to_string()))?;
    let k = params.k();
    if partial.len() != k - 1 {
        return Err(SssError::PartialCount {
            expected: k - 1,
            got: partial.len(),
        });
    }
    let mut points: Vec<Point> = partial.iter().map(Point::from).collect();
    let known: Vec<&FieldElement> = points.iter().map(|p| &p.x).collect();
    for (i, x) in known.iter().enumerate() {
        if known[..i].contains(x) {
            return Err(SssError::DuplicateShareX((*x).clone()));
        }
    }
    if known.contains(&probe_x) {
        return Err(SssError::DuplicateShareX(probe_x.clone()));
    }
    if known.contains(&target_x) || target_x == probe_x {
        return Err(SssError::CoordinateCollision(target_x.clone()));
    }

    points.push(Point {
        x: probe_x.clone(),
        y: FieldElement::zero(prime),
    });
    let candidates = (0..size)
        .map(|g| {
            let guess = FieldElement::reduce_u64(g, prime);
            points[k - 1].y = guess.clone();
            let polynomial = lagrange_interpolate(&points, k)?;
            let value = polynomial.eval(target_x)?;
            Ok(Candidate {
                guess,
                polynomial,
                value,
            })
        })
        .collect::<Result<_, SssError>>()?;
    Ok(CandidateMap { candidates })
}
