//! Dense polynomials over GF(p), Lagrange interpolation, and a Gaussian
//! elimination solver for the equivalent Vandermonde system.

use thiserror::Error;

use crate::field::{FieldElement, FieldError, Prime};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("no points to interpolate")]
    Empty,
    #[error("expected {expected} points, got {got}")]
    PointCount { expected: usize, got: usize },
    #[error("duplicate x-coordinate {0}")]
    DuplicateX(FieldElement),
    #[error("vandermonde system is singular")]
    Singular,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pub x: FieldElement,
    pub y: FieldElement,
}

impl Point {
    pub fn new(x: FieldElement, y: FieldElement) -> Result<Self, FieldError> {
        if x.prime() != y.prime() {
            return Err(FieldError::ModulusMismatch {
                left: x.prime().value().clone(),
                right: y.prime().value().clone(),
            });
        }
        Ok(Point { x, y })
    }
}

/// Coefficients in ascending powers: `coeffs[i]` multiplies `x^i`.
///
/// Length is fixed at construction and never trimmed, so a polynomial
/// interpolated from k points always has k coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<FieldElement>) -> Result<Self, PolyError> {
        let first = coeffs.first().ok_or(PolyError::Empty)?;
        if let Some(bad) = coeffs.iter().find(|c| c.prime() != first.prime()) {
            return Err(FieldError::ModulusMismatch {
                left: first.prime().value().clone(),
                right: bad.prime().value().clone(),
            }
            .into());
        }
        Ok(Polynomial { coeffs })
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn prime(&self) -> &Prime {
        self.coeffs[0].prime()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement, FieldError> {
        let mut acc = FieldElement::zero(self.prime());
        for c in self.coeffs.iter().rev() {
            acc = acc.try_mul(x)?.try_add(c)?;
        }
        Ok(acc)
    }
}

pub fn poly_eval(f: &Polynomial, x: &FieldElement) -> Result<FieldElement, FieldError> {
    f.eval(x)
}

fn check_points(points: &[Point], k: usize) -> Result<&Prime, PolyError> {
    if points.is_empty() || k == 0 {
        return Err(PolyError::Empty);
    }
    if points.len() != k {
        return Err(PolyError::PointCount {
            expected: k,
            got: points.len(),
        });
    }
    let prime = points[0].x.prime();
    for p in points {
        if p.x.prime() != prime || p.y.prime() != prime {
            return Err(FieldError::ModulusMismatch {
                left: prime.value().clone(),
                right: p.x.prime().value().clone(),
            }
            .into());
        }
    }
    Ok(prime)
}

fn ensure_distinct(xs: &[&FieldElement]) -> Result<(), PolyError> {
    let mut sorted: Vec<_> = xs.iter().map(|x| x.value()).collect();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        let dup = xs.iter().find(|x| x.value() == w[0]).unwrap();
        return Err(PolyError::DuplicateX((*dup).clone()));
    }
    Ok(())
}

/// Multiplies a coefficient vector by `(x - root)` in place.
fn mul_linear(coeffs: &mut Vec<FieldElement>, root: &FieldElement) {
    let prime = root.prime().clone();
    coeffs.push(FieldElement::zero(&prime));
    for i in (0..coeffs.len()).rev() {
        let shifted = if i == 0 {
            FieldElement::zero(&prime)
        } else {
            coeffs[i - 1].clone()
        };
        coeffs[i] = &shifted - &(&coeffs[i] * root);
    }
}

/// Divides a monic coefficient vector by `(x - root)`, dropping the remainder.
fn div_linear(coeffs: &[FieldElement], root: &FieldElement) -> Vec<FieldElement> {
    let degree = coeffs.len() - 1;
    let mut quotient = vec![FieldElement::zero(root.prime()); degree];
    let mut carry = FieldElement::zero(root.prime());
    for i in (0..degree).rev() {
        carry = &coeffs[i + 1] + &(&carry * root);
        quotient[i] = carry.clone();
    }
    quotient
}

/// Lagrange basis coefficients: row `i` holds the coefficients of
/// `prod_{j != i} (x - x_j) / (x_i - x_j)`.
pub(crate) fn lagrange_basis(xs: &[&FieldElement]) -> Result<Vec<Vec<FieldElement>>, PolyError> {
    ensure_distinct(xs)?;
    let prime = xs[0].prime();
    let mut master = vec![FieldElement::one(prime)];
    for x in xs {
        mul_linear(&mut master, x);
    }
    xs.iter()
        .map(|xi| {
            let numerator = div_linear(&master, xi);
            let denominator = Polynomial {
                coeffs: numerator.clone(),
            }
            .eval(xi)?;
            let scale = denominator.inv()?;
            Ok(numerator.iter().map(|c| c * &scale).collect())
        })
        .collect()
}

/// The unique polynomial of length k through the k given points.
pub fn lagrange_interpolate(points: &[Point], k: usize) -> Result<Polynomial, PolyError> {
    let prime = check_points(points, k)?;
    let xs: Vec<_> = points.iter().map(|p| &p.x).collect();
    let basis = lagrange_basis(&xs)?;
    let mut coeffs = vec![FieldElement::zero(prime); k];
    for (point, row) in points.iter().zip(&basis) {
        for (acc, b) in coeffs.iter_mut().zip(row) {
            *acc = &*acc + &(b * &point.y);
        }
    }
    Ok(Polynomial { coeffs })
}

/// Solves `A v = F` for the Vandermonde matrix `A[i][j] = x_i^j` by
/// Gauss-Jordan elimination. The pivot is the first row at or below the
/// diagonal with a nonzero entry.
pub fn solve_vandermonde(points: &[Point], k: usize) -> Result<Polynomial, PolyError> {
    let prime = check_points(points, k)?;
    // Augmented matrix [A | F].
    let mut rows: Vec<Vec<FieldElement>> = points
        .iter()
        .map(|p| {
            let mut row = Vec::with_capacity(k + 1);
            let mut power = FieldElement::one(prime);
            for _ in 0..k {
                row.push(power.clone());
                power = &power * &p.x;
            }
            row.push(p.y.clone());
            row
        })
        .collect();

    for col in 0..k {
        let pivot = (col..k)
            .find(|&r| !rows[r][col].is_zero())
            .ok_or(PolyError::Singular)?;
        rows.swap(col, pivot);
        let scale = rows[col][col].inv()?;
        for entry in rows[col].iter_mut() {
            *entry = &*entry * &scale;
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (entry, p) in row.iter_mut().zip(&pivot_row) {
                *entry = &*entry - &(&factor * p);
            }
        }
    }

    Ok(Polynomial {
        coeffs: rows.into_iter().map(|mut row| row.pop().unwrap()).collect(),
    })
}

/// The linear map that sends the values of a polynomial at `from` (one value
/// per point, `from.len()` = k) to the values of the same interpolant at `to`.
///
/// Building it costs one interpolation basis; applying it costs
/// `to.len() * k` multiplications, independent of the data. Batch split and
/// reconstruct run every block through one precomputed map.
#[derive(Debug, Clone)]
pub struct EvaluationMap {
    rows: Vec<Vec<FieldElement>>,
    width: usize,
}

impl EvaluationMap {
    pub fn new(from: &[FieldElement], to: &[FieldElement]) -> Result<Self, PolyError> {
        if from.is_empty() {
            return Err(PolyError::Empty);
        }
        let prime = from[0].prime();
        if let Some(bad) = from.iter().chain(to).find(|x| x.prime() != prime) {
            return Err(FieldError::ModulusMismatch {
                left: prime.value().clone(),
                right: bad.prime().value().clone(),
            }
            .into());
        }
        let from_refs: Vec<_> = from.iter().collect();
        let basis: Vec<Polynomial> = lagrange_basis(&from_refs)?
            .into_iter()
            .map(|coeffs| Polynomial { coeffs })
            .collect();
        let rows = to
            .iter()
            .map(|x| {
                basis
                    .iter()
                    .map(|b| b.eval(x))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(EvaluationMap {
            rows,
            width: from.len(),
        })
    }

    /// Number of input values expected by [`apply`](Self::apply).
    pub fn width(&self) -> usize {
        self.width
    }

    /// Number of output values.
    pub fn height(&self) -> usize {
        self.rows.len()
    }

    /// Maps `values` (the interpolant at the `from` points) to the interpolant at the `to` points.
    pub fn apply(&self, values: &[FieldElement]) -> Result<Vec<FieldElement>, PolyError> {
        if values.len() != self.width {
            return Err(PolyError::PointCount {
                expected: self.width,
                got: values.len(),
            });
        }
        self.rows
            .iter()
            .map(|row| {
                let prime = row[0].prime();
                let mut acc = FieldElement::zero(prime);
                for (coefficient, v) in row.iter().zip(values) {
                    acc = acc.try_add(&coefficient.try_mul(v)?)?;
                }
                Ok(acc)
            })
            .collect()
    }
}
