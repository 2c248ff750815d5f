//! Arithmetic in the prime field Z_p.
//!
//! Elements carry their modulus. Combining elements of different fields is a
//! contract violation: the `try_*` methods report it as
//! [`FieldError::ModulusMismatch`], the operator impls panic.
//!
//! Nothing here is constant-time. Do not use it where timing side channels matter.

mod prime;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

pub use prime::{is_probable_prime, Prime, M61};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: BigUint, right: BigUint },
    #[error("zero has no multiplicative inverse")]
    NotInvertible,
    #[error("value {value} is out of range for modulus {modulus}")]
    OutOfRange { value: BigUint, modulus: BigUint },
    #[error("{0} is composite")]
    Composite(BigUint),
    #[error("{0} is below 2 and cannot be a prime modulus")]
    TooSmall(BigUint),
    #[error("unknown prime {0:?}: expected m61, p257, p31 or a decimal literal")]
    UnknownPrime(String),
}

/// An integer in `[0, p)`.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    value: BigUint,
    prime: Prime,
}

impl FieldElement {
    /// Wraps `value`, rejecting anything `>= p`.
    pub fn new(value: BigUint, prime: &Prime) -> Result<Self, FieldError> {
        if &value >= prime.value() {
            return Err(FieldError::OutOfRange {
                value,
                modulus: prime.value().clone(),
            });
        }
        Ok(FieldElement {
            value,
            prime: prime.clone(),
        })
    }

    pub fn from_u64(value: u64, prime: &Prime) -> Result<Self, FieldError> {
        Self::new(BigUint::from(value), prime)
    }

    /// Reduces an arbitrary integer mod p.
    pub fn reduce(value: &BigUint, prime: &Prime) -> Self {
        FieldElement {
            value: value % prime.value(),
            prime: prime.clone(),
        }
    }

    /// Reduces a `u64` mod p. Handy for small coordinates.
    pub fn reduce_u64(value: u64, prime: &Prime) -> Self {
        Self::reduce(&BigUint::from(value), prime)
    }

    pub fn zero(prime: &Prime) -> Self {
        FieldElement {
            value: BigUint::zero(),
            prime: prime.clone(),
        }
    }

    pub fn one(prime: &Prime) -> Self {
        Self::reduce(&BigUint::one(), prime)
    }

    /// Uniform sample from Z_p.
    pub fn random<R: Rng + ?Sized>(prime: &Prime, rng: &mut R) -> Self {
        FieldElement {
            value: rng.gen_biguint_below(prime.value()),
            prime: prime.clone(),
        }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn prime(&self) -> &Prime {
        &self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.prime == other.prime {
            Ok(())
        } else {
            Err(FieldError::ModulusMismatch {
                left: self.prime.value().clone(),
                right: other.prime.value().clone(),
            })
        }
    }

    fn with_value(&self, value: BigUint) -> Self {
        FieldElement {
            value,
            prime: self.prime.clone(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let mut sum = &self.value + &other.value;
        if &sum >= self.prime.value() {
            sum -= self.prime.value();
        }
        Ok(self.with_value(sum))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let diff = if self.value >= other.value {
            &self.value - &other.value
        } else {
            self.prime.value() - &other.value + &self.value
        };
        Ok(self.with_value(diff))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.with_value((&self.value * &other.value) % self.prime.value()))
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.value.is_zero() {
            return Err(FieldError::NotInvertible);
        }
        let modulus = BigInt::from_biguint(Sign::Plus, self.prime.value().clone());
        let (mut old_r, mut r) = (BigInt::from(self.value.clone()), modulus.clone());
        let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
        while !r.is_zero() {
            let q = &old_r / &r;
            let next_r = &old_r - &q * &r;
            old_r = std::mem::replace(&mut r, next_r);
            let next_s = &old_s - &q * &s;
            old_s = std::mem::replace(&mut s, next_s);
        }
        // gcd(a, p) = 1 for prime p and 0 < a < p.
        debug_assert!(old_r.is_one());
        let mut inverse = old_s % &modulus;
        if inverse.sign() == Sign::Minus {
            inverse += &modulus;
        }
        Ok(self.with_value(inverse.to_biguint().expect("inverse reduced into [0, p)")))
    }

    /// `self^exponent` by square-and-multiply. `0^0 = 1`.
    pub fn pow(&self, exponent: &BigUint) -> Self {
        let mut result = BigUint::one() % self.prime.value();
        for bit in (0..exponent.bits()).rev() {
            result = (&result * &result) % self.prime.value();
            if exponent.bit(bit) {
                result = (&result * &self.value) % self.prime.value();
            }
        }
        self.with_value(result)
    }

    pub fn pow_u64(&self, exponent: u64) -> Self {
        self.pow(&BigUint::from(exponent))
    }

    /// Big-endian bytes left-padded to the field width.
    pub fn to_be_bytes_fixed(&self) -> Vec<u8> {
        let width = self.prime.width_bytes();
        let raw = self.value.to_bytes_be();
        let mut out = vec![0u8; width];
        if !self.value.is_zero() {
            out[width - raw.len()..].copy_from_slice(&raw);
        }
        out
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.prime)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! panicking_op {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;

            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$try(rhs)
                    .expect("field elements with different moduli")
            }
        }

        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;

            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

panicking_op!(Add, add, try_add);
panicking_op!(Sub, sub, try_sub);
panicking_op!(Mul, mul, try_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        &FieldElement::zero(&self.prime) - self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p31() -> Prime {
        Prime::p31()
    }

    fn e(v: u64, p: &Prime) -> FieldElement {
        FieldElement::from_u64(v, p).unwrap()
    }

    #[test]
    fn add_examples() {
        let p = p31();
        assert_eq!(e(30, &p).try_add(&e(5, &p)).unwrap(), e(4, &p));
        assert_eq!(
            e(17, &p).try_add(&e(29, &p)).unwrap(),
            e((17 + 29) % 31, &p)
        );
        assert_eq!(e(17, &p).try_add(&e(29, &p)).unwrap(), e(15, &p));
        for x in 0..31 {
            assert_eq!(&FieldElement::zero(&p) + &e(x, &p), e(x, &p));
        }
    }

    #[test]
    fn sub_mul_examples() {
        let p = p31();
        assert_eq!(&e(3, &p) - &e(10, &p), e(24, &p));
        assert_eq!(&e(6, &p) * &e(6, &p), e(5, &p));
        for x in 0..31 {
            assert_eq!(&e(x, &p) * &FieldElement::one(&p), e(x, &p));
        }
    }

    #[test]
    fn inverse_examples() {
        let p = p31();
        assert_eq!(e(2, &p).inv().unwrap(), e(16, &p));
        assert_eq!(e(1, &p).inv().unwrap(), e(1, &p));
        assert_eq!(e(0, &p).inv(), Err(FieldError::NotInvertible));
    }

    #[test]
    fn inverse_exhaustive_small_primes() {
        for candidate in 2..=101u64 {
            let Ok(p) = Prime::from_u64(candidate) else {
                continue;
            };
            let mut seen = vec![false; candidate as usize];
            for a in 1..candidate {
                let inv = e(a, &p).inv().unwrap();
                // Multiplication oracle on plain integers.
                let iv: u64 = inv.value().try_into().unwrap();
                assert_eq!(a * iv % candidate, 1, "a={a} p={candidate}");
                assert!(!seen[iv as usize], "inverse not unique");
                seen[iv as usize] = true;
                // Fermat cross-check.
                assert_eq!(inv, e(a, &p).pow_u64(candidate - 2));
            }
            assert!(seen[1..].iter().all(|&s| s));
        }
    }

    #[test]
    fn inverse_in_gf2() {
        let p = Prime::from_u64(2).unwrap();
        assert_eq!(e(1, &p).inv().unwrap(), e(1, &p));
    }

    #[test]
    fn pow_examples() {
        let p = p31();
        assert_eq!(e(3, &p).pow_u64(5), e(26, &p));
        assert_eq!(e(7, &p).pow_u64(0), e(1, &p));
        assert_eq!(e(0, &p).pow_u64(0), e(1, &p));
        let four = e(4, &p);
        assert_eq!(four.pow_u64(3), &(&four * &four) * &four);
        assert_eq!(four.pow_u64(3), e(2, &p));
    }

    #[test]
    fn mismatched_moduli_rejected() {
        let a = e(3, &p31());
        let b = e(3, &Prime::p257());
        assert!(matches!(
            a.try_add(&b),
            Err(FieldError::ModulusMismatch { .. })
        ));
        assert!(a.try_sub(&b).is_err());
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    #[should_panic(expected = "different moduli")]
    fn operator_panics_on_mismatch() {
        let _ = &e(3, &p31()) + &e(3, &Prime::p257());
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(matches!(
            FieldElement::from_u64(31, &p31()),
            Err(FieldError::OutOfRange { .. })
        ));
    }

    #[test]
    fn field_axioms_exhaustive_p31() {
        let p = p31();
        let all: Vec<_> = (0..31).map(|v| e(v, &p)).collect();
        for a in &all {
            assert!((a - a).is_zero());
            assert!((a + &(-a)).is_zero());
            for b in &all {
                assert_eq!(a + b, b + a);
                assert_eq!(a * b, b * a);
                let (av, bv): (u64, u64) =
                    (a.value().try_into().unwrap(), b.value().try_into().unwrap());
                assert_eq!(a - b, e((av + 31 - bv) % 31, &p));
                for c in &all {
                    assert_eq!(&(a + b) + c, a + &(b + c));
                    assert_eq!(&(a * b) * c, a * &(b * c));
                    assert_eq!(a * &(b + c), &(a * b) + &(a * c));
                }
            }
        }
    }

    #[test]
    fn fixed_width_bytes() {
        let p = Prime::m61();
        assert_eq!(e(0, &p).to_be_bytes_fixed(), vec![0; 8]);
        assert_eq!(e(258, &p).to_be_bytes_fixed(), vec![0, 0, 0, 0, 0, 0, 1, 2]);
    }

    fn any_prime() -> impl Strategy<Value = Prime> {
        prop_oneof![
            Just(Prime::p31()),
            Just(Prime::p257()),
            Just(Prime::m61()),
            Just(Prime::new((BigUint::one() << 127u32) - 1u8).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn axioms_random(p in any_prime(), seed in any::<u64>()) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a = FieldElement::random(&p, &mut rng);
            let b = FieldElement::random(&p, &mut rng);
            let c = FieldElement::random(&p, &mut rng);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            for x in [&a, &b, &c, &(&a - &b), &(&a * &b)] {
                prop_assert!(x.value() < p.value());
            }
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), FieldElement::one(&p));
            }
        }

        #[test]
        fn pow_matches_repeated_mul(p in any_prime(), seed in any::<u64>(), exp in 0u64..=16) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a = FieldElement::random(&p, &mut rng);
            let mut expected = FieldElement::one(&p);
            for _ in 0..exp {
                expected = &expected * &a;
            }
            prop_assert_eq!(a.pow_u64(exp), expected);
        }
    }
}
