//! Prime moduli and the Miller-Rabin gate that admits them.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};

use super::FieldError;

/// Witness set that makes Miller-Rabin deterministic for every n < 3.3 * 10^24,
/// which covers all 64-bit candidates.
const DETERMINISTIC_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Random rounds for candidates of 64 bits or more. Each round has error at most 1/4,
/// so 64 rounds bound the error by 2^-128.
const RANDOM_ROUNDS: usize = 64;

const SMALL_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// 2^61 - 1, the default production modulus.
pub const M61: u64 = (1 << 61) - 1;

struct Inner {
    value: BigUint,
    width_bits: u64,
    width_bytes: usize,
}

/// A validated prime modulus.
///
/// Cloning is cheap: the value lives behind an `Arc` and is shared by every
/// [`FieldElement`](super::FieldElement) built from it.
#[derive(Clone)]
pub struct Prime(Arc<Inner>);

impl Prime {
    /// Validates `candidate` with Miller-Rabin and wraps it.
    pub fn new(candidate: BigUint) -> Result<Self, FieldError> {
        if candidate < BigUint::from(2u8) {
            return Err(FieldError::TooSmall(candidate));
        }
        if !is_probable_prime(&candidate) {
            return Err(FieldError::Composite(candidate));
        }
        let width_bits = candidate.bits();
        let width_bytes = width_bits.div_ceil(8) as usize;
        Ok(Prime(Arc::new(Inner {
            value: candidate,
            width_bits,
            width_bytes,
        })))
    }

    pub fn from_u64(candidate: u64) -> Result<Self, FieldError> {
        Self::new(BigUint::from(candidate))
    }

    /// The modulus 31, small enough for exhaustive checks.
    pub fn p31() -> Self {
        Self::from_u64(31).expect("31 is prime")
    }

    /// 257, the smallest prime that admits one-byte chunks.
    pub fn p257() -> Self {
        Self::from_u64(257).expect("257 is prime")
    }

    /// 2^61 - 1.
    pub fn m61() -> Self {
        Self::from_u64(M61).expect("2^61 - 1 is prime")
    }

    /// Resolves a named prime (`m61`, `p257`, `p31`) or a decimal literal.
    pub fn from_name(name: &str) -> Result<Self, FieldError> {
        match name {
            "m61" => Ok(Self::m61()),
            "p257" => Ok(Self::p257()),
            "p31" => Ok(Self::p31()),
            literal => {
                let value = BigUint::from_str(literal)
                    .map_err(|_| FieldError::UnknownPrime(literal.to_string()))?;
                Self::new(value)
            }
        }
    }

    pub fn value(&self) -> &BigUint {
        &self.0.value
    }

    pub fn width_bits(&self) -> u64 {
        self.0.width_bits
    }

    /// Bytes needed to hold any element of the field.
    pub fn width_bytes(&self) -> usize {
        self.0.width_bytes
    }

    /// The modulus as a `u64`, if it fits.
    pub fn to_u64(&self) -> Option<u64> {
        self.0.value.to_u64()
    }
}

impl PartialEq for Prime {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.value == other.0.value
    }
}

impl Eq for Prime {}

impl fmt::Debug for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Prime({})", self.0.value)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.value)
    }
}

/// Miller-Rabin with a deterministic witness set below 2^64 and
/// [`RANDOM_ROUNDS`] random witnesses above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u8);
    if *n < two {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }

    let n_minus_one = n - 1u8;
    let shift = n_minus_one.trailing_zeros().unwrap_or(0);
    let odd = &n_minus_one >> shift;

    let passes = |witness: &BigUint| -> bool {
        let mut x = witness.modpow(&odd, n);
        if x.is_one() || x == n_minus_one {
            return true;
        }
        for _ in 1..shift {
            x = (&x * &x) % n;
            if x == n_minus_one {
                return true;
            }
            if x.is_one() {
                return false;
            }
        }
        false
    };

    if n.bits() <= 64 {
        DETERMINISTIC_WITNESSES
            .iter()
            .map(|&w| BigUint::from(w))
            .filter(|w| w < n)
            .all(|w| passes(&w))
    } else {
        let mut rng = rand::thread_rng();
        (0..RANDOM_ROUNDS).all(|_| {
            let witness = rng.gen_biguint_range(&two, &n_minus_one);
            passes(&witness)
        })
    }
}

#[cfg(test)]
fn is_prime_by_trial_division(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_small_named_modulus() {
        let p = Prime::from_u64(31).unwrap();
        assert_eq!(p.width_bits(), 5);
        assert_eq!(p.width_bytes(), 1);
    }

    #[test]
    fn rejects_composite_and_small() {
        assert!(matches!(Prime::from_u64(4), Err(FieldError::Composite(_))));
        assert!(matches!(Prime::from_u64(1), Err(FieldError::TooSmall(_))));
        assert!(matches!(Prime::from_u64(0), Err(FieldError::TooSmall(_))));
        // Carmichael numbers fool Fermat but not Miller-Rabin.
        for c in [561u64, 1105, 1729, 2465, 2821, 6601, 8911] {
            assert!(Prime::from_u64(c).is_err(), "{c}");
        }
    }

    #[test]
    fn mersenne_61() {
        let p = Prime::from_u64(M61).unwrap();
        assert_eq!(p.width_bits(), 61);
        assert_eq!(p.width_bytes(), 8);
        // 2^61 + 1 is divisible by 3.
        assert!(Prime::from_u64((1 << 61) + 1).is_err());
        // 2^59 - 1 = 179951 * 3203431780337.
        assert!(Prime::from_u64((1 << 59) - 1).is_err());
    }

    #[test]
    fn agrees_with_trial_division_below_five_thousand() {
        for n in 0..5000u64 {
            assert_eq!(
                is_probable_prime(&BigUint::from(n)),
                is_prime_by_trial_division(n),
                "{n}"
            );
        }
    }

    #[test]
    fn strong_pseudoprimes_rejected() {
        // Strong pseudoprimes to several small bases.
        for c in [
            2047u64,
            1_373_653,
            25_326_001,
            3_215_031_751,
            2_152_302_898_747,
            3_474_749_660_383,
            341_550_071_728_321,
            3_825_123_056_546_413_051,
        ] {
            assert!(!is_probable_prime(&BigUint::from(c)), "{c}");
        }
    }

    #[test]
    fn large_prime_and_product() {
        // 2^127 - 1 is prime; (2^61 - 1)(2^89 - 1) is not.
        let m127 = (BigUint::one() << 127u32) - 1u8;
        assert!(is_probable_prime(&m127));
        let m89 = (BigUint::one() << 89u32) - 1u8;
        let product = m89 * BigUint::from(M61);
        assert!(!is_probable_prime(&product));
    }

    #[test]
    fn named_primes() {
        assert_eq!(Prime::from_name("p31").unwrap().to_u64(), Some(31));
        assert_eq!(Prime::from_name("p257").unwrap().to_u64(), Some(257));
        assert_eq!(Prime::from_name("m61").unwrap().to_u64(), Some(M61));
        assert_eq!(Prime::from_name("101").unwrap().to_u64(), Some(101));
        assert!(matches!(
            Prime::from_name("m62"),
            Err(FieldError::UnknownPrime(_))
        ));
        assert!(matches!(
            Prime::from_name("100"),
            Err(FieldError::Composite(_))
        ));
    }
}
