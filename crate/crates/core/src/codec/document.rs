//! The share file format.
//!
//! All integers are big-endian. Field elements are fixed-width, `width_bytes(p)`
//! bytes each.
//!
//! ```text
//! magic            4 bytes   "SESS"
//! version          u8        1
//! k                u16
//! n                u16
//! x_coord          u16 length (= width_bytes) + that many bytes
//! prime            u16 length + minimal big-endian bytes
//! layout_tag       u8        0 = sequential, 1 = explicit
//! secret_xs        k elements, explicit layout only
//! plaintext_length u64
//! payload          one element per block
//! ```
//!
//! The block count follows from the header. For p >= 257 the plaintext is a
//! byte stream and `plaintext_length` counts bytes; for smaller primes it is a
//! sequence of field elements and `plaintext_length` counts elements.

use num_bigint::BigUint;

use crate::field::{FieldElement, Prime};

use super::chunking::chunk_bytes_for;
use super::CodecError;

pub const MAGIC: [u8; 4] = *b"SESS";
pub const VERSION: u8 = 1;

const TAG_SEQUENTIAL: u8 = 0;
const TAG_EXPLICIT: u8 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DocumentLayout {
    Sequential,
    Explicit { secret_xs: Vec<FieldElement> },
}

impl DocumentLayout {
    pub fn name(&self) -> &'static str {
        match self {
            DocumentLayout::Sequential => "sequential",
            DocumentLayout::Explicit { .. } => "explicit",
        }
    }
}

/// What `plaintext_length` counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaintextUnit {
    Bytes { chunk_bytes: usize },
    Elements,
}

impl PlaintextUnit {
    pub fn for_prime(prime: &Prime) -> Self {
        match chunk_bytes_for(prime) {
            0 => PlaintextUnit::Elements,
            chunk_bytes => PlaintextUnit::Bytes { chunk_bytes },
        }
    }

    /// Field elements needed to carry `plaintext_length` units.
    pub fn element_count(&self, plaintext_length: u64) -> u64 {
        match self {
            PlaintextUnit::Bytes { chunk_bytes } => plaintext_length.div_ceil(*chunk_bytes as u64),
            PlaintextUnit::Elements => plaintext_length,
        }
    }
}

/// Payload elements (blocks) a document must carry.
pub fn expected_payload_len(prime: &Prime, k: usize, plaintext_length: u64) -> u64 {
    PlaintextUnit::for_prime(prime)
        .element_count(plaintext_length)
        .div_ceil(k as u64)
}

/// One share file: the common header, this share's x-coordinate, and one y per block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareDocument {
    k: u16,
    n: u16,
    x: FieldElement,
    prime: Prime,
    layout: DocumentLayout,
    plaintext_length: u64,
    payload: Vec<FieldElement>,
}

impl ShareDocument {
    pub fn new(
        k: u16,
        n: u16,
        x: FieldElement,
        layout: DocumentLayout,
        plaintext_length: u64,
        payload: Vec<FieldElement>,
    ) -> Result<Self, CodecError> {
        let doc = ShareDocument {
            k,
            n,
            prime: x.prime().clone(),
            x,
            layout,
            plaintext_length,
            payload,
        };
        doc.validate()?;
        Ok(doc)
    }

    fn validate(&self) -> Result<(), CodecError> {
        if self.k == 0 || self.k > self.n {
            return Err(CodecError::Inconsistent(format!(
                "k={} n={} violates 1 <= k <= n",
                self.k, self.n
            )));
        }
        let k = self.k as usize;
        let foreign = |e: &FieldElement| e.prime() != &self.prime;
        if self.payload.iter().any(foreign) {
            return Err(CodecError::Inconsistent(
                "payload element from a different field".into(),
            ));
        }
        match &self.layout {
            DocumentLayout::Sequential => {
                let first = BigUint::from(self.k);
                let last = BigUint::from(self.k as u32 + self.n as u32);
                if self.x.value() < &first || self.x.value() >= &last {
                    return Err(CodecError::Inconsistent(format!(
                        "x={} outside the sequential share range {}..{}",
                        self.x, first, last
                    )));
                }
                if self.prime.value() < &last {
                    return Err(CodecError::Inconsistent(format!(
                        "prime {} cannot host k + n = {} distinct coordinates",
                        self.prime, last
                    )));
                }
            }
            DocumentLayout::Explicit { secret_xs } => {
                if secret_xs.len() != k {
                    return Err(CodecError::Inconsistent(format!(
                        "{} secret x-coordinates for k={}",
                        secret_xs.len(),
                        k
                    )));
                }
                if secret_xs.iter().any(foreign) {
                    return Err(CodecError::Inconsistent(
                        "secret x from a different field".into(),
                    ));
                }
                for (i, sx) in secret_xs.iter().enumerate() {
                    if secret_xs[..i].contains(sx) {
                        return Err(CodecError::Inconsistent(format!("duplicate secret x {sx}")));
                    }
                }
                if secret_xs.contains(&self.x) {
                    return Err(CodecError::Inconsistent(format!(
                        "share x={} collides with a secret x",
                        self.x
                    )));
                }
            }
        }
        let expected = expected_payload_len(&self.prime, k, self.plaintext_length);
        if self.payload.len() as u64 != expected {
            return Err(CodecError::Inconsistent(format!(
                "payload has {} elements, header implies {}",
                self.payload.len(),
                expected
            )));
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn x(&self) -> &FieldElement {
        &self.x
    }

    pub fn prime(&self) -> &Prime {
        &self.prime
    }

    pub fn layout(&self) -> &DocumentLayout {
        &self.layout
    }

    pub fn plaintext_length(&self) -> u64 {
        self.plaintext_length
    }

    pub fn plaintext_unit(&self) -> PlaintextUnit {
        PlaintextUnit::for_prime(&self.prime)
    }

    pub fn payload(&self) -> &[FieldElement] {
        &self.payload
    }

    /// Serialized header size in bytes.
    pub fn header_len(&self) -> usize {
        header_len(
            &self.prime,
            self.k as usize,
            !matches!(self.layout, DocumentLayout::Sequential),
        )
    }

    /// Compares every header field except the x-coordinate. Returns the name
    /// of the first field that differs.
    pub fn header_mismatch(&self, other: &ShareDocument) -> Option<&'static str> {
        if self.k != other.k {
            Some("k")
        } else if self.n != other.n {
            Some("n")
        } else if self.prime != other.prime {
            Some("prime")
        } else if self.layout != other.layout {
            Some("layout")
        } else if self.plaintext_length != other.plaintext_length {
            Some("plaintext_length")
        } else {
            None
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let width = self.prime.width_bytes();
        let prime_bytes = self.prime.value().to_bytes_be();
        let mut out = Vec::with_capacity(self.header_len() + self.payload.len() * width);
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&self.k.to_be_bytes());
        out.extend_from_slice(&self.n.to_be_bytes());
        out.extend_from_slice(&(width as u16).to_be_bytes());
        out.extend_from_slice(&self.x.to_be_bytes_fixed());
        out.extend_from_slice(&(prime_bytes.len() as u16).to_be_bytes());
        out.extend_from_slice(&prime_bytes);
        match &self.layout {
            DocumentLayout::Sequential => out.push(TAG_SEQUENTIAL),
            DocumentLayout::Explicit { secret_xs } => {
                out.push(TAG_EXPLICIT);
                for sx in secret_xs {
                    out.extend_from_slice(&sx.to_be_bytes_fixed());
                }
            }
        }
        out.extend_from_slice(&self.plaintext_length.to_be_bytes());
        for y in &self.payload {
            out.extend_from_slice(&y.to_be_bytes_fixed());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, CodecError> {
        let mut r = Reader { bytes, pos: 0 };
        if r.take(4, "magic")? != MAGIC {
            return Err(CodecError::BadMagic);
        }
        let version = r.u8("version")?;
        if version != VERSION {
            return Err(CodecError::UnsupportedVersion(version));
        }
        let k = r.u16("k")?;
        let n = r.u16("n")?;
        let x_width = r.u16("x_coord length")? as usize;
        let x_raw = r.take(x_width, "x_coord")?;
        let prime_len = r.u16("prime length")? as usize;
        let prime_raw = r.take(prime_len, "prime")?;
        if prime_raw.first() == Some(&0) {
            return Err(CodecError::NonCanonical(
                "prime has a leading zero byte".into(),
            ));
        }
        let prime =
            Prime::new(BigUint::from_bytes_be(prime_raw)).map_err(CodecError::InvalidPrime)?;
        let width = prime.width_bytes();
        if x_width != width {
            return Err(CodecError::NonCanonical(format!(
                "x_coord is {x_width} bytes, field width is {width}"
            )));
        }
        let x = element(x_raw, &prime, "x_coord")?;
        let layout = match r.u8("layout_tag")? {
            TAG_SEQUENTIAL => DocumentLayout::Sequential,
            TAG_EXPLICIT => {
                let secret_xs = (0..k)
                    .map(|_| element(r.take(width, "secret_xs")?, &prime, "secret_xs"))
                    .collect::<Result<_, _>>()?;
                DocumentLayout::Explicit { secret_xs }
            }
            tag => return Err(CodecError::UnknownLayout(tag)),
        };
        let plaintext_length =
            u64::from_be_bytes(r.take(8, "plaintext_length")?.try_into().unwrap());
        if k == 0 || k > n {
            return Err(CodecError::Inconsistent(format!(
                "k={k} n={n} violates 1 <= k <= n"
            )));
        }
        let count = expected_payload_len(&prime, k as usize, plaintext_length);
        let remaining = (bytes.len() - r.pos) as u64;
        let needed = count
            .checked_mul(width as u64)
            .ok_or(CodecError::Truncated("payload"))?;
        if remaining < needed {
            return Err(CodecError::Truncated("payload"));
        }
        if remaining > needed {
            return Err(CodecError::TrailingBytes((remaining - needed) as usize));
        }
        let payload = (0..count)
            .map(|_| element(r.take(width, "payload")?, &prime, "payload"))
            .collect::<Result<_, _>>()?;
        ShareDocument::new(k, n, x, layout, plaintext_length, payload)
    }
}

/// Header size in bytes for a document over `prime` with threshold `k`.
pub fn header_len(prime: &Prime, k: usize, explicit: bool) -> usize {
    let width = prime.width_bytes();
    let prime_len = prime.value().to_bytes_be().len();
    let secret_xs = if explicit { k * width } else { 0 };
    4 + 1 + 2 + 2 + 2 + width + 2 + prime_len + 1 + secret_xs + 8
}

fn element(raw: &[u8], prime: &Prime, field: &'static str) -> Result<FieldElement, CodecError> {
    let value = BigUint::from_bytes_be(raw);
    FieldElement::new(value, prime).map_err(|_| {
        CodecError::RangeViolation(format!("{field} element is not below p = {prime}"))
    })
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, len: usize, what: &'static str) -> Result<&'a [u8], CodecError> {
        let end = self.pos.checked_add(len).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or(CodecError::Truncated(what))?;
        let slice = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(slice)
    }

    fn u8(&mut self, what: &'static str) -> Result<u8, CodecError> {
        Ok(self.take(1, what)?[0])
    }

    fn u16(&mut self, what: &'static str) -> Result<u16, CodecError> {
        Ok(u16::from_be_bytes(self.take(2, what)?.try_into().unwrap()))
    }
}
