//! Byte streams to secret blocks and back.
//!
//! The stream is cut into `chunk_bytes`-byte big-endian integers, with
//! `chunk_bytes = floor((bits(p) - 1) / 8)` so every chunk is below p. The
//! last chunk is zero-padded on the right and the last block is padded with
//! zero elements; the caller keeps the plaintext length to undo both.

use num_bigint::BigUint;

use crate::field::{FieldElement, Prime};
use crate::sss::SecretBlock;

use super::CodecError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChunkingSpec {
    prime: Prime,
    chunk_bytes: usize,
    k: usize,
}

/// Bytes per chunk for `prime`, zero when p < 257.
pub fn chunk_bytes_for(prime: &Prime) -> usize {
    ((prime.width_bits() - 1) / 8) as usize
}

impl ChunkingSpec {
    pub fn new(prime: Prime, k: usize) -> Result<Self, CodecError> {
        let chunk_bytes = chunk_bytes_for(&prime);
        if chunk_bytes == 0 {
            return Err(CodecError::PrimeTooSmallForBytes(prime.to_string()));
        }
        if k == 0 {
            return Err(CodecError::Inconsistent("k must be at least 1".into()));
        }
        Ok(ChunkingSpec {
            prime,
            chunk_bytes,
            k,
        })
    }

    pub fn prime(&self) -> &Prime {
        &self.prime
    }

    pub fn chunk_bytes(&self) -> usize {
        self.chunk_bytes
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Chunks needed for `len` bytes.
    pub fn chunk_count(&self, len: u64) -> u64 {
        len.div_ceil(self.chunk_bytes as u64)
    }

    /// Blocks needed for `len` bytes.
    pub fn block_count(&self, len: u64) -> u64 {
        self.chunk_count(len).div_ceil(self.k as u64)
    }
}

/// Groups elements k at a time, padding the last group with zeros.
pub fn group_into_blocks(elements: Vec<FieldElement>, k: usize, prime: &Prime) -> Vec<SecretBlock> {
    let mut blocks = Vec::with_capacity(elements.len().div_ceil(k));
    let mut iter = elements.into_iter().peekable();
    while iter.peek().is_some() {
        let mut block: Vec<FieldElement> = iter.by_ref().take(k).collect();
        block.resize(k, FieldElement::zero(prime));
        blocks.push(SecretBlock::new(block));
    }
    blocks
}

pub fn encode_stream(data: &[u8], spec: &ChunkingSpec) -> Vec<SecretBlock> {
    let elements = data
        .chunks(spec.chunk_bytes)
        .map(|chunk| {
            let mut padded = chunk.to_vec();
            padded.resize(spec.chunk_bytes, 0);
            FieldElement::new(BigUint::from_bytes_be(&padded), &spec.prime)
                .expect("chunk width keeps values below p")
        })
        .collect();
    group_into_blocks(elements, spec.k, &spec.prime)
}

pub fn decode_stream(
    blocks: &[SecretBlock],
    plaintext_length: u64,
    spec: &ChunkingSpec,
) -> Result<Vec<u8>, CodecError> {
    let capacity = blocks.len() as u64 * spec.k as u64 * spec.chunk_bytes as u64;
    if plaintext_length > capacity {
        return Err(CodecError::CapacityExceeded {
            length: plaintext_length,
            capacity,
        });
    }
    let mut out = Vec::with_capacity(capacity as usize);
    for block in blocks {
        if block.len() != spec.k {
            return Err(CodecError::Inconsistent(format!(
                "block has {} elements, expected k={}",
                block.len(),
                spec.k
            )));
        }
        for element in block.secrets() {
            if element.prime() != &spec.prime {
                return Err(CodecError::Inconsistent(
                    "block element from a different field".into(),
                ));
            }
            let raw = element.value().to_bytes_be();
            let significant = if element.is_zero() { 0 } else { raw.len() };
            if significant > spec.chunk_bytes {
                return Err(CodecError::RangeViolation(format!(
                    "element {element} does not fit in {} bytes",
                    spec.chunk_bytes
                )));
            }
            out.extend(std::iter::repeat_n(0u8, spec.chunk_bytes - significant));
            out.extend_from_slice(&raw[raw.len() - significant..]);
        }
    }
    out.truncate(plaintext_length as usize);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn blocks_u64(blocks: &[SecretBlock]) -> Vec<Vec<u64>> {
        blocks
            .iter()
            .map(|b| {
                b.secrets()
                    .iter()
                    .map(|e| e.value().try_into().unwrap())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn chunk_widths() {
        assert_eq!(chunk_bytes_for(&Prime::p31()), 0);
        assert_eq!(chunk_bytes_for(&Prime::p257()), 1);
        assert_eq!(chunk_bytes_for(&Prime::m61()), 7);
        assert!(matches!(
            ChunkingSpec::new(Prime::p31(), 2),
            Err(CodecError::PrimeTooSmallForBytes(_))
        ));
    }

    #[test]
    fn encode_examples() {
        let spec = ChunkingSpec::new(Prime::p257(), 2).unwrap();
        assert_eq!(
            blocks_u64(&encode_stream(&[65, 66], &spec)),
            vec![vec![65, 66]]
        );
        assert_eq!(
            blocks_u64(&encode_stream(&[65, 66, 67], &spec)),
            vec![vec![65, 66], vec![67, 0]]
        );
        assert!(encode_stream(&[], &spec).is_empty());
    }

    #[test]
    fn decode_examples() {
        let spec = ChunkingSpec::new(Prime::p257(), 2).unwrap();
        let p = Prime::p257();
        let b = |v: &[u64]| SecretBlock::from_u64s(v, &p).unwrap();
        assert_eq!(
            decode_stream(&[b(&[65, 66])], 2, &spec).unwrap(),
            vec![65, 66]
        );
        assert_eq!(
            decode_stream(&[b(&[65, 66]), b(&[67, 0])], 3, &spec).unwrap(),
            vec![65, 66, 67]
        );
        assert!(matches!(
            decode_stream(&[b(&[65, 66])], 3, &spec),
            Err(CodecError::CapacityExceeded { .. })
        ));
        // 256 fits below 257 but not in one byte.
        assert!(matches!(
            decode_stream(&[b(&[256, 0])], 2, &spec),
            Err(CodecError::RangeViolation(_))
        ));
    }

    #[test]
    fn multibyte_chunk_is_big_endian() {
        let spec = ChunkingSpec::new(Prime::m61(), 1).unwrap();
        let blocks = encode_stream(&[1, 2, 3, 4, 5, 6, 7, 8], &spec);
        assert_eq!(
            blocks_u64(&blocks),
            vec![vec![0x01020304050607], vec![0x08000000000000]]
        );
    }

    proptest! {
        #[test]
        fn roundtrip(data in proptest::collection::vec(any::<u8>(), 0..1000),
                     k in prop::sample::select(vec![1usize, 2, 4, 8]),
                     big in any::<bool>()) {
            let prime = if big { Prime::m61() } else { Prime::p257() };
            let spec = ChunkingSpec::new(prime, k).unwrap();
            let blocks = encode_stream(&data, &spec);
            prop_assert_eq!(blocks.len() as u64, spec.block_count(data.len() as u64));
            prop_assert_eq!(decode_stream(&blocks, data.len() as u64, &spec).unwrap(), data);
        }
    }
}
