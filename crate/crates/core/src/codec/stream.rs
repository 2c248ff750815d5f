//! Whole-stream split and combine on top of the block codec.

use rand::Rng;

use crate::field::{FieldElement, Prime};
use crate::par::{map_ordered, Execution};
use crate::poly::EvaluationMap;
use crate::sss::{
    draw_secret_xs, shamir_reconstruct, shamir_split, Layout, SecretBlock, Share, ShareParams,
    SssError,
};

use super::chunking::{decode_stream, encode_stream, group_into_blocks, ChunkingSpec};
use super::document::{
    expected_payload_len, header_len, DocumentLayout, PlaintextUnit, ShareDocument,
};
use super::CodecError;

/// The data being shared. Byte streams need p >= 257; raw field elements
/// need p < 257 so the document header can tell the two apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Plaintext {
    Bytes(Vec<u8>),
    Elements(Vec<FieldElement>),
}

impl Plaintext {
    pub fn len(&self) -> usize {
        match self {
            Plaintext::Bytes(b) => b.len(),
            Plaintext::Elements(e) => e.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn into_blocks(self, prime: &Prime, k: usize) -> Result<Vec<SecretBlock>, CodecError> {
        match (self, PlaintextUnit::for_prime(prime)) {
            (Plaintext::Bytes(data), PlaintextUnit::Bytes { .. }) => {
                Ok(encode_stream(&data, &ChunkingSpec::new(prime.clone(), k)?))
            }
            (Plaintext::Bytes(_), PlaintextUnit::Elements) => {
                Err(CodecError::PrimeTooSmallForBytes(prime.to_string()))
            }
            (Plaintext::Elements(elements), PlaintextUnit::Elements) => {
                if elements.iter().any(|e| e.prime() != prime) {
                    return Err(CodecError::Inconsistent(
                        "plaintext element from a different field".into(),
                    ));
                }
                Ok(group_into_blocks(elements, k, prime))
            }
            (Plaintext::Elements(_), PlaintextUnit::Bytes { .. }) => Err(CodecError::Inconsistent(
                format!("element plaintexts need a prime below 257, got {prime}"),
            )),
        }
    }
}

pub fn split_documents<R: Rng + ?Sized>(
    plaintext: Plaintext,
    params: &ShareParams,
    rng: &mut R,
) -> Result<Vec<ShareDocument>, CodecError> {
    split_documents_with(plaintext, params, rng, Execution::default())
}

/// Splits `plaintext` into `n` share documents, one y per block in each.
///
/// The Explicit layout draws one set of secret coordinates from `rng` for
/// the whole stream and records it in every header. The Sequential layout
/// does not touch `rng`.
pub fn split_documents_with<R: Rng + ?Sized>(
    plaintext: Plaintext,
    params: &ShareParams,
    rng: &mut R,
    execution: Execution,
) -> Result<Vec<ShareDocument>, CodecError> {
    let prime = params.prime();
    let plaintext_length = plaintext.len() as u64;
    let blocks = plaintext.into_blocks(prime, params.k())?;

    let share_xs = params.share_xs();
    let (secret_xs, layout) = match params.layout() {
        Layout::Sequential => (params.sequential_secret_xs(), DocumentLayout::Sequential),
        Layout::Explicit { .. } => {
            let secret_xs = draw_secret_xs(params, rng)?;
            (secret_xs.clone(), DocumentLayout::Explicit { secret_xs })
        }
    };
    let map = EvaluationMap::new(&secret_xs, &share_xs)?;

    let rows = map_ordered(&blocks, execution, |block| map.apply(block.secrets()));
    let mut payloads: Vec<Vec<FieldElement>> = vec![Vec::with_capacity(blocks.len()); params.n()];
    for row in rows {
        for (payload, y) in payloads.iter_mut().zip(row?) {
            payload.push(y);
        }
    }

    share_xs
        .into_iter()
        .zip(payloads)
        .map(|(x, payload)| {
            ShareDocument::new(
                params.k() as u16,
                params.n() as u16,
                x,
                layout.clone(),
                plaintext_length,
                payload,
            )
        })
        .collect()
}

pub fn combine_documents(docs: &[ShareDocument], verify: bool) -> Result<Plaintext, CodecError> {
    combine_documents_with(docs, verify, Execution::default())
}

/// Recombines documents from one split. Uses the k documents with the
/// smallest x. With `verify`, every surplus document must agree with the
/// reconstruction in every block.
pub fn combine_documents_with(
    docs: &[ShareDocument],
    verify: bool,
    execution: Execution,
) -> Result<Plaintext, CodecError> {
    let first = docs
        .first()
        .ok_or(CodecError::InsufficientShares { have: 0, need: 1 })?;
    if let Some(field) = docs.iter().find_map(|d| first.header_mismatch(d)) {
        return Err(CodecError::HeaderMismatch(field));
    }
    let k = first.k();
    if docs.len() < k {
        return Err(CodecError::InsufficientShares {
            have: docs.len(),
            need: k,
        });
    }
    let mut sorted: Vec<&ShareDocument> = docs.iter().collect();
    sorted.sort_by(|a, b| a.x().value().cmp(b.x().value()));
    if let Some(w) = sorted.windows(2).find(|w| w[0].x() == w[1].x()) {
        return Err(SssError::DuplicateShareX(w[0].x().clone()).into());
    }

    let prime = first.prime();
    let secret_xs: Vec<FieldElement> = match first.layout() {
        DocumentLayout::Sequential => (0..k as u64)
            .map(|x| FieldElement::reduce_u64(x, prime))
            .collect(),
        DocumentLayout::Explicit { secret_xs } => secret_xs.clone(),
    };
    let (chosen, surplus) = sorted.split_at(k);
    let chosen_xs: Vec<FieldElement> = chosen.iter().map(|d| d.x().clone()).collect();
    let recover = EvaluationMap::new(&chosen_xs, &secret_xs)?;
    let check = if verify && !surplus.is_empty() {
        let surplus_xs: Vec<FieldElement> = surplus.iter().map(|d| d.x().clone()).collect();
        Some(EvaluationMap::new(&chosen_xs, &surplus_xs)?)
    } else {
        None
    };

    let indices: Vec<usize> = (0..first.payload().len()).collect();
    let blocks = map_ordered(
        &indices,
        execution,
        |&b| -> Result<SecretBlock, CodecError> {
            let ys: Vec<FieldElement> = chosen.iter().map(|d| d.payload()[b].clone()).collect();
            if let Some(check) = &check {
                for (doc, predicted) in surplus.iter().zip(check.apply(&ys)?) {
                    if doc.payload()[b] != predicted {
                        return Err(CodecError::VerificationFailed {
                            x: doc.x().clone(),
                            block: b,
                        });
                    }
                }
            }
            Ok(SecretBlock::new(recover.apply(&ys)?))
        },
    )
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;

    match first.plaintext_unit() {
        PlaintextUnit::Bytes { .. } => {
            let spec = ChunkingSpec::new(prime.clone(), k)?;
            Ok(Plaintext::Bytes(decode_stream(
                &blocks,
                first.plaintext_length(),
                &spec,
            )?))
        }
        PlaintextUnit::Elements => {
            let mut elements: Vec<FieldElement> = blocks
                .into_iter()
                .flat_map(SecretBlock::into_secrets)
                .collect();
            elements.truncate(first.plaintext_length() as usize);
            Ok(Plaintext::Elements(elements))
        }
    }
}

/// Elements per share when each chunk is shared on its own with Shamir.
pub fn shamir_payload_len(prime: &Prime, plaintext_length: u64) -> u64 {
    PlaintextUnit::for_prime(prime).element_count(plaintext_length)
}

/// Chunk-by-chunk Shamir sharing of a byte stream. Returns one payload per
/// share, each holding one element per chunk.
pub fn shamir_split_stream<R: Rng + ?Sized>(
    data: &[u8],
    params: &ShareParams,
    rng: &mut R,
) -> Result<Vec<Vec<FieldElement>>, CodecError> {
    let spec = ChunkingSpec::new(params.prime().clone(), 1)?;
    let mut payloads = vec![Vec::new(); params.n()];
    for block in encode_stream(data, &spec) {
        let shares = shamir_split(&block.secrets()[0], params, rng)?;
        for (payload, share) in payloads.iter_mut().zip(shares) {
            payload.push(share.y);
        }
    }
    Ok(payloads)
}

/// Inverse of [`shamir_split_stream`], given the payloads of shares `x = 1..=k`.
pub fn shamir_combine_stream(
    payloads: &[Vec<FieldElement>],
    plaintext_length: u64,
    params: &ShareParams,
) -> Result<Vec<u8>, CodecError> {
    let prime = params.prime();
    let spec = ChunkingSpec::new(prime.clone(), 1)?;
    let chunks = payloads.first().map_or(0, Vec::len);
    let blocks = (0..chunks)
        .map(|c| {
            let shares: Vec<Share> = payloads
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    Share::new(FieldElement::reduce_u64(i as u64 + 1, prime), p[c].clone())
                })
                .collect();
            Ok(SecretBlock::new(vec![shamir_reconstruct(&shares, params)?]))
        })
        .collect::<Result<Vec<_>, CodecError>>()?;
    decode_stream(&blocks, plaintext_length, &spec)
}

/// Byte accounting for one split, with headers kept apart from payload.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StorageReport {
    pub shares: usize,
    pub plaintext_length: u64,
    /// Field elements the plaintext occupies before sharing.
    pub secret_elements: u64,
    pub elements_per_share: u64,
    pub element_bytes: u64,
    pub header_bytes_per_share: u64,
}

impl StorageReport {
    pub fn algorithm_a(params: &ShareParams, plaintext_length: u64) -> Self {
        let prime = params.prime();
        StorageReport {
            shares: params.n(),
            plaintext_length,
            secret_elements: PlaintextUnit::for_prime(prime).element_count(plaintext_length),
            elements_per_share: expected_payload_len(prime, params.k(), plaintext_length),
            element_bytes: prime.width_bytes() as u64,
            header_bytes_per_share: header_len(prime, params.k(), !params.is_sequential()) as u64,
        }
    }

    /// Element-wise Shamir over the same chunking, one document header per share.
    pub fn shamir(params: &ShareParams, plaintext_length: u64) -> Self {
        let prime = params.prime();
        StorageReport {
            shares: params.n(),
            plaintext_length,
            secret_elements: PlaintextUnit::for_prime(prime).element_count(plaintext_length),
            elements_per_share: shamir_payload_len(prime, plaintext_length),
            element_bytes: prime.width_bytes() as u64,
            header_bytes_per_share: header_len(prime, params.k(), false) as u64,
        }
    }

    pub fn payload_bytes_per_share(&self) -> u64 {
        self.elements_per_share * self.element_bytes
    }

    pub fn total_payload_bytes(&self) -> u64 {
        self.payload_bytes_per_share() * self.shares as u64
    }

    pub fn total_bytes(&self) -> u64 {
        (self.payload_bytes_per_share() + self.header_bytes_per_share) * self.shares as u64
    }

    /// Total payload bytes over plaintext length.
    pub fn payload_ratio(&self) -> f64 {
        self.total_payload_bytes() as f64 / self.plaintext_length as f64
    }

    /// Total bytes including headers over plaintext length.
    pub fn total_ratio(&self) -> f64 {
        self.total_bytes() as f64 / self.plaintext_length as f64
    }

    /// Share elements over secret elements: storage measured in units of
    /// one secret, independent of the chunk/width slack of the byte codec.
    pub fn element_ratio(&self) -> f64 {
        (self.elements_per_share * self.shares as u64) as f64 / self.secret_elements as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(9)
    }

    #[test]
    fn worked_elements_split() {
        let p = Prime::p31();
        let params = ShareParams::sequential(4, 6, p.clone()).unwrap();
        let elements = [10u64, 23, 16, 25]
            .iter()
            .map(|&v| FieldElement::from_u64(v, &p).unwrap())
            .collect();
        let docs = split_documents(Plaintext::Elements(elements), &params, &mut rng()).unwrap();
        let ys: Vec<u64> = docs
            .iter()
            .map(|d| d.payload()[0].value().try_into().unwrap())
            .collect();
        assert_eq!(ys, vec![24, 18, 12, 11, 20, 13]);
        let back = combine_documents(&docs[2..], true).unwrap();
        let Plaintext::Elements(back) = back else {
            panic!()
        };
        let back: Vec<u64> = back.iter().map(|v| v.value().try_into().unwrap()).collect();
        assert_eq!(back, vec![10, 23, 16, 25]);
    }

    #[test]
    fn kind_mismatch() {
        let params = ShareParams::sequential(2, 3, Prime::p31()).unwrap();
        assert!(matches!(
            split_documents(Plaintext::Bytes(vec![1]), &params, &mut rng()),
            Err(CodecError::PrimeTooSmallForBytes(_))
        ));
        let params = ShareParams::sequential(2, 3, Prime::p257()).unwrap();
        let e = FieldElement::from_u64(1, &Prime::p257()).unwrap();
        assert!(matches!(
            split_documents(Plaintext::Elements(vec![e]), &params, &mut rng()),
            Err(CodecError::Inconsistent(_))
        ));
    }

    #[test]
    fn bytes_roundtrip_every_subset() {
        let params = ShareParams::sequential(3, 5, Prime::m61()).unwrap();
        let data: Vec<u8> = (0..=255u8).cycle().take(1000).collect();
        let docs = split_documents(Plaintext::Bytes(data.clone()), &params, &mut rng()).unwrap();
        for mask in 0u32..32 {
            if mask.count_ones() < 3 {
                continue;
            }
            let subset: Vec<_> = (0..5)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| docs[i].clone())
                .collect();
            assert_eq!(
                combine_documents(&subset, true).unwrap(),
                Plaintext::Bytes(data.clone())
            );
        }
    }

    #[test]
    fn explicit_layout_roundtrip() {
        let p = Prime::p257();
        let share_xs: Vec<_> = (1..=6)
            .map(|x| FieldElement::from_u64(x, &p).unwrap())
            .collect();
        let params = ShareParams::explicit(4, p, share_xs).unwrap();
        let data = b"the quick brown fox jumps over the lazy dog".to_vec();
        let docs = split_documents(Plaintext::Bytes(data.clone()), &params, &mut rng()).unwrap();
        let DocumentLayout::Explicit { secret_xs } = docs[0].layout() else {
            panic!()
        };
        assert_eq!(secret_xs.len(), 4);
        assert_eq!(
            combine_documents(&docs[1..5], false).unwrap(),
            Plaintext::Bytes(data)
        );
    }

    #[test]
    fn combine_errors() {
        let params = ShareParams::sequential(3, 5, Prime::p257()).unwrap();
        let docs =
            split_documents(Plaintext::Bytes(b"hello".to_vec()), &params, &mut rng()).unwrap();
        assert_eq!(
            combine_documents(&docs[..2], false),
            Err(CodecError::InsufficientShares { have: 2, need: 3 })
        );
        let dup = vec![docs[0].clone(), docs[0].clone(), docs[1].clone()];
        assert!(matches!(
            combine_documents(&dup, false),
            Err(CodecError::Sss(SssError::DuplicateShareX(_)))
        ));
        let other =
            split_documents(Plaintext::Bytes(b"hello!".to_vec()), &params, &mut rng()).unwrap();
        let mixed = vec![docs[0].clone(), docs[1].clone(), other[2].clone()];
        assert_eq!(
            combine_documents(&mixed, false),
            Err(CodecError::HeaderMismatch("plaintext_length"))
        );
    }

    #[test]
    fn verify_catches_corrupt_surplus() {
        let p = Prime::p257();
        let params = ShareParams::sequential(2, 4, p.clone()).unwrap();
        let docs =
            split_documents(Plaintext::Bytes(b"abcdefgh".to_vec()), &params, &mut rng()).unwrap();
        let mut payload = docs[3].payload().to_vec();
        payload[2] = &payload[2] + &FieldElement::one(&p);
        let bad = ShareDocument::new(
            2,
            4,
            docs[3].x().clone(),
            DocumentLayout::Sequential,
            8,
            payload,
        )
        .unwrap();
        let set = vec![docs[0].clone(), docs[1].clone(), bad];
        assert!(combine_documents(&set, false).is_ok());
        assert!(matches!(
            combine_documents(&set, true),
            Err(CodecError::VerificationFailed { block: 2, .. })
        ));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let params = ShareParams::sequential(4, 6, Prime::m61()).unwrap();
        let data: Vec<u8> = (0..5000u32).map(|i| (i * 7 % 251) as u8).collect();
        let a = split_documents_with(
            Plaintext::Bytes(data.clone()),
            &params,
            &mut rng(),
            Execution::Sequential,
        )
        .unwrap();
        let b = split_documents_with(
            Plaintext::Bytes(data),
            &params,
            &mut rng(),
            Execution::default(),
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn storage_report_counts() {
        let params = ShareParams::sequential(4, 6, Prime::m61()).unwrap();
        let a = StorageReport::algorithm_a(&params, 1024);
        // 1024 bytes -> 147 chunks of 7 bytes -> 37 blocks of 4.
        assert_eq!(a.secret_elements, 147);
        assert_eq!(a.elements_per_share, 37);
        assert_eq!(a.payload_bytes_per_share(), 37 * 8);
        let s = StorageReport::shamir(&params, 1024);
        assert_eq!(s.elements_per_share, 147);
        assert_eq!(s.element_ratio(), 6.0);
        let degenerate = ShareParams::sequential(1, 3, Prime::m61()).unwrap();
        assert_eq!(
            StorageReport::algorithm_a(&degenerate, 1024).payload_ratio(),
            StorageReport::shamir(&degenerate, 1024).payload_ratio()
        );
    }

    #[test]
    fn shamir_stream_roundtrip() {
        let params = ShareParams::sequential(3, 5, Prime::m61()).unwrap();
        let data: Vec<u8> = (0..300u32).map(|i| (i % 256) as u8).collect();
        let payloads = shamir_split_stream(&data, &params, &mut rng()).unwrap();
        assert_eq!(payloads.len(), 5);
        assert_eq!(
            payloads[0].len() as u64,
            shamir_payload_len(params.prime(), 300)
        );
        assert_eq!(
            shamir_combine_stream(&payloads[..3], 300, &params).unwrap(),
            data
        );
    }
}
