use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sess::codec::{combine_documents, split_documents, Plaintext};
use sess::field::{FieldElement, Prime};
use sess::poly::{lagrange_interpolate, solve_vandermonde, Point};
use sess::sss::{
    enumerate_candidates, reconstruct_secrets, split_secrets, SecretBlock, ShareParams,
};

/// Every k-subset of `0..n`, as index lists.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
        .collect()
}

fn random_block(k: usize, p: &Prime, rng: &mut ChaCha8Rng) -> SecretBlock {
    SecretBlock::new((0..k).map(|_| FieldElement::random(p, rng)).collect())
}

#[test]
fn every_k_subset_reconstructs() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for p in [Prime::p31(), Prime::p257()] {
        for k in 1..=6 {
            for n in k..=10 {
                let params = ShareParams::sequential(k, n, p.clone()).unwrap();
                let block = random_block(k, &p, &mut rng);
                let shares = split_secrets(&block, &params).unwrap();
                for subset in subsets(n, k) {
                    let chosen: Vec<_> = subset.iter().map(|&i| shares[i].clone()).collect();
                    assert_eq!(
                        reconstruct_secrets(&chosen, &params).unwrap(),
                        block,
                        "k={k} n={n}"
                    );
                }
            }
        }
    }
}

#[test]
fn missing_share_leaves_every_secret_uniform() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let p = Prime::p31();
    for _ in 0..10 {
        let k = rng.gen_range(2..=4);
        let n = rng.gen_range(k..=6);
        let params = ShareParams::sequential(k, n, p.clone()).unwrap();
        let block = random_block(k, &p, &mut rng);
        let shares = split_secrets(&block, &params).unwrap();
        for subset in subsets(n, k - 1) {
            let partial: Vec<_> = subset.iter().map(|&i| shares[i].clone()).collect();
            let probe = shares.iter().find(|s| !partial.contains(s)).unwrap();
            for (target, secret) in params.sequential_secret_xs().iter().zip(block.secrets()) {
                let map = enumerate_candidates(&partial, &probe.x, target, &params).unwrap();
                assert!(map.is_bijection());
                assert!(map.polynomials_distinct());
                let truth: u64 = probe.y.value().try_into().unwrap();
                assert_eq!(map.value_for(truth), Some(secret));
            }
        }
    }
}

fn prime_strategy() -> impl Strategy<Value = Prime> {
    prop_oneof![Just(Prime::p31()), Just(Prime::p257()), Just(Prime::m61())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vandermonde_agrees_with_lagrange(p in prime_strategy(), k in 1usize..=8, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut xs: Vec<FieldElement> = Vec::new();
        while xs.len() < k {
            let x = FieldElement::random(&p, &mut rng);
            if !xs.contains(&x) {
                xs.push(x);
            }
        }
        let points: Vec<Point> = xs.into_iter().map(|x| Point { y: FieldElement::random(&p, &mut rng), x }).collect();
        prop_assert_eq!(solve_vandermonde(&points, k).unwrap(), lagrange_interpolate(&points, k).unwrap());
    }

    #[test]
    fn bytes_survive_split_and_combine(
        data in proptest::collection::vec(any::<u8>(), 0..600),
        big in any::<bool>(),
        k in 1usize..=5,
        extra in 0usize..=3,
        seed in any::<u64>(),
    ) {
        let p = if big { Prime::m61() } else { Prime::p257() };
        let n = k + extra;
        let params = ShareParams::sequential(k, n, p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut docs = split_documents(Plaintext::Bytes(data.clone()), &params, &mut rng).unwrap();
        docs.shuffle(&mut rng);
        prop_assert_eq!(combine_documents(&docs[..k], false).unwrap(), Plaintext::Bytes(data.clone()));
        prop_assert_eq!(combine_documents(&docs, true).unwrap(), Plaintext::Bytes(data));
    }
}
