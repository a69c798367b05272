//! Round-trip demonstration: build random canonical multisets, scramble
//! them by congruence-similarity, recover them, and report timings.
//!
//! Run with `cargo run --release -p isocanon --example roundtrip`.

use std::time::Instant;

use isocanon::canonical_blocks::{BlockSubtype, CanonicalBlock};
use isocanon::decompose::canonical_decomposition;
use isocanon::pair_engine::{direct_sum_any, AnyPair, Sign, SplitMix};
use isocanon::scalars::{rat_i64, CaseTag, GaussianRational, Involution};

fn gr(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
    GaussianRational::new(rat_i64(re.0, re.1), rat_i64(im.0, im.1))
}

fn lambda_test_set() -> Vec<GaussianRational> {
    vec![
        gr((1, 1), (0, 1)),
        gr((-1, 1), (0, 1)),
        gr((2, 1), (0, 1)),
        gr((1, 2), (0, 1)),
        gr((0, 1), (1, 1)),
        gr((0, 1), (-1, 1)),
        gr((3, 5), (4, 5)),
        gr((3, 5), (-4, 5)),
        gr((1, 1), (1, 1)),
    ]
}

fn random_multiset(
    case: CaseTag,
    inv: Option<Involution>,
    eps: Sign,
    rng: &mut SplitMix,
) -> Vec<CanonicalBlock> {
    let budget = 3 + rng.usize_below(10);
    let lambdas = lambda_test_set();
    let mut blocks = Vec::new();
    let mut used = 0usize;
    let mut stall = 0;
    while used < budget && stall < 40 {
        stall += 1;
        let subtype = if rng.bool() {
            BlockSubtype::Unimodular
        } else {
            BlockSubtype::PairedHyperbolic
        };
        let n = 1 + rng.usize_below(3);
        let lambda = lambdas[rng.usize_below(lambdas.len())].clone();
        let sign = if rng.bool() { Sign::Plus } else { Sign::Minus };
        let Ok(block) = CanonicalBlock::new(case, inv, subtype, n, lambda, sign, eps) else {
            continue;
        };
        if used + block.dim() > budget {
            continue;
        }
        used += block.dim();
        blocks.push(block);
        stall = 0;
    }
    blocks
}

fn main() {
    let configs: Vec<(CaseTag, Option<Involution>, Sign, &str)> = vec![
        (CaseTag::A, None, Sign::Plus, "A+"),
        (CaseTag::A, None, Sign::Minus, "A-"),
        (CaseTag::B, None, Sign::Plus, "B+"),
        (CaseTag::C, None, Sign::Plus, "C+"),
        (CaseTag::C, None, Sign::Minus, "C-"),
        (
            CaseTag::D,
            Some(Involution::QuaternionConjugation),
            Sign::Plus,
            "Dne+",
        ),
        (
            CaseTag::D,
            Some(Involution::QuaternionSemiconjugation),
            Sign::Minus,
            "Dnen-",
        ),
    ];
    for (case, inv, eps, label) in configs {
        let mut worst = std::time::Duration::ZERO;
        let mut total = std::time::Duration::ZERO;
        let count = 12u64;
        for k in 0..count {
            let seed = 0x5000 + k;
            let mut rng = SplitMix::new(seed);
            let blocks = random_multiset(case, inv, eps, &mut rng);
            if blocks.is_empty() {
                continue;
            }
            let t0 = Instant::now();
            let built: Vec<AnyPair> = blocks.iter().map(|b| b.build().unwrap()).collect();
            let sum = direct_sum_any(&built).unwrap();
            let scrambled = sum.scramble(rng.next_u64(), 2).unwrap();
            let dec = canonical_decomposition(&scrambled).unwrap();
            let dt = t0.elapsed();
            total += dt;
            worst = worst.max(dt);
            assert!(dec.same_blocks(&blocks), "mismatch at {label} seed {seed}");
        }
        println!("{label}: {count} round trips recovered exactly, total {total:?}, worst {worst:?}");
    }
}
