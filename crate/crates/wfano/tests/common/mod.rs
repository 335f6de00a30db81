//! Shared helpers for the integration tests: seeded random generators of
//! structured weight systems, one per head type.

use num::Integer;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wfano::core::WeightVector;
use wfano::structure::{cycle_reduced_weights, decompose, StructuredWeights};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sample_cycle(rng: &mut ChaCha8Rng) -> ([u64; 3], [u64; 3]) {
    loop {
        let a: [u64; 3] =
            [rng.gen_range(2..=6), rng.gen_range(2..=6), rng.gen_range(2..=6)];
        let v = cycle_reduced_weights(a);
        if v[0].gcd(&v[1]) == 1 && v[0].gcd(&v[2]) == 1 && v[1].gcd(&v[2]) == 1 {
            return (a, v);
        }
    }
}

fn build(v0: u64, v1: u64, m2: u64, a: [u64; 3], v_cycle: [u64; 3]) -> StructuredWeights {
    let m3 = a[0] * a[1] * a[2] + 1;
    let w = WeightVector::new([
        m3 * v0,
        m3 * v1,
        m2 * v_cycle[0],
        m2 * v_cycle[1],
        m2 * v_cycle[2],
    ])
    .expect("positive weights");
    decompose(&w, m2 * m3).expect("constructed weights decompose")
}

/// A random system whose head ladder is the full type I ladder: both head
/// multiplicities are 1.
pub fn random_type_i(rng: &mut ChaCha8Rng) -> StructuredWeights {
    let (a, v) = sample_cycle(rng);
    let m3 = a[0] * a[1] * a[2] + 1;
    let m2 = loop {
        let candidate = rng.gen_range(1..=12);
        if candidate.gcd(&m3) == 1 {
            break candidate;
        }
    };
    build(1, 1, m2, a, v)
}

/// A random system with v0 = 1 and v1 a proper divisor of m2 - 1, so the
/// effective head type is II.
pub fn random_type_ii(rng: &mut ChaCha8Rng) -> StructuredWeights {
    let (a, v) = sample_cycle(rng);
    let m3 = a[0] * a[1] * a[2] + 1;
    let m2 = loop {
        let candidate = rng.gen_range(3..=30u64);
        if candidate.gcd(&m3) == 1 {
            break candidate;
        }
    };
    let divisors: Vec<u64> = (2..=m2 - 1).filter(|&x| (m2 - 1) % x == 0).collect();
    let v1 = divisors[rng.gen_range(0..divisors.len())];
    build(1, v1, m2, a, v)
}

/// A random system with coprime v0, v1 >= 2 and m2 congruent to v1 mod v0
/// and to v0 mod v1, so the effective head type is III.
pub fn random_type_iii(rng: &mut ChaCha8Rng) -> StructuredWeights {
    let (a, v) = sample_cycle(rng);
    let m3 = a[0] * a[1] * a[2] + 1;
    loop {
        let v0: u64 = rng.gen_range(2..=5);
        let v1: u64 = rng.gen_range(2..=5);
        if v0.gcd(&v1) != 1 {
            continue;
        }
        let modulus = v0 * v1;
        let residue = (0..modulus)
            .find(|r| r % v0 == v1 % v0 && r % v1 == v0 % v1)
            .expect("CRT residue exists for coprime moduli");
        let mut k = rng.gen_range(0..5u64);
        loop {
            let m2 = residue + k * modulus;
            if m2 >= v0 + v1 && m2.gcd(&m3) == 1 {
                return build(v0, v1, m2, a, v);
            }
            k += 1;
        }
    }
}
