//! Seeded generators for test complexes and maps.

use super::complex::ChainComplex;
use super::homcomplex::HomComplex;
use super::map::ChainMap;
use crate::exactalg::linalg::kernel_basis;
use crate::exactalg::{IntMatrix, RingTag};
use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_entry<R: Rng>(rng: &mut R, density: f64, bound: i64) -> i64 {
    if rng.gen_bool(density) {
        let v = rng.gen_range(1..=bound);
        if rng.gen_bool(0.5) {
            v
        } else {
            -v
        }
    } else {
        0
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, ring: RingTag, bound: i64) -> IntMatrix {
    let data = (0..rows * cols)
        .map(|_| ring.reduce(BigInt::from(small_entry(rng, 0.6, bound))))
        .collect();
    IntMatrix::from_vec(rows, cols, data, ring)
}

/// Random complex on degrees `lo..=hi` with ranks at most `max_rank`.
///
/// Each differential is a kernel basis of the previous one times a random
/// matrix, so `d∘d = 0` holds by construction.
pub fn random_complex<R: Rng>(rng: &mut R, ring: RingTag, lo: i64, hi: i64, max_rank: usize) -> ChainComplex {
    if max_rank == 0 || hi < lo {
        return ChainComplex::zero(ring);
    }
    let mut ranks = Vec::new();
    let mut diffs: Vec<IntMatrix> = Vec::new();
    for i in 0..=(hi - lo) as usize {
        let r = rng.gen_range(0..=max_rank);
        let d = if i == 0 {
            IntMatrix::zeros(0, r, ring)
        } else {
            let (k, _) = kernel_basis(&diffs[i - 1]);
            let coeffs = random_matrix(rng, k.cols(), r, ring, 2);
            k.mul(&coeffs)
        };
        ranks.push(r);
        diffs.push(d);
    }
    ChainComplex::new(ring, lo, ranks, diffs).expect("generator produces complexes")
}

pub fn random_complex_seeded(seed: u64, ring: RingTag, lo: i64, hi: i64, max_rank: usize) -> ChainComplex {
    random_complex(&mut rng_from_seed(seed), ring, lo, hi, max_rank)
}

/// Random chain map: a random combination of a basis of the 0-cycles of `Hom(X, Y)`.
pub fn random_chain_map<R: Rng>(rng: &mut R, x: &ChainComplex, y: &ChainComplex) -> ChainMap {
    let h = HomComplex::new(x, y).expect("same ring");
    let d0 = h.complex.diff(0);
    let (k, _) = kernel_basis(&d0);
    let c: Vec<BigInt> = (0..k.cols())
        .map(|_| BigInt::from(small_entry(rng, 0.7, 2)))
        .collect();
    let v = k.mul_vec(&c);
    h.vector_to_map(&v).expect("cycles are chain maps")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_valid() {
        let z = RingTag::Integers;
        let a = random_complex_seeded(7, z, -2, 2, 3);
        let b = random_complex_seeded(7, z, -2, 2, 3);
        assert_eq!(a, b);
        assert!(a.validate());
        assert!(random_complex_seeded(1, z, -2, 2, 0).is_zero());
        for seed in 0..20 {
            let x = random_complex_seeded(seed, RingTag::PrimeField(3), -1, 2, 3);
            assert!(x.validate());
        }
    }

    #[test]
    fn maps_commute() {
        let z = RingTag::Integers;
        let mut rng = rng_from_seed(3);
        for _ in 0..10 {
            let x = random_complex(&mut rng, z, -1, 1, 2);
            let y = random_complex(&mut rng, z, -1, 2, 2);
            let f = random_chain_map(&mut rng, &x, &y);
            assert_eq!(f.source(), &x);
        }
    }
}
