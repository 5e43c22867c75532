//! Deterministic randomness: every randomized probe in the crate draws
//! from a ChaCha stream derived from one recorded base seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgebraElement;
use crate::graph::DirectedGraph;
use crate::paths::PathTable;
use crate::scalar::Scalar;

/// Derives a child seed from a base seed, a purpose tag, and an index.
/// FNV-1a so the derivation is stable across platforms and builds.
pub fn child_seed(base: u64, tag: &str, index: u64) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    eat(&base.to_le_bytes());
    eat(tag.as_bytes());
    eat(&index.to_le_bytes());
    h
}

pub fn stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small nonzero rational with numerator in `-4..=4` and denominator
/// in `1..=3`.
pub fn small_rational(rng: &mut ChaCha8Rng) -> Scalar {
    let mut p = 0i64;
    while p == 0 {
        p = rng.gen_range(-4..=4);
    }
    let q = rng.gen_range(1..=3);
    Scalar::from_ratio(p, q)
}

/// A nonzero scalar that is real, imaginary, or a rational-modulus
/// complex number (3-4-5 pattern), so |z| stays rational.
pub fn small_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let r = small_rational(rng);
    match rng.gen_range(0..3) {
        0 => r,
        1 => &r * &Scalar::i(),
        _ => &r * &Scalar::from_parts(3, 5, 4, 5),
    }
}

/// A random rational point of the closed unit ball: small rational
/// entries, rescaled by an integer when the squared norm exceeds one.
pub fn random_ball_point(dim: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    use num::{BigInt, One};

    let mut point: Vec<Scalar> = (0..dim)
        .map(|_| {
            let re = crate::scalar::Rational::new(
                BigInt::from(rng.gen_range(-4i64..=4)),
                BigInt::from(rng.gen_range(4i64..=6)),
            );
            let im = crate::scalar::Rational::new(
                BigInt::from(rng.gen_range(-4i64..=4)),
                BigInt::from(rng.gen_range(4i64..=6)),
            );
            Scalar::new(re, im)
        })
        .collect();
    let norm_sq: crate::scalar::Rational = point.iter().map(Scalar::norm_sq).sum();
    if norm_sq > crate::scalar::Rational::one() {
        // Smallest integer n with n^2 >= |lambda|^2 keeps entries rational.
        let mut n = BigInt::one();
        while crate::scalar::Rational::from_integer(&n * &n) < norm_sq {
            n += 1;
        }
        let inv = Scalar::new(
            crate::scalar::Rational::new(BigInt::one(), n),
            crate::scalar::Rational::from_integer(BigInt::from(0)),
        );
        for z in &mut point {
            *z = &*z * &inv;
        }
    }
    point
}

/// A random element supported on up to `max_support` paths of length at
/// most `max_deg`, with exact small coefficients.
pub fn random_element(
    g: &DirectedGraph,
    table: &PathTable,
    rng: &mut ChaCha8Rng,
    max_deg: usize,
    max_support: usize,
) -> AlgebraElement {
    let pool: Vec<_> = table
        .iter()
        .filter(|p| p.len() <= max_deg)
        .cloned()
        .collect();
    let mut elem = AlgebraElement::zero(g);
    if pool.is_empty() {
        return elem;
    }
    let support = rng.gen_range(1..=max_support);
    for _ in 0..support {
        let p = pool[rng.gen_range(0..pool.len())].clone();
        let c = small_scalar(rng);
        elem.add_term(p, c);
    }
    elem
}
