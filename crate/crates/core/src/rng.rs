//! Seeded randomness.
//!
//! Every random quantity in the crate comes from ChaCha8 keyed by a 64-bit seed
//! (expanded with `SeedableRng::seed_from_u64`), with one ChaCha stream per trial.
//! Floats are drawn as `(next_u64 >> 11) * 2^-53`, so the same seed gives the same
//! doubles on every platform.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{validate_general_position, Point, PointSet};
use crate::{Error, Result};

pub type Rng = ChaCha8Rng;

pub fn rng_for(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform double in `[0, 1)`.
pub fn uniform01(rng: &mut Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn uniform(rng: &mut Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * uniform01(rng)
}

/// Uniform integer in `lo..=hi`.
pub fn uniform_int(rng: &mut Rng, lo: usize, hi: usize) -> usize {
    debug_assert!(lo <= hi);
    lo + (rng.next_u64() % (hi - lo + 1) as u64) as usize
}

const MAX_RESAMPLES: usize = 1000;

/// `n` uniform points in the unit square. Any point taking part in a general
/// position violation is redrawn until the set validates.
pub fn random_point_set(rng: &mut Rng, n: usize) -> Result<PointSet> {
    let mut points: Vec<Point> = (0..n)
        .map(|_| Point::new(uniform01(rng), uniform01(rng)))
        .collect();
    for _ in 0..MAX_RESAMPLES {
        let report = validate_general_position(&points);
        if report.is_ok() {
            return PointSet::new(points);
        }
        for v in &report.violations {
            points[v.j] = Point::new(uniform01(rng), uniform01(rng));
        }
    }
    Err(Error::RetriesExhausted(
        MAX_RESAMPLES,
        format!("could not place {n} points in general position"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_points() {
        let a = random_point_set(&mut rng_for(1, 0), 10).unwrap();
        let b = random_point_set(&mut rng_for(1, 0), 10).unwrap();
        assert_eq!(a, b);
        let c = random_point_set(&mut rng_for(1, 1), 10).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn single_point_and_large_sets_validate() {
        assert_eq!(random_point_set(&mut rng_for(3, 0), 1).unwrap().len(), 1);
        let big = random_point_set(&mut rng_for(3, 0), 500).unwrap();
        assert!(validate_general_position(big.points()).is_ok());
    }

    #[test]
    fn uniform_range() {
        let mut rng = rng_for(9, 0);
        for _ in 0..1000 {
            let u = uniform01(&mut rng);
            assert!((0.0..1.0).contains(&u));
            let k = uniform_int(&mut rng, 3, 5);
            assert!((3..=5).contains(&k));
        }
    }
}
