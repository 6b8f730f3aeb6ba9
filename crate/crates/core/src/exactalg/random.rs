//! Schwartz–Zippel style identity testing at random rational points.

use super::ratfunc::RatFunc;
use super::registry::MAX_VARS;
use super::Rational;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MAX_RETRIES: usize = 64;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero rational with small numerator and denominator, avoiding ±1.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let n: i64 = rng.gen_range(-97..=97);
        let d: i64 = rng.gen_range(1..=13);
        if n != 0 && n.abs() != d {
            return Rational::new(BigInt::from(n), BigInt::from(d));
        }
    }
}

pub fn random_point<R: Rng>(rng: &mut R) -> Vec<Rational> {
    (0..MAX_VARS).map(|_| random_rational(rng)).collect()
}

/// Compares `f` and `g` at `reps` random points. Points where either side has
/// a pole are resampled.
pub fn rf_equal_randomized(f: &RatFunc, g: &RatFunc, seed: u64, reps: usize) -> Result<bool> {
    let mut rng = rng_from_seed(seed);
    let mut done = 0;
    let mut misses = 0;
    while done < reps {
        let pt = random_point(&mut rng);
        match (f.eval(&pt), g.eval(&pt)) {
            (Ok(a), Ok(b)) => {
                if a != b {
                    return Ok(false);
                }
                done += 1;
            }
            _ => {
                misses += 1;
                if misses > MAX_RETRIES {
                    return Err(Error::Pole("no pole-free random point found".into()));
                }
            }
        }
    }
    Ok(true)
}

/// Result of running a computation on both sides of an identity at random
/// points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointTally {
    pub seed: u64,
    pub points: usize,
    pub mismatches: usize,
    /// Both sides at the first mismatching point.
    pub first_mismatch: Option<(RatFunc, RatFunc)>,
}

impl PointTally {
    pub fn passed(&self) -> bool {
        self.points > 0 && self.mismatches == 0
    }
}

/// Runs `sides` at `reps` random registry points. Points where `sides`
/// reports a pole are resampled.
pub fn check_at_points<F>(seed: u64, reps: usize, mut sides: F) -> Result<PointTally>
where
    F: FnMut(&[Rational]) -> Result<(RatFunc, RatFunc)>,
{
    let mut rng = rng_from_seed(seed);
    let mut tally = PointTally { seed, points: 0, mismatches: 0, first_mismatch: None };
    let mut misses = 0;
    while tally.points < reps {
        let pt = random_point(&mut rng);
        match sides(&pt) {
            Ok((a, b)) => {
                tally.points += 1;
                if a != b {
                    tally.mismatches += 1;
                    tally.first_mismatch.get_or_insert((a, b));
                }
            }
            Err(Error::Pole(_)) | Err(Error::Irregular(..)) | Err(Error::DivisionByZero) => {
                misses += 1;
                if misses > MAX_RETRIES {
                    return Err(Error::Pole("no pole-free random point found".into()));
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(tally)
}

/// `f` evaluated at `point`, as a constant.
pub fn specialize(f: &RatFunc, point: &[Rational]) -> Result<RatFunc> {
    f.eval(point).map(RatFunc::from_rational)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_ratfunc;

    #[test]
    fn agrees_with_exact_on_identities() {
        let f = parse_ratfunc("(a1^2 - a2^2)/(a1 - a2)").unwrap();
        let g = parse_ratfunc("a1 + a2").unwrap();
        assert!(rf_equal_randomized(&f, &g, 7, 10).unwrap());
        let h = parse_ratfunc("a1 + a2 + 1/v").unwrap();
        assert!(!rf_equal_randomized(&f, &h, 7, 10).unwrap());
    }

    #[test]
    fn reproducible_from_seed() {
        let mut a = rng_from_seed(42);
        let mut b = rng_from_seed(42);
        assert_eq!(random_point(&mut a), random_point(&mut b));
    }
}
