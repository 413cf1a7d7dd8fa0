//! One-parameter-subgroup limits as an independent containment oracle.

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::Rng;

use crate::kalgebra::Weight;
use crate::{Poly, RatFn};

const MAX_RESAMPLES: usize = 100;
const SIGMA_BOUND: i64 = 64;

/// A random integer cocharacter with `σ·(w - w') ≠ 0` for all distinct
/// `w, w'` in `points`, or `None` after the resample budget is exhausted.
pub fn generic_sigma<R: Rng + ?Sized>(
    rank: usize,
    points: &BTreeSet<Weight>,
    rng: &mut R,
) -> Option<Vec<i64>> {
    let pts: Vec<&Weight> = points.iter().collect();
    for _ in 0..MAX_RESAMPLES {
        let sigma: Vec<i64> = (0..rank)
            .map(|_| rng.random_range(-SIGMA_BOUND..=SIGMA_BOUND))
            .collect();
        let values: Vec<_> = pts.iter().map(|w| w.pair(&sigma)).collect();
        let distinct: BTreeSet<_> = values.iter().collect();
        if distinct.len() == values.len() && !sigma.iter().all(|s| s.is_zero()) {
            return Some(sigma);
        }
    }
    None
}

/// For `trials` generic cocharacters `σ`, tests whether `a|σ / b|σ` has a
/// polynomial limit at zero; returns the conjunction.
pub fn contains_via_sigma_limits<R: Rng + ?Sized>(
    a: &Poly,
    b: &Poly,
    trials: usize,
    rng: &mut R,
) -> bool {
    assert!(!b.is_zero(), "the reference class must be nonzero");
    let rank = b.rank();
    let points: BTreeSet<Weight> = a.support().into_iter().chain(b.support()).collect();
    for _ in 0..trials {
        let Some(sigma) = generic_sigma(rank, &points, rng) else {
            continue;
        };
        let ratio = RatFn::new(a.restrict_sigma(&sigma), b.restrict_sigma(&sigma))
            .expect("generic restriction of a nonzero class is nonzero");
        if ratio.limit_at_zero().is_err() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kalgebra::rational::rat;
    use rand::SeedableRng;

    #[test]
    fn oracle_examples() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let t = |e| Poly::t(Weight::new(vec![e]));
        let eu = Poly::one(1) - t(rat(-1, 1));
        let a = &(Poly::one(1) + Poly::y(1)) * &t(rat(-1, 2));
        assert!(contains_via_sigma_limits(&a, &eu, 20, &mut rng));
        assert!(!contains_via_sigma_limits(&t(rat(1, 1)), &eu, 20, &mut rng));
        assert!(contains_via_sigma_limits(&eu, &eu, 20, &mut rng));
    }
}
