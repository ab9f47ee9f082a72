//! Seeded randomized consistency trials: the different criterion forms must
//! agree wherever their domains overlap. Used by `report --fuzz` and by the
//! acceptance suite; a fixed seed makes runs reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use varwreath_core::criteria::{
    criterion_abelian, criterion_abelian_by_common_primes, criterion_circle, criterion_finite,
    criterion_main,
};
use varwreath_core::{AbelianShape, Exponent, Multiplicity, NilpotentProfile, Summand};

const PRIMES: [u64; 4] = [2, 3, 5, 7];

pub fn random_multiplicity(rng: &mut impl Rng) -> Multiplicity {
    if rng.gen_bool(0.25) {
        Multiplicity::Infinite
    } else {
        Multiplicity::Finite(rng.gen_range(1..=5))
    }
}

pub fn random_shape(rng: &mut impl Rng, allow_infinite: bool) -> AbelianShape {
    let count = rng.gen_range(0..=4);
    let summands = (0..count)
        .map(|_| Summand {
            prime: PRIMES[rng.gen_range(0..PRIMES.len())],
            exponent: rng.gen_range(1..=3),
            multiplicity: if allow_infinite {
                random_multiplicity(rng)
            } else {
                Multiplicity::Finite(rng.gen_range(1..=5))
            },
        })
        .collect();
    let unbounded = allow_infinite && rng.gen_bool(0.1);
    AbelianShape::new(summands, unbounded).expect("generated shapes are valid")
}

pub fn random_profile(rng: &mut impl Rng) -> NilpotentProfile {
    if rng.gen_bool(0.05) {
        return NilpotentProfile::new(0, 1).unwrap();
    }
    let class = rng.gen_range(1..=4);
    let mut exponent = PRIMES[rng.gen_range(0..PRIMES.len())].pow(rng.gen_range(1..=2));
    if rng.gen_bool(0.5) {
        exponent *= PRIMES[rng.gen_range(0..PRIMES.len())];
    }
    NilpotentProfile::new(class, exponent).unwrap()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzOutcome {
    pub trials: u64,
    pub mismatches: Vec<String>,
}

impl FuzzOutcome {
    pub fn clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Run `trials` seeded random consistency checks:
/// main ⇔ finite on finite shapes, the two abelian forms against each
/// other, and circle against main.
pub fn consistency_fuzz(trials: u64, seed: u64) -> FuzzOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    for trial in 0..trials {
        let profile = random_profile(&mut rng);
        let finite_shape = random_shape(&mut rng, false);
        let any_shape = random_shape(&mut rng, true);

        let main = criterion_main(&profile, &finite_shape);
        let finite = criterion_finite(&profile, &finite_shape).expect("shape is finite");
        if main.holds != finite.holds {
            mismatches.push(format!(
                "trial {trial}: main={} finite={} for profile (c={}, m={}) and {}",
                main.holds,
                finite.holds,
                profile.class(),
                profile.exponent(),
                finite_shape
            ));
        }

        let m = if rng.gen_bool(0.1) {
            Exponent::Infinite
        } else {
            Exponent::Finite(profile.exponent())
        };
        let divisor_form = criterion_abelian(m, &any_shape);
        let prime_form = criterion_abelian_by_common_primes(m, &any_shape);
        if divisor_form.holds != prime_form.holds {
            mismatches.push(format!(
                "trial {trial}: abelian forms disagree ({} vs {}) for m={m} and {}",
                divisor_form.holds, prime_form.holds, any_shape
            ));
        }

        if criterion_circle(&profile, &any_shape) != criterion_main(&profile, &any_shape) {
            mismatches.push(format!("trial {trial}: circle differs from main"));
        }
    }
    FuzzOutcome { trials, mismatches }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fuzz_is_reproducible() {
        let a = consistency_fuzz(50, 7);
        let b = consistency_fuzz(50, 7);
        assert_eq!(a, b);
        assert!(a.clean(), "{:?}", a.mismatches);
    }

    #[test]
    fn different_seeds_generate_different_shapes() {
        let mut r1 = ChaCha8Rng::seed_from_u64(1);
        let mut r2 = ChaCha8Rng::seed_from_u64(2);
        let shapes1: Vec<_> = (0..10).map(|_| random_shape(&mut r1, true)).collect();
        let shapes2: Vec<_> = (0..10).map(|_| random_shape(&mut r2, true)).collect();
        assert_ne!(shapes1, shapes2);
    }
}
