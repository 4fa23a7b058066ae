//! Seeded random socles for property checks and generic witnesses.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apolarity::{power_sum_of_points, Socle};
use crate::linalg::{monomial_basis, rat, Rational};
use crate::poly::Poly;

pub const COEFF_RANGE: i64 = 9;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A degree-`d` form with independent coefficients in `[-9, 9]`; redrawn if zero.
pub fn random_socle(rng: &mut impl Rng, n: usize, d: u32) -> Socle {
    let basis = monomial_basis(n, d);
    loop {
        let terms = basis
            .iter()
            .map(|m| (m.clone(), rat(rng.gen_range(-COEFF_RANGE..=COEFF_RANGE))));
        if let Ok(g) = Socle::new(Poly::from_terms(n + 1, terms)) {
            return g;
        }
    }
}

pub fn random_point(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    loop {
        let p: Vec<Rational> = (0..=n)
            .map(|_| rat(rng.gen_range(-COEFF_RANGE..=COEFF_RANGE)))
            .collect();
        if p.iter().any(|c| *c != rat(0)) {
            return p;
        }
    }
}

pub fn random_weight(rng: &mut impl Rng) -> Rational {
    loop {
        let w = rng.gen_range(-COEFF_RANGE..=COEFF_RANGE);
        if w != 0 {
            return rat(w);
        }
    }
}

/// `Σ w_i ℓ_i^d` over `k` random points; redrawn if the sum cancels.
pub fn random_power_sum(rng: &mut impl Rng, n: usize, d: u32, k: usize) -> Socle {
    loop {
        let points: Vec<Vec<Rational>> = (0..k).map(|_| random_point(rng, n)).collect();
        let weights: Vec<Rational> = (0..k).map(|_| random_weight(rng)).collect();
        if let Ok(g) = power_sum_of_points(&points, &weights, d) {
            return g;
        }
    }
}

/// Mix of dense socles and power sums of one to four points.
pub fn mixed_socle(rng: &mut impl Rng, n: usize, d: u32) -> Socle {
    match rng.gen_range(0..3) {
        0 => {
            let k = rng.gen_range(1..=4);
            random_power_sum(rng, n, d, k)
        }
        _ => random_socle(rng, n, d),
    }
}
