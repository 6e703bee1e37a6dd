//! Randomized exact checks of the pair-number field laws.

use num_traits::Zero;
use rand::Rng;

use super::pair::PairNumber;
use crate::rational;
use crate::report::{CheckReport, PropertyCheck};
use crate::rng::substream;

/// Bound on numerators and denominators of sampled coordinates.
pub const SAMPLE_BOUND: i64 = 1000;

pub fn random_pair<R: Rng + ?Sized>(rng: &mut R) -> PairNumber {
    PairNumber::new(
        rational::random(rng, SAMPLE_BOUND),
        rational::random(rng, SAMPLE_BOUND),
    )
}

pub fn random_nonzero_pair<R: Rng + ?Sized>(rng: &mut R) -> PairNumber {
    loop {
        let p = random_pair(rng);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Checks `⊕`/`⊙` field axioms, the inverse formula with `Δ = n² + m²`
/// and the involution laws on `trials` random triples.
pub fn algebra_verify(trials: usize, seed: u64) -> CheckReport {
    let mut rng = substream(seed, 0);
    let triples: Vec<[PairNumber; 3]> = (0..trials)
        .map(|_| {
            [
                random_pair(&mut rng),
                random_pair(&mut rng),
                random_pair(&mut rng),
            ]
        })
        .collect();
    let nonzero: Vec<PairNumber> = (0..trials).map(|_| random_nonzero_pair(&mut rng)).collect();
    let zero = PairNumber::zero();
    let one = PairNumber::one();

    let checks = vec![
        PropertyCheck::run("add_commutative", &triples, |[a, b, _]| {
            a.add(b) == b.add(a)
        }),
        PropertyCheck::run("add_associative", &triples, |[a, b, c]| {
            a.add(b).add(c) == a.add(&b.add(c))
        }),
        PropertyCheck::run("add_identity", &triples, |[a, _, _]| {
            a.add(&zero) == *a && zero.add(a) == *a
        }),
        PropertyCheck::run("add_inverse", &triples, |[a, _, _]| {
            a.add(&a.negate()) == zero
        }),
        PropertyCheck::run("mul_commutative", &triples, |[a, b, _]| {
            a.mul(b) == b.mul(a)
        }),
        PropertyCheck::run("mul_associative", &triples, |[a, b, c]| {
            a.mul(b).mul(c) == a.mul(&b.mul(c))
        }),
        PropertyCheck::run("mul_identity", &triples, |[a, _, _]| {
            a.mul(&one) == *a && one.mul(a) == *a
        }),
        PropertyCheck::run("mul_inverse", &nonzero, |a| {
            let inv = a.inverse().expect("sample is nonzero");
            a.mul(&inv) == one && inv.mul(a) == one
        }),
        PropertyCheck::run("inverse_formula", &nonzero, |a| {
            let delta = &a.n * &a.n + &a.m * &a.m;
            !delta.is_zero()
                && a.inverse().ok() == Some(PairNumber::new(&a.n / &delta, -(&a.m / &delta)))
        }),
        PropertyCheck::run("distributive", &triples, |[a, b, c]| {
            c.mul(&a.add(b)) == c.mul(a).add(&c.mul(b))
                && a.add(b).mul(c) == a.mul(c).add(&b.mul(c))
        }),
        PropertyCheck::run("conj_involution", &triples, |[a, _, _]| {
            a.conj().conj() == *a
        }),
        PropertyCheck::run("swap_involution", &triples, |[a, _, _]| {
            a.swap().swap() == *a
        }),
        PropertyCheck::run("conj_swap_squared_is_negation", &triples, |[a, _, _]| {
            a.swap().conj().swap().conj() == a.negate()
        }),
        PropertyCheck::run("conj_is_automorphism", &triples, |[a, b, _]| {
            a.mul(b).conj() == a.conj().mul(&b.conj()) && a.add(b).conj() == a.conj().add(&b.conj())
        }),
    ];
    CheckReport::new("algebra-verify", seed, trials, checks)
}
