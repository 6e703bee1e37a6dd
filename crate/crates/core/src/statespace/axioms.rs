//! Randomized exact check of the linear-vector-space identities.

use serde::Serialize;

use super::instrument::InstrumentId;
use super::vector::StateVector;
use crate::error::Result;
use crate::numeric::verify::random_pair;
use crate::numeric::PairNumber;
use crate::report::{CheckReport, PropertyCheck};
use crate::rng::substream;

/// The two operations whose laws are checked. Swapping in a faulty
/// implementation must make [`verify_lvs_axioms_with`] fail.
pub trait VectorOps: Sync {
    fn add(&self, a: &StateVector, b: &StateVector) -> StateVector;
    fn scale(&self, c: &PairNumber, v: &StateVector) -> StateVector;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct StandardOps;

impl VectorOps for StandardOps {
    fn add(&self, a: &StateVector, b: &StateVector) -> StateVector {
        a.add(b).expect("samples share basis and dimension")
    }

    fn scale(&self, c: &PairNumber, v: &StateVector) -> StateVector {
        v.scale(c)
    }
}

#[derive(Clone, Debug, Serialize)]
struct Sample {
    a: PairNumber,
    b: PairNumber,
    u: StateVector,
    v: StateVector,
    w: StateVector,
}

pub fn verify_lvs_axioms(dimension: usize, seed: u64, trials: usize) -> Result<CheckReport> {
    verify_lvs_axioms_with(&StandardOps, dimension, seed, trials)
}

/// Checks the commutative-group laws of `∔`, closure, and the four
/// scalar-action identities on `trials` random `(a, b, u, v, w)` samples.
pub fn verify_lvs_axioms_with(
    ops: &dyn VectorOps,
    dimension: usize,
    seed: u64,
    trials: usize,
) -> Result<CheckReport> {
    let basis = InstrumentId::new("lvs");
    let zero = StateVector::zero(basis.clone(), dimension)?;
    let mut rng = substream(seed, 0);
    let vector = |rng: &mut rand_chacha::ChaCha8Rng| {
        StateVector::new(
            basis.clone(),
            (0..dimension).map(|_| random_pair(rng)).collect(),
        )
    };
    let mut samples = Vec::with_capacity(trials);
    for _ in 0..trials {
        samples.push(Sample {
            a: random_pair(&mut rng),
            b: random_pair(&mut rng),
            u: vector(&mut rng)?,
            v: vector(&mut rng)?,
            w: vector(&mut rng)?,
        });
    }
    let one = PairNumber::one();
    let conforms = |x: &StateVector| x.dimension() == dimension && x.basis() == &basis;

    let checks = vec![
        PropertyCheck::run("add_commutative", &samples, |s| {
            ops.add(&s.u, &s.v) == ops.add(&s.v, &s.u)
        }),
        PropertyCheck::run("add_associative", &samples, |s| {
            ops.add(&ops.add(&s.u, &s.v), &s.w) == ops.add(&s.u, &ops.add(&s.v, &s.w))
        }),
        PropertyCheck::run("add_zero", &samples, |s| ops.add(&s.u, &zero) == s.u),
        PropertyCheck::run("add_inverse", &samples, |s| {
            ops.add(&s.u, &s.u.negate()) == zero
        }),
        PropertyCheck::run("closure", &samples, |s| {
            conforms(&ops.add(&s.u, &s.v)) && conforms(&ops.scale(&s.a, &s.u))
        }),
        PropertyCheck::run("scalar_compatibility", &samples, |s| {
            ops.scale(&s.a, &ops.scale(&s.b, &s.u)) == ops.scale(&s.a.mul(&s.b), &s.u)
        }),
        PropertyCheck::run("scalar_identity", &samples, |s| {
            ops.scale(&one, &s.u) == s.u
        }),
        PropertyCheck::run("distributive_over_vectors", &samples, |s| {
            ops.scale(&s.a, &ops.add(&s.u, &s.v))
                == ops.add(&ops.scale(&s.a, &s.u), &ops.scale(&s.a, &s.v))
        }),
        PropertyCheck::run("distributive_over_scalars", &samples, |s| {
            ops.add(&ops.scale(&s.a, &s.u), &ops.scale(&s.b, &s.u))
                == ops.scale(&s.a.add(&s.b), &s.u)
        }),
    ];
    Ok(CheckReport::new("lvs-verify", seed, trials, checks))
}
