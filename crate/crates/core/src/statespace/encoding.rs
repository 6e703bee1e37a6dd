//! Demo-only bridge from `(ν, κ)` statistics to coordinate pairs:
//! `λ = r·cos 2πκ`, `μ = r·sin 2πκ` with `r² = ν`, each rounded to the
//! nearest rational with bounded denominator. The algebra never calls this.

use std::f64::consts::TAU;

use super::instrument::InstrumentRep;
use super::vector::StateVector;
use crate::ensemble::BraceStatistics;
use crate::error::{Error, Result};
use crate::numeric::PairNumber;
use crate::rational::{self, Rational};

pub const DEFAULT_MAX_DENOMINATOR: u64 = 1 << 20;

pub fn encode_pair(nu: &Rational, kappa: &Rational, max_den: u64) -> PairNumber {
    let r = rational::to_f64(nu).max(0.0).sqrt();
    let angle = TAU * rational::to_f64(kappa);
    PairNumber::new(
        rational::nearest(r * angle.cos(), max_den),
        rational::nearest(r * angle.sin(), max_den),
    )
}

/// Lays the statistics out along the instrument's eigen symbols; symbols
/// that never clicked get `(0,0)`.
pub fn encode_statistics(
    stats: &BraceStatistics,
    instrument: &InstrumentRep,
    max_den: u64,
) -> Result<StateVector> {
    if let Some(o) = stats
        .outcomes
        .iter()
        .find(|o| !instrument.eigen_symbols().contains(o))
    {
        return Err(Error::InvalidParameter(format!(
            "outcome {o} is not an eigen symbol of instrument {}",
            instrument.id()
        )));
    }
    let coords = instrument
        .eigen_symbols()
        .iter()
        .map(|sym| match stats.outcomes.iter().position(|o| o == sym) {
            Some(i) => encode_pair(&stats.nu[i], &stats.kappa[i], max_den),
            None => PairNumber::zero(),
        })
        .collect();
    StateVector::new(instrument.id().clone(), coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::statespace::measure;

    #[test]
    fn quarter_turn() {
        let p = encode_pair(&int(1), &ratio(1, 4), 1000);
        assert_eq!(p, PairNumber::from_ints(0, 1));
        let p = encode_pair(&ratio(1, 4), &int(0), 1000);
        assert_eq!(p, PairNumber::new(ratio(1, 2), int(0)));
    }

    #[test]
    fn measurement_recovers_nu_approximately() {
        let inst = InstrumentRep::with_default_labels("A", 2).unwrap();
        let stats = BraceStatistics::new(
            inst.eigen_symbols().to_vec(),
            vec![ratio(3, 10), ratio(7, 10)],
            vec![ratio(1, 8), ratio(2, 3)],
        )
        .unwrap();
        let v = encode_statistics(&stats, &inst, DEFAULT_MAX_DENOMINATOR).unwrap();
        let r = measure(&v, &inst).unwrap();
        assert!((rational::to_f64(&r.nu[0]) - 0.3).abs() < 1e-6);
    }
}
