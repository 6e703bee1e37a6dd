use num_traits::{Signed, Zero};
use rand::Rng;
use serde_json::json;

use super::ExperimentReport;
use crate::ensemble::convex_mix;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::rng::substream;

const WEIGHT_BOUND: u64 = 1000;

fn positive_distribution<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Vec<Rational> {
    let weights: Vec<u64> = (0..d).map(|_| rng.random_range(1..=WEIGHT_BOUND)).collect();
    let total: u64 = weights.iter().sum();
    weights
        .iter()
        .map(|&w| Rational::new(w.into(), total.into()))
        .collect()
}

/// Mixes random strictly positive distributions with random interior
/// weights and counts any component that reaches zero. Also checks the
/// endpoints `w = 0` and `w = 1` on every sample.
pub fn classical_positivity_check(trials: usize, seed: u64) -> Result<ExperimentReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let mut rng = substream(seed, 0);
    let mut zeros = 0usize;
    let mut endpoints_ok = true;
    let mut smallest: Option<Rational> = None;
    for _ in 0..trials {
        let d = rng.random_range(2..=4);
        let s1 = positive_distribution(&mut rng, d);
        let s2 = positive_distribution(&mut rng, d);
        let den = rng.random_range(2..=1000i64);
        let w = rational::ratio(rng.random_range(1..den), den);
        let mix = convex_mix(&s1, &s2, &w)?;
        zeros += mix.iter().filter(|v| !v.is_positive()).count();
        if let Some(min) = mix.iter().min() {
            if smallest.as_ref().is_none_or(|s| min < s) {
                smallest = Some(min.clone());
            }
        }
        endpoints_ok &= convex_mix(&s1, &s2, &Rational::zero())? == s2;
        endpoints_ok &= convex_mix(&s1, &s2, &rational::int(1))? == s1;
    }
    let mut report = ExperimentReport::new(
        "classical-positivity",
        json!({ "trials": trials, "seed": seed }),
    );
    report.observe("samples", trials);
    report.observe("non_positive_components", zeros);
    report.observe(
        "smallest_component",
        smallest.as_ref().map(rational::display),
    );
    report.observe("endpoints_return_inputs", endpoints_ok);
    report.expect("no_zero_from_positive_inputs", zeros == 0);
    report.expect("endpoints_return_inputs", endpoints_ok);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn equal_halves_stay_halves() {
        let h = vec![ratio(1, 2), ratio(1, 2)];
        for k in 0..=8 {
            assert_eq!(convex_mix(&h, &h, &ratio(k, 8)).unwrap(), h);
        }
    }

    #[test]
    fn random_batch_passes() {
        let r = classical_positivity_check(1000, 5).unwrap();
        assert!(r.verdict.passed());
        assert_eq!(r.observation("non_positive_components").unwrap(), &json!(0));
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            classical_positivity_check(50, 9).unwrap(),
            classical_positivity_check(50, 9).unwrap()
        );
        assert!(classical_positivity_check(0, 9).is_err());
    }
}
