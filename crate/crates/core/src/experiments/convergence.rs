use num_traits::One;
use serde_json::json;

use super::ExperimentReport;
use crate::ensemble::{ingest_clicks, simulate_clicks_on, SimulationSpec};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::statespace::InstrumentRep;

/// `3·sqrt(max_s ν_s(1−ν_s) / Σ)`
pub fn binomial_bound(nu: &[Rational], sigma: u64) -> f64 {
    let var = nu
        .iter()
        .map(|v| rational::to_f64(&(v * (Rational::one() - v))))
        .fold(0.0, f64::max);
    3.0 * (var / sigma as f64).sqrt()
}

/// For each `Σ` in the schedule: simulate `Σ` clicks on substream `i` of
/// `seed`, ingest them with `κ = 1/2`, extract `ν̂` and compare with `ν`.
pub fn convergence_study(nu: &[Rational], schedule: &[u64], seed: u64) -> Result<ExperimentReport> {
    if schedule.is_empty() {
        return Err(Error::InvalidParameter("empty sigma schedule".into()));
    }
    if schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(
            "sigma schedule must be strictly increasing".into(),
        ));
    }
    let instrument = InstrumentRep::with_default_labels("conv", nu.len())?;
    let kappa = vec![rational::ratio(1, 2); nu.len()];
    let mut report = ExperimentReport::new(
        "convergence",
        json!({
            "nu": nu.iter().map(rational::display).collect::<Vec<_>>(),
            "schedule": schedule,
            "seed": seed,
        }),
    );
    for (i, &sigma) in schedule.iter().enumerate() {
        let spec = SimulationSpec::new(nu.to_vec(), sigma, instrument.id().clone())?;
        let clicks = simulate_clicks_on(&spec, seed, i as u64)?;
        let stats = ingest_clicks(&clicks, &instrument, &kappa)?.extract_stats()?;
        let estimate = stats.nu_along(instrument.eigen_symbols());
        let error = estimate
            .iter()
            .zip(nu)
            .map(|(a, b)| rational::to_f64(&(a - b)).abs())
            .fold(0.0, f64::max);
        let bound = binomial_bound(nu, sigma);
        report.observe(
            format!("sigma_{sigma}"),
            json!({ "error": error, "bound": bound }),
        );
        report.expect(format!("error_within_bound_at_{sigma}"), error <= bound);
    }
    Ok(report)
}
