use num_traits::{One, Zero};
use serde_json::json;

use super::ExperimentReport;
use crate::ensemble::convex_mix;
use crate::error::{Error, Result};
use crate::numeric::PairNumber;
use crate::rational::{self, Rational};
use crate::statespace::{measure, superpose, BasisChange, InstrumentRep, StateVector};

/// Resolution of the `w` grid used to look for a classical mixture that
/// reproduces the superposed statistics.
pub const W_GRID_STEPS: i64 = 128;

fn display_all(nu: &[Rational]) -> Vec<String> {
    nu.iter().map(rational::display).collect()
}

/// Superposes `coeffs[s]·e_s` in the source basis of `u`, carries the
/// state and each nonzero component into the target basis, and compares
/// the superposed statistics with every convex mixture of the component
/// statistics on the `w = k/128` grid.
pub fn two_slit_demo(u: &BasisChange, coeffs: &[PairNumber]) -> Result<ExperimentReport> {
    if u.dimension() != 2 {
        return Err(Error::InvalidParameter(format!(
            "two-slit demo needs dimension 2, got {}",
            u.dimension()
        )));
    }
    if coeffs.len() != 2 {
        return Err(Error::LengthMismatch {
            expected: 2,
            got: coeffs.len(),
        });
    }
    let source = InstrumentRep::with_default_labels(u.from_id().clone(), 2)?;
    let target = InstrumentRep::with_default_labels(u.to_id().clone(), 2)?;

    let mut components: Vec<(usize, StateVector)> = Vec::new();
    for (s, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = crate::statespace::eigenstate(&source, s)?;
        components.push((s, u.apply(&e.scale(c))?));
    }
    let state = u.apply(&superpose(
        &coeffs
            .iter()
            .enumerate()
            .map(|(s, c)| Ok((c.clone(), crate::statespace::eigenstate(&source, s)?)))
            .collect::<Result<Vec<_>>>()?,
    )?)?;
    let superposed = measure(&state, &target)?.nu;
    let component_nu = components
        .iter()
        .map(|(_, v)| Ok(measure(v, &target)?.nu))
        .collect::<Result<Vec<_>>>()?;

    let mut report = ExperimentReport::new(
        "two-slit",
        json!({
            "from": u.from_id(),
            "to": u.to_id(),
            "matrix": u.matrix(),
            "coeffs": coeffs,
        }),
    );
    report.observe("superposed_nu", display_all(&superposed));
    for ((s, _), nu) in components.iter().zip(&component_nu) {
        report.observe(format!("component_{}_nu", s + 1), display_all(nu));
    }

    // outcomes that vanish in the superposition but not in any component
    let zeros: Vec<usize> = (0..2)
        .filter(|&k| superposed[k].is_zero() && component_nu.iter().all(|nu| !nu[k].is_zero()))
        .collect();
    report.observe(
        "interference_zero_outcomes",
        zeros.iter().map(|k| k + 1).collect::<Vec<_>>(),
    );

    match component_nu.as_slice() {
        [single] => {
            report.observe("interference", false);
            report.expect(
                "single_component_matches_superposition",
                *single == superposed,
            );
        }
        [a, b] => {
            let mut grid_zero = false;
            let mut grid_match = false;
            for k in 0..=W_GRID_STEPS {
                let w = rational::ratio(k, W_GRID_STEPS);
                let mix = convex_mix(a, b, &w)?;
                grid_zero |= zeros.iter().any(|&s| mix[s].is_zero());
                grid_match |= mix == superposed;
            }
            report.observe("interference", superposed != *a || superposed != *b);
            report.observe("w_grid_points", W_GRID_STEPS + 1);
            report.observe("w_grid_contains_zero", grid_zero);
            report.observe("w_grid_reproduces_superposition", grid_match);
            if !zeros.is_empty() {
                report.expect("no_convex_mixture_has_the_zero", !grid_zero);
                report.expect("no_convex_mixture_matches", !grid_match);
            }
        }
        _ => return Err(Error::EmptySuperposition),
    }
    let total: Rational = superposed.iter().sum();
    report.expect("superposed_nu_normalized", total.is_one());
    Ok(report)
}
