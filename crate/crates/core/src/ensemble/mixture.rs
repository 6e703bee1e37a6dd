use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::brace::{EnsembleBrace, Primitive};
use super::stats::Distribution;
use crate::error::{Error, Result};
use crate::rational::{self, serde_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceComponent {
    pub brace: EnsembleBrace,
    #[serde(with = "serde_rational")]
    pub weight: Rational,
}

/// Braces with weights in `(0, 1]` summing to exactly 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraceMixture {
    components: Vec<BraceComponent>,
}

impl BraceMixture {
    pub fn new(components: Vec<BraceComponent>) -> Result<Self> {
        check_weights(components.iter().map(|c| &c.weight))?;
        Ok(BraceMixture { components })
    }

    pub fn components(&self) -> &[BraceComponent] {
        &self.components
    }
}

impl<'de> Deserialize<'de> for BraceMixture {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            components: Vec<BraceComponent>,
        }
        let repr = Repr::deserialize(d)?;
        BraceMixture::new(repr.components).map_err(serde::de::Error::custom)
    }
}

/// Validates mixture weights: each in `(0, 1]` and summing to 1.
pub fn check_weights<'a>(weights: impl IntoIterator<Item = &'a Rational>) -> Result<()> {
    let mut sum = Rational::zero();
    let mut any = false;
    for w in weights {
        if !w.is_positive() || *w > Rational::one() {
            return Err(Error::InvalidWeight(format!(
                "weight {} outside (0,1]",
                rational::display(w)
            )));
        }
        sum += w;
        any = true;
    }
    if !any || !sum.is_one() {
        return Err(Error::WeightSum(rational::display(&sum)));
    }
    Ok(())
}

/// `Σ_i ρ_i · ν(brace_i)`, over the union of outcome symbols in order of
/// first appearance. Symbols absent from a component contribute zero.
pub fn mix_braces(m: &BraceMixture) -> Result<Distribution> {
    let stats = m
        .components
        .iter()
        .map(|c| c.brace.extract_stats())
        .collect::<Result<Vec<_>>>()?;
    let mut outcomes: Vec<Primitive> = Vec::new();
    for s in &stats {
        for o in &s.outcomes {
            if !outcomes.contains(o) {
                outcomes.push(o.clone());
            }
        }
    }
    let mut nu = vec![Rational::zero(); outcomes.len()];
    for (c, s) in m.components.iter().zip(&stats) {
        for (acc, v) in nu.iter_mut().zip(s.nu_along(&outcomes)) {
            *acc += &c.weight * v;
        }
    }
    Ok(Distribution { outcomes, nu })
}
