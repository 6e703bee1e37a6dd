//! Reduction of coordinates to observable statistics.
//!
//! The map from coordinate pairs to relative frequencies is pluggable
//! through [`MeasurementMap`]. Any implementation has to be invariant under
//! scaling by a nonzero pair and under componentwise conjugation and swap.
//! [`SquareSumMap`] (`ν_s ∝ n_s² + m_s²`) is the default.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::instrument::{InstrumentId, InstrumentRep};
use super::vector::StateVector;
use crate::ensemble::{check_weights, Primitive};
use crate::error::{Error, Result};
use crate::numeric::PairNumber;
use crate::rational::{serde_rational, serde_rational_vec, Rational};

pub trait MeasurementMap: Send + Sync {
    /// Relative frequencies for `coords`; the caller guarantees a nonzero
    /// vector.
    fn frequencies(&self, coords: &[PairNumber]) -> Vec<Rational>;
}

/// `ν_s = (n_s² + m_s²) / Σ_k (n_k² + m_k²)`
#[derive(Clone, Copy, Debug, Default)]
pub struct SquareSumMap;

impl MeasurementMap for SquareSumMap {
    fn frequencies(&self, coords: &[PairNumber]) -> Vec<Rational> {
        let weights: Vec<Rational> = coords.iter().map(PairNumber::delta).collect();
        let total: Rational = weights.iter().sum();
        weights.into_iter().map(|w| w / &total).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelStat {
    #[serde(with = "serde_rational")]
    pub label: Rational,
    #[serde(with = "serde_rational")]
    pub nu: Rational,
}

/// Fine-grained `ν` per eigen symbol plus its push-forward onto the
/// distinct spectral labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementResult {
    pub instrument: InstrumentId,
    pub outcomes: Vec<Primitive>,
    #[serde(with = "serde_rational_vec")]
    pub nu: Vec<Rational>,
    pub label_stats: Vec<LabelStat>,
}

impl MeasurementResult {
    fn from_nu(instrument: &InstrumentRep, nu: Vec<Rational>) -> Self {
        let label_stats = instrument
            .distinct_labels()
            .into_iter()
            .map(|label| {
                let total = instrument
                    .spectral_labels()
                    .iter()
                    .zip(&nu)
                    .filter(|(l, _)| **l == label)
                    .map(|(_, v)| v)
                    .sum();
                LabelStat { label, nu: total }
            })
            .collect();
        MeasurementResult {
            instrument: instrument.id().clone(),
            outcomes: instrument.eigen_symbols().to_vec(),
            nu,
            label_stats,
        }
    }

    pub fn label_nu(&self, label: &Rational) -> Rational {
        self.label_stats
            .iter()
            .find(|s| &s.label == label)
            .map_or_else(Rational::zero, |s| s.nu.clone())
    }
}

/// Measures with the default map. `v` must already be in the
/// instrument's basis.
pub fn measure(v: &StateVector, instrument: &InstrumentRep) -> Result<MeasurementResult> {
    measure_with(&SquareSumMap, v, instrument)
}

pub fn measure_with(
    map: &dyn MeasurementMap,
    v: &StateVector,
    instrument: &InstrumentRep,
) -> Result<MeasurementResult> {
    if v.basis() != instrument.id() {
        return Err(Error::BasisMismatch {
            from: v.basis().to_string(),
            to: instrument.id().to_string(),
        });
    }
    if v.dimension() != instrument.dimension() {
        return Err(Error::DimensionMismatch {
            expected: instrument.dimension(),
            got: v.dimension(),
        });
    }
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(MeasurementResult::from_nu(
        instrument,
        map.frequencies(v.coords()),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateComponent {
    pub state: StateVector,
    #[serde(with = "serde_rational")]
    pub weight: Rational,
}

/// States with weights in `(0, 1]` summing to 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixtureState {
    components: Vec<StateComponent>,
}

impl MixtureState {
    pub fn new(components: Vec<StateComponent>) -> Result<Self> {
        check_weights(components.iter().map(|c| &c.weight))?;
        Ok(MixtureState { components })
    }

    pub fn components(&self) -> &[StateComponent] {
        &self.components
    }
}

impl<'de> Deserialize<'de> for MixtureState {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            components: Vec<StateComponent>,
        }
        let r = Repr::deserialize(d)?;
        MixtureState::new(r.components).map_err(serde::de::Error::custom)
    }
}

/// `ν = Σ_i ρ_i · ν(component_i)`, combined classically.
pub fn measure_mixture(m: &MixtureState, instrument: &InstrumentRep) -> Result<MeasurementResult> {
    measure_mixture_with(&SquareSumMap, m, instrument, |v| Ok(v.clone()))
}

pub(crate) fn measure_mixture_with(
    map: &dyn MeasurementMap,
    m: &MixtureState,
    instrument: &InstrumentRep,
    convert: impl Fn(&StateVector) -> Result<StateVector>,
) -> Result<MeasurementResult> {
    let mut nu = vec![Rational::zero(); instrument.dimension()];
    for c in &m.components {
        let r = measure_with(map, &convert(&c.state)?, instrument)?;
        for (acc, v) in nu.iter_mut().zip(&r.nu) {
            *acc += &c.weight * v;
        }
    }
    Ok(MeasurementResult::from_nu(instrument, nu))
}
