//! State vectors over pair numbers, instruments and their spectra, basis
//! changes, measurement and mixtures.

pub mod axioms;
pub mod basis;
pub mod encoding;
pub mod instrument;
pub mod measure;
pub mod registry;
pub mod vector;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use axioms::{verify_lvs_axioms, verify_lvs_axioms_with, StandardOps, VectorOps};
pub use basis::BasisChange;
pub use encoding::{encode_pair, encode_statistics};
pub use instrument::{InstrumentId, InstrumentRep};
pub use measure::{
    measure, measure_mixture, measure_with, LabelStat, MeasurementMap, MeasurementResult,
    MixtureState, SquareSumMap, StateComponent,
};
pub use registry::{Registry, SessionConfig};
pub use vector::{eigenstate, ray_equivalent, superpose, StateVector};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub const MAX_DIMENSION: usize = 64;
pub const DEFAULT_DIMENSION: usize = 2;

/// Session-wide dimension `D`, `2 ≤ D ≤ 64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct DimensionConfig(usize);

impl DimensionConfig {
    pub fn new(d: usize) -> Result<Self> {
        if (2..=MAX_DIMENSION).contains(&d) {
            Ok(DimensionConfig(d))
        } else {
            Err(Error::InvalidDimension(d))
        }
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn check(self, got: usize) -> Result<()> {
        if got == self.0 {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.0,
                got,
            })
        }
    }
}

impl Default for DimensionConfig {
    fn default() -> Self {
        DimensionConfig(DEFAULT_DIMENSION)
    }
}

impl TryFrom<usize> for DimensionConfig {
    type Error = Error;
    fn try_from(d: usize) -> Result<Self> {
        DimensionConfig::new(d)
    }
}

impl From<DimensionConfig> for usize {
    fn from(d: DimensionConfig) -> usize {
        d.0
    }
}

/// Same eigen symbols, spectrum relabelled through `merge`.
pub fn coarse_grain(
    instrument: &InstrumentRep,
    merge: &BTreeMap<Rational, Rational>,
) -> Result<InstrumentRep> {
    instrument.coarse_grain(merge)
}
