use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use super::basis::BasisChange;
use super::instrument::{InstrumentId, InstrumentRep};
use super::measure::{self, MeasurementMap, MeasurementResult, MixtureState, SquareSumMap};
use super::vector::{self, StateVector};
use super::DimensionConfig;
use crate::error::{Error, Result};
use crate::numeric::PairNumber;

/// On-disk bundle of a dimension, instruments and basis changes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionConfig {
    pub dimension: usize,
    #[serde(default)]
    pub instruments: Vec<InstrumentRep>,
    #[serde(default)]
    pub basis_changes: Vec<BasisChange>,
    #[serde(default)]
    pub default_seed: u64,
}

/// Instruments and basis changes of one session. Reads take a shared
/// lock; registration is exclusive.
#[derive(Debug)]
pub struct Registry {
    dimension: DimensionConfig,
    default_seed: u64,
    instruments: RwLock<BTreeMap<InstrumentId, InstrumentRep>>,
    changes: RwLock<HashMap<(InstrumentId, InstrumentId), BasisChange>>,
}

impl Registry {
    pub fn new(dimension: DimensionConfig) -> Self {
        Registry {
            dimension,
            default_seed: 0,
            instruments: RwLock::default(),
            changes: RwLock::default(),
        }
    }

    pub fn from_session(cfg: &SessionConfig) -> Result<Self> {
        let mut reg = Registry::new(DimensionConfig::new(cfg.dimension)?);
        reg.default_seed = cfg.default_seed;
        for i in &cfg.instruments {
            reg.register_instrument(i.clone())?;
        }
        for c in &cfg.basis_changes {
            reg.register_basis_change(c.clone())?;
        }
        Ok(reg)
    }

    /// Snapshot with instruments sorted by id and one basis change per
    /// instrument pair, sorted by endpoints.
    pub fn to_session(&self) -> SessionConfig {
        let instruments = self
            .instruments
            .read()
            .expect("lock")
            .values()
            .cloned()
            .collect();
        let changes = self.changes.read().expect("lock");
        // each change is stored with its inverse; keep one per pair
        let mut basis_changes: Vec<BasisChange> = changes
            .iter()
            .filter(|((from, to), _)| from < to)
            .map(|(_, c)| c.clone())
            .collect();
        basis_changes.sort_by(|a, b| (a.from_id(), a.to_id()).cmp(&(b.from_id(), b.to_id())));
        SessionConfig {
            dimension: self.dimension.get(),
            instruments,
            basis_changes,
            default_seed: self.default_seed,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension.get()
    }

    pub fn default_seed(&self) -> u64 {
        self.default_seed
    }

    pub fn register_instrument(&self, instrument: InstrumentRep) -> Result<()> {
        self.dimension.check(instrument.dimension())?;
        self.instruments
            .write()
            .expect("lock")
            .insert(instrument.id().clone(), instrument);
        Ok(())
    }

    /// Stores the change and its inverse.
    pub fn register_basis_change(&self, change: BasisChange) -> Result<()> {
        self.dimension.check(change.dimension())?;
        let inverse = change.inverse();
        let mut changes = self.changes.write().expect("lock");
        changes.insert((change.from_id().clone(), change.to_id().clone()), change);
        changes.insert(
            (inverse.from_id().clone(), inverse.to_id().clone()),
            inverse,
        );
        Ok(())
    }

    pub fn instrument(&self, id: &InstrumentId) -> Result<InstrumentRep> {
        self.instruments
            .read()
            .expect("lock")
            .get(id)
            .cloned()
            .ok_or_else(|| Error::UnknownInstrument(id.to_string()))
    }

    /// Composite change along the shortest chain of registered changes.
    pub fn basis_change(&self, from: &InstrumentId, to: &InstrumentId) -> Result<BasisChange> {
        let d = self.dimension();
        if from == to {
            return BasisChange::identity(from.clone(), to.clone(), d);
        }
        let changes = self.changes.read().expect("lock");
        let mut previous: HashMap<InstrumentId, InstrumentId> = HashMap::new();
        let mut queue = VecDeque::from([from.clone()]);
        while let Some(node) = queue.pop_front() {
            if &node == to {
                break;
            }
            let mut next: Vec<&InstrumentId> = changes
                .keys()
                .filter(|(f, _)| f == &node)
                .map(|(_, t)| t)
                .collect();
            next.sort();
            for t in next {
                if t != from && !previous.contains_key(t) {
                    previous.insert(t.clone(), node.clone());
                    queue.push_back(t.clone());
                }
            }
        }
        if !previous.contains_key(to) {
            return Err(Error::BasisMismatch {
                from: from.to_string(),
                to: to.to_string(),
            });
        }
        let mut path = vec![to.clone()];
        while path.last() != Some(from) {
            let step = previous[path.last().expect("non-empty")].clone();
            path.push(step);
        }
        path.reverse();
        let mut total = changes[&(path[0].clone(), path[1].clone())].clone();
        for w in path[1..].windows(2) {
            total = total.then(&changes[&(w[0].clone(), w[1].clone())])?;
        }
        Ok(total)
    }

    pub fn convert(&self, v: &StateVector, to: &InstrumentId) -> Result<StateVector> {
        self.dimension.check(v.dimension())?;
        if v.basis() == to {
            return Ok(v.clone());
        }
        self.basis_change(v.basis(), to)?.apply(v)
    }

    /// Superposes in the basis of the first term, converting the rest.
    pub fn superpose(&self, terms: &[(PairNumber, StateVector)]) -> Result<StateVector> {
        let target = terms
            .first()
            .ok_or(Error::EmptySuperposition)?
            .1
            .basis()
            .clone();
        let converted = terms
            .iter()
            .map(|(c, v)| Ok((c.clone(), self.convert(v, &target)?)))
            .collect::<Result<Vec<_>>>()?;
        vector::superpose(&converted)
    }

    pub fn measure(&self, v: &StateVector, instrument: &InstrumentId) -> Result<MeasurementResult> {
        self.measure_with(&SquareSumMap, v, instrument)
    }

    pub fn measure_with(
        &self,
        map: &dyn MeasurementMap,
        v: &StateVector,
        instrument: &InstrumentId,
    ) -> Result<MeasurementResult> {
        let inst = self.instrument(instrument)?;
        measure::measure_with(map, &self.convert(v, instrument)?, &inst)
    }

    pub fn measure_mixture(
        &self,
        m: &MixtureState,
        instrument: &InstrumentId,
    ) -> Result<MeasurementResult> {
        let inst = self.instrument(instrument)?;
        measure::measure_mixture_with(&SquareSumMap, m, &inst, |v| self.convert(v, instrument))
    }
}
