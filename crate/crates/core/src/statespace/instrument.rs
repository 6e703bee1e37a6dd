use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize};

use super::MAX_DIMENSION;
use crate::ensemble::Primitive;
use crate::error::{Error, Result};
use crate::rational::{self, serde_rational_vec, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InstrumentId(Arc<str>);

impl InstrumentId {
    pub fn new(id: impl AsRef<str>) -> Self {
        InstrumentId(Arc::from(id.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for InstrumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for InstrumentId {
    fn from(s: &str) -> Self {
        InstrumentId::new(s)
    }
}

/// An instrument: `D` distinct eigen symbols, each carrying a numeric
/// spectral label. Repeated labels mark degeneracy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstrumentRep {
    id: InstrumentId,
    eigen_symbols: Vec<Primitive>,
    #[serde(with = "serde_rational_vec")]
    spectral_labels: Vec<Rational>,
}

impl InstrumentRep {
    pub fn new(
        id: impl Into<InstrumentId>,
        eigen_symbols: Vec<Primitive>,
        spectral_labels: Vec<Rational>,
    ) -> Result<Self> {
        let id = id.into();
        let d = eigen_symbols.len();
        if !(2..=MAX_DIMENSION).contains(&d) {
            return Err(Error::InvalidDimension(d));
        }
        if spectral_labels.len() != d {
            return Err(Error::LengthMismatch {
                expected: d,
                got: spectral_labels.len(),
            });
        }
        for (i, s) in eigen_symbols.iter().enumerate() {
            if eigen_symbols[..i].contains(s) {
                return Err(Error::DuplicateEigenSymbol(id.to_string()));
            }
        }
        Ok(InstrumentRep {
            id,
            eigen_symbols,
            spectral_labels,
        })
    }

    /// Symbols `"{id}0" .. "{id}{d-1}"` with labels `0 .. d-1`.
    pub fn with_default_labels(id: impl Into<InstrumentId>, d: usize) -> Result<Self> {
        let id = id.into();
        let symbols = (0..d).map(|s| Primitive::new(format!("{id}{s}"))).collect();
        let labels = (0..d as i64).map(rational::int).collect();
        InstrumentRep::new(id, symbols, labels)
    }

    /// Extends an instrument with fewer than `dimension` outcomes by adding
    /// synthetic eigen symbols `"{id}~k"` that repeat the last spectral
    /// label, so the padding is indistinguishable from the last outcome.
    pub fn padded(
        id: impl Into<InstrumentId>,
        mut eigen_symbols: Vec<Primitive>,
        mut spectral_labels: Vec<Rational>,
        dimension: usize,
    ) -> Result<Self> {
        let id = id.into();
        if eigen_symbols.is_empty() || spectral_labels.len() != eigen_symbols.len() {
            return Err(Error::LengthMismatch {
                expected: eigen_symbols.len().max(1),
                got: spectral_labels.len(),
            });
        }
        if eigen_symbols.len() > dimension {
            return Err(Error::DimensionMismatch {
                expected: dimension,
                got: eigen_symbols.len(),
            });
        }
        let last = spectral_labels.last().cloned().expect("non-empty");
        let mut k = 0;
        while eigen_symbols.len() < dimension {
            eigen_symbols.push(Primitive::new(format!("{id}~{k}")));
            spectral_labels.push(last.clone());
            k += 1;
        }
        InstrumentRep::new(id, eigen_symbols, spectral_labels)
    }

    pub fn id(&self) -> &InstrumentId {
        &self.id
    }

    pub fn dimension(&self) -> usize {
        self.eigen_symbols.len()
    }

    pub fn eigen_symbols(&self) -> &[Primitive] {
        &self.eigen_symbols
    }

    pub fn spectral_labels(&self) -> &[Rational] {
        &self.spectral_labels
    }

    /// Distinct labels in order of first appearance.
    pub fn distinct_labels(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::new();
        for l in &self.spectral_labels {
            if !out.contains(l) {
                out.push(l.clone());
            }
        }
        out
    }

    /// Relabels the spectrum through `merge`, keeping the eigen symbols.
    /// `merge` must cover every label the instrument carries.
    pub fn coarse_grain(&self, merge: &BTreeMap<Rational, Rational>) -> Result<InstrumentRep> {
        let labels = self
            .spectral_labels
            .iter()
            .map(|l| {
                merge
                    .get(l)
                    .cloned()
                    .ok_or_else(|| Error::IncompleteMerge(rational::display(l)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(InstrumentRep {
            id: self.id.clone(),
            eigen_symbols: self.eigen_symbols.clone(),
            spectral_labels: labels,
        })
    }
}

impl<'de> Deserialize<'de> for InstrumentRep {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            id: InstrumentId,
            eigen_symbols: Vec<Primitive>,
            #[serde(with = "serde_rational_vec")]
            spectral_labels: Vec<Rational>,
        }
        let r = Repr::deserialize(d)?;
        InstrumentRep::new(r.id, r.eigen_symbols, r.spectral_labels)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn default_labels() {
        let a = InstrumentRep::with_default_labels("A", 3).unwrap();
        assert_eq!(a.dimension(), 3);
        assert_eq!(a.eigen_symbols()[2], Primitive::new("A2"));
        assert_eq!(a.spectral_labels(), &[int(0), int(1), int(2)]);
    }

    #[test]
    fn validation() {
        assert_eq!(
            InstrumentRep::with_default_labels("A", 1),
            Err(Error::InvalidDimension(1))
        );
        let dup = InstrumentRep::new("A", vec!["x".into(), "x".into()], vec![int(0), int(1)]);
        assert_eq!(dup, Err(Error::DuplicateEigenSymbol("A".into())));
        let short = InstrumentRep::new("A", vec!["x".into(), "y".into()], vec![int(0)]);
        assert!(matches!(short, Err(Error::LengthMismatch { .. })));
        // degenerate labels are fine
        assert!(
            InstrumentRep::new("A", vec!["x".into(), "y".into()], vec![int(7), int(7)]).is_ok()
        );
    }

    #[test]
    fn padding_repeats_last_label() {
        let a = InstrumentRep::padded("A", vec!["x".into(), "y".into()], vec![int(1), int(5)], 4)
            .unwrap();
        assert_eq!(a.dimension(), 4);
        assert_eq!(a.spectral_labels(), &[int(1), int(5), int(5), int(5)]);
        assert_eq!(a.distinct_labels(), vec![int(1), int(5)]);
        assert!(InstrumentRep::padded("A", vec!["x".into()], vec![int(1)], 3).is_ok());
        assert!(InstrumentRep::padded("A", vec!["x".into(); 3], vec![int(1); 3], 2).is_err());
    }

    #[test]
    fn coarse_grain_relabels() {
        let a = InstrumentRep::with_default_labels("A", 3).unwrap();
        let merge: BTreeMap<_, _> = [(int(0), int(9)), (int(1), int(9)), (int(2), int(4))].into();
        let c = a.coarse_grain(&merge).unwrap();
        assert_eq!(c.spectral_labels(), &[int(9), int(9), int(4)]);
        assert_eq!(c.eigen_symbols(), a.eigen_symbols());
        let partial: BTreeMap<_, _> = [(int(0), int(9))].into();
        assert_eq!(
            a.coarse_grain(&partial),
            Err(Error::IncompleteMerge("1".into()))
        );
    }

    #[test]
    fn serde_validates() {
        let a = InstrumentRep::with_default_labels("A", 2).unwrap();
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<InstrumentRep>(&json).unwrap(), a);
        let bad = r#"{"id":"A","eigen_symbols":["x","x"],"spectral_labels":[0,1]}"#;
        assert!(serde_json::from_str::<InstrumentRep>(bad).is_err());
    }
}
