use serde::{Deserialize, Deserializer, Serialize};

use super::instrument::{InstrumentId, InstrumentRep};
use super::MAX_DIMENSION;
use crate::error::{Error, Result};
use crate::numeric::PairNumber;

/// Coordinates of a state in the eigenbasis of one instrument.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StateVector {
    basis: InstrumentId,
    coords: Vec<PairNumber>,
}

impl StateVector {
    pub fn new(basis: impl Into<InstrumentId>, coords: Vec<PairNumber>) -> Result<Self> {
        if !(2..=MAX_DIMENSION).contains(&coords.len()) {
            return Err(Error::InvalidDimension(coords.len()));
        }
        Ok(StateVector {
            basis: basis.into(),
            coords,
        })
    }

    pub fn zero(basis: impl Into<InstrumentId>, dimension: usize) -> Result<Self> {
        StateVector::new(basis, vec![PairNumber::zero(); dimension])
    }

    pub fn basis(&self) -> &InstrumentId {
        &self.basis
    }

    pub fn coords(&self) -> &[PairNumber] {
        &self.coords
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(PairNumber::is_zero)
    }

    /// `c · v`, coordinatewise `c ⊙ v_s`.
    pub fn scale(&self, c: &PairNumber) -> StateVector {
        self.map(|x| c.mul(x))
    }

    pub fn negate(&self) -> StateVector {
        self.map(PairNumber::negate)
    }

    pub fn conj(&self) -> StateVector {
        self.map(PairNumber::conj)
    }

    pub fn swap(&self) -> StateVector {
        self.map(PairNumber::swap)
    }

    pub fn map(&self, f: impl Fn(&PairNumber) -> PairNumber) -> StateVector {
        StateVector {
            basis: self.basis.clone(),
            coords: self.coords.iter().map(f).collect(),
        }
    }

    pub(crate) fn with_coords(&self, coords: Vec<PairNumber>) -> StateVector {
        StateVector {
            basis: self.basis.clone(),
            coords,
        }
    }

    /// `v ∔ w`; both must live in the same basis and dimension.
    pub fn add(&self, other: &StateVector) -> Result<StateVector> {
        self.check_compatible(other)?;
        Ok(self.with_coords(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.add(b))
                .collect(),
        ))
    }

    pub(crate) fn check_compatible(&self, other: &StateVector) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch {
                from: other.basis.to_string(),
                to: self.basis.to_string(),
            });
        }
        if self.dimension() != other.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                got: other.dimension(),
            });
        }
        Ok(())
    }
}

impl<'de> Deserialize<'de> for StateVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            basis: InstrumentId,
            coords: Vec<PairNumber>,
        }
        let r = Repr::deserialize(d)?;
        StateVector::new(r.basis, r.coords).map_err(serde::de::Error::custom)
    }
}

/// `Σ_i scalar_i · vector_i`. All vectors must share a basis; use
/// [`Registry::superpose`](super::Registry::superpose) to mix bases.
pub fn superpose(terms: &[(PairNumber, StateVector)]) -> Result<StateVector> {
    let ((c0, v0), rest) = terms.split_first().ok_or(Error::EmptySuperposition)?;
    rest.iter()
        .try_fold(v0.scale(c0), |acc, (c, v)| acc.add(&v.scale(c)))
}

/// `(1,0)` at `index`, `(0,0)` elsewhere, in the instrument's basis.
pub fn eigenstate(instrument: &InstrumentRep, index: usize) -> Result<StateVector> {
    let d = instrument.dimension();
    if index >= d {
        return Err(Error::IndexOutOfRange { index, dim: d });
    }
    let coords = (0..d)
        .map(|s| {
            if s == index {
                PairNumber::one()
            } else {
                PairNumber::zero()
            }
        })
        .collect();
    StateVector::new(instrument.id().clone(), coords)
}

/// The scalar `c` with `w = c · v`, if one exists.
pub fn ray_equivalent(v: &StateVector, w: &StateVector) -> Result<Option<PairNumber>> {
    v.check_compatible(w)?;
    if v.is_zero() || w.is_zero() {
        return Err(Error::ZeroVector);
    }
    let k = v
        .coords
        .iter()
        .position(|x| !x.is_zero())
        .expect("v is nonzero");
    let c = w.coords[k].div(&v.coords[k])?;
    Ok((v.scale(&c) == *w).then_some(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(coords: &[(i64, i64)]) -> StateVector {
        StateVector::new(
            "A",
            coords
                .iter()
                .map(|&(n, m)| PairNumber::from_ints(n, m))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn superpose_examples() {
        let v = sv(&[(1, 2), (3, -1)]);
        let w = sv(&[(5, 5), (0, 7)]);
        assert_eq!(
            superpose(&[(PairNumber::one(), v.clone()), (PairNumber::zero(), w)]).unwrap(),
            v
        );

        let a = PairNumber::from_ints(2, 1);
        let b = PairNumber::from_ints(-1, 3);
        let lhs = superpose(&[(a.clone(), v.clone()), (b.clone(), v.clone())]).unwrap();
        assert_eq!(lhs, v.scale(&a.add(&b)));

        let e = sv(&[(1, 0), (0, 0)]);
        let z = superpose(&[
            (PairNumber::one(), e.clone()),
            (PairNumber::from_ints(-1, 0), e),
        ])
        .unwrap();
        assert!(z.is_zero());
        assert_eq!(superpose(&[]), Err(Error::EmptySuperposition));
    }

    #[test]
    fn superpose_rejects_mixed_bases() {
        let v = sv(&[(1, 0), (0, 0)]);
        let w = StateVector::new("B", vec![PairNumber::one(), PairNumber::zero()]).unwrap();
        assert!(matches!(
            superpose(&[(PairNumber::one(), v), (PairNumber::one(), w)]),
            Err(Error::BasisMismatch { .. })
        ));
    }

    #[test]
    fn ray_examples() {
        let v = sv(&[(1, 2), (3, 4)]);
        assert_eq!(
            ray_equivalent(&v, &v.scale(&PairNumber::i())).unwrap(),
            Some(PairNumber::i())
        );
        let e0 = sv(&[(1, 0), (0, 0)]);
        let e1 = sv(&[(0, 0), (1, 0)]);
        assert_eq!(ray_equivalent(&e0, &e1).unwrap(), None);
        assert_eq!(
            ray_equivalent(&e0, &sv(&[(0, 0), (0, 0)])),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn eigenstate_examples() {
        let a = InstrumentRep::with_default_labels("A", 2).unwrap();
        assert_eq!(eigenstate(&a, 0).unwrap(), sv(&[(1, 0), (0, 0)]));
        assert_eq!(
            eigenstate(&a, 2),
            Err(Error::IndexOutOfRange { index: 2, dim: 2 })
        );
        let sum = eigenstate(&a, 0)
            .unwrap()
            .add(&eigenstate(&a, 1).unwrap())
            .unwrap();
        assert_eq!(
            ray_equivalent(&eigenstate(&a, 0).unwrap(), &sum).unwrap(),
            None
        );
        assert_eq!(
            ray_equivalent(&eigenstate(&a, 1).unwrap(), &sum).unwrap(),
            None
        );
    }

    #[test]
    fn dimension_bounds() {
        assert!(StateVector::new("A", vec![PairNumber::one()]).is_err());
        assert!(StateVector::zero("A", 64).is_ok());
        assert!(StateVector::zero("A", 65).is_err());
    }
}
