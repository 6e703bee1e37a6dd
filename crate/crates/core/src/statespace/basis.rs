use serde::{Deserialize, Deserializer, Serialize};

use super::instrument::InstrumentId;
use super::vector::StateVector;
use crate::error::{Error, Result};
use crate::numeric::linalg::{self, Matrix};
use crate::numeric::PairNumber;

/// Invertible `D×D` matrix carrying coordinates in `from` to coordinates
/// in `to`: `coords_to = matrix · coords_from`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisChange {
    from: InstrumentId,
    to: InstrumentId,
    matrix: Matrix<PairNumber>,
}

impl BasisChange {
    pub fn new(
        from: impl Into<InstrumentId>,
        to: impl Into<InstrumentId>,
        matrix: Matrix<PairNumber>,
    ) -> Result<Self> {
        let (from, to) = (from.into(), to.into());
        if matrix.len() < 2 {
            return Err(Error::InvalidDimension(matrix.len()));
        }
        if !linalg::is_square(&matrix) {
            return Err(Error::InvalidParameter(format!(
                "basis change {from} -> {to}: matrix is not square"
            )));
        }
        if linalg::determinant(&matrix).is_zero() {
            return Err(Error::SingularMatrix {
                from: from.to_string(),
                to: to.to_string(),
            });
        }
        Ok(BasisChange { from, to, matrix })
    }

    pub fn identity(
        from: impl Into<InstrumentId>,
        to: impl Into<InstrumentId>,
        dimension: usize,
    ) -> Result<Self> {
        BasisChange::new(from, to, linalg::identity(dimension))
    }

    pub fn from_id(&self) -> &InstrumentId {
        &self.from
    }

    pub fn to_id(&self) -> &InstrumentId {
        &self.to
    }

    pub fn matrix(&self) -> &Matrix<PairNumber> {
        &self.matrix
    }

    pub fn dimension(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        if v.basis() != &self.from {
            return Err(Error::BasisMismatch {
                from: v.basis().to_string(),
                to: self.from.to_string(),
            });
        }
        if v.dimension() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                got: v.dimension(),
            });
        }
        StateVector::new(self.to.clone(), linalg::mat_vec(&self.matrix, v.coords()))
    }

    pub fn inverse(&self) -> BasisChange {
        BasisChange {
            from: self.to.clone(),
            to: self.from.clone(),
            matrix: linalg::inverse(&self.matrix).expect("validated as nonsingular"),
        }
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &BasisChange) -> Result<BasisChange> {
        if other.from != self.to {
            return Err(Error::BasisMismatch {
                from: self.to.to_string(),
                to: other.from.to_string(),
            });
        }
        Ok(BasisChange {
            from: self.from.clone(),
            to: other.to.clone(),
            matrix: linalg::mat_mul(&other.matrix, &self.matrix),
        })
    }
}

impl<'de> Deserialize<'de> for BasisChange {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            from: InstrumentId,
            to: InstrumentId,
            matrix: Matrix<PairNumber>,
        }
        let r = Repr::deserialize(d)?;
        BasisChange::new(r.from, r.to, r.matrix).map_err(serde::de::Error::custom)
    }
}
