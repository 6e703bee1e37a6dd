//! The pair-number field, the sign-rule elimination that singles it out,
//! and von Neumann ordinals.

pub mod ansatz;
pub mod linalg;
pub mod ordinal;
pub mod pair;
pub mod verify;

pub use ansatz::{ansatz_search, CandidateAlgebra, DeltaForm, SignAssignment, SurvivorReport};
pub use ordinal::{ordinal_encode, OrdinalSet, MAX_ORDINAL};
pub use pair::{Field, Involution, PairNumber};
pub use verify::algebra_verify;
