//! Exact weight combinatorics for simple algebraic groups and eigenvalue
//! spectra of semisimple torus elements acting on irreducible modules.
//!
//! Eigenvalues are handled symbolically in the value group `(ℚ/ℤ) ⊕ ℤ^k`, so
//! coincidences between eigenvalues are decided exactly.

pub mod cli;
pub mod error;
pub mod mult;
pub mod rational;
pub mod rootdata;
pub mod smith;
pub mod spectra;
pub mod torus;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use mult::{WeightMultiset, VALIDITY_BANNER};
pub use spectra::{classify, spectrum, tensor_spectrum, Spectrum, SpectrumClass, SpectrumKind};
pub use rootdata::{Family, GroupType, RootDatum};
pub use torus::{generic_stratum_element, StratumSpec, TorusElement, ValueGroupElement};
pub use weights::{Dominance, LevelCache, Weight};
