//! Constructions of bent functions and bent idempotents over GF(2^(2m)),
//! together with exact verification through full Walsh–Hadamard spectra.

pub mod boolfun;
pub mod constructions;
pub mod error;
pub mod gf2n;
mod linalg;
pub mod multipoly;
pub mod sampling;
pub mod specfile;
pub mod verify;

pub use boolfun::{Domain, DualityClass, TruthTable, WalshSpectrum};
pub use constructions::{ConstructedPair, Decomposition, Family};
pub use error::{Error, Result};
pub use gf2n::{FieldElem, FieldSpec, SubfieldView};
pub use linalg::BitMatrix;
pub use multipoly::{FourierCoeffs, ReducedPoly};
pub use specfile::ConstructionSpec;
pub use verify::{Expectation, VerificationReport};
