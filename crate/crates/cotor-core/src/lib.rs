//! Exact homological algebra for graded comodules over finite-type graded
//! bialgebras over prime fields.
//!
//! The crate computes, degreewise and with exact `F_p` arithmetic:
//!
//! * cotensor products `L □_Γ N` and comodule primitives,
//! * `Cotor^{s,d}_Γ(L, M)` through reduced cobar complexes,
//! * the primitive filtration and primitive grading of a comodule,
//! * the Künneth spectral sequence `E_1^{s,t} = Cotor^s(L,M) ⊗ N^t
//!   ⇒ Cotor^s(L, M⊗N)` of a filtered cobar complex, including page-by-page
//!   differentials and E∞ reassembly,
//! * the four equivalent Künneth criteria for `Cotor^0` together with failure
//!   witnesses, and their graded generalization,
//! * the classical comodules `H_*(X; F_p)` over truncations of the dual
//!   Steenrod algebra for `X ∈ {BP, BP⟨n⟩, ku, ko, tmf, S^0}` and the
//!   smash-product criteria for the Adams 0-line.
//!
//! Every object carries an explicit degree window on which its data is
//! certified; operations intersect windows and refuse to fabricate values
//! outside them. All arithmetic is exact; there is no floating point in the
//! crate.
//!
//! The crate is `no_std` (with `alloc`). IO, the CLI and file formats live in
//! the companion crate `cotor-cli`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bialgebra;
pub mod cobar;
pub mod comodule;
pub mod cotensor;
pub mod error;
pub mod field;
pub mod graded;
pub mod kss;
pub mod kunneth;
pub mod matrix;
pub mod milnor;
pub mod primfilt;
pub mod steenrod;
#[cfg(feature = "testutil")]
pub mod testutil;

pub use bialgebra::{AxiomReport, BialgebraPresentation, SignConvention};
pub use comodule::{Comodule, ComoduleMap, Side};
pub use cotensor::CotensorResult;
pub use error::Error;
pub use field::Prime;
pub use graded::{DegreeWindow, GradedMap, GradedSpace};
pub use matrix::Matrix;
pub use primfilt::{FiltrationVerdict, PrimitiveFiltration};
