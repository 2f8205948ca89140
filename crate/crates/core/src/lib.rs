//! Exact symbolic engine for the combinatorial model of configuration spaces
//! of framed points on oriented surfaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactpoly`] — exact rationals and polynomial forms on products of simplices;
//! * [`bvalgebra`] — presented graded-commutative algebras of Arnold type and
//!   their cocompositions;
//! * [`graphkernel`] — decorated graphs, canonical forms, differential and coaction;
//! * [`mogmodel`] — the small model and its exact cohomology;
//! * [`totalization`] — stratified (algebra ⊗ form) elements, continuity,
//!   fiber integration and the Stokes defect;
//! * [`feynman`] — the Feynman-rule maps and partition-function evaluation.

pub mod bvalgebra;
pub mod error;
pub mod exactpoly;
pub mod feynman;
pub mod graphkernel;
pub mod mogmodel;
pub mod totalization;

pub use bvalgebra::{AlgElement, AlgSum, Gen, Label, Presentation};
pub use error::{EngineError, Result};
pub use exactpoly::{ExactScalar, FaceSpec, PolyForm, SimplexShape};
