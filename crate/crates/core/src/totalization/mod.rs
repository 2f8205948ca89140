//! The totalization model: strata, stratified (algebra ⊗ form) elements,
//! continuity across faces, differential and product, the coaction,
//! boundary operators, the combinatorial fiber integral and the Stokes
//! defect.

mod element;
mod operations;
mod stratum;
mod value;

pub use element::StratifiedElement;
pub use operations::{
    check_continuity, counit_part, describe_face, stokes_defect, total_boundary, total_coaction, total_fiber_integrate,
    ContinuityReport, FaceViolation, TotalTensor, FIBER_PAIR_SIGN, STOKES_BOUNDARY_SIGN, STOKES_SIGN,
};
pub use stratum::{enumerate_strata, EndRule, FaceMove, Geometry, Location, Stratum};
pub use value::StratumValue;

/// The total differential of a stratified element.
pub fn total_d(a: &StratifiedElement) -> StratifiedElement {
    a.differential()
}

/// The graded product of two stratified elements.
pub fn total_wedge(a: &StratifiedElement, b: &StratifiedElement) -> crate::Result<StratifiedElement> {
    a.wedge(b)
}
