//! Exact rational scalars and polynomial differential forms on products of
//! simplices: wedge product, exterior derivative, face restriction and
//! integration along simplicial forgetful maps.

mod form;
mod scalar;

pub use form::{
    exterior_d, face_images, face_shape, fiber_integrate, restrict_face, wedge, FaceSpec, PolyForm, SimplexShape,
    TermKey, VarBound, VarImage,
};
pub(crate) use scalar::{fmt_coeff_prefix, join_terms, parse_coeff_and_factors, split_terms};
pub use scalar::{fmt_scalar, parse_scalar, q, qi, sign_of, ExactScalar};
