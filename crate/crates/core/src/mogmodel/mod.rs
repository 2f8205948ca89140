//! The small model `Mo_g(S)`: cohomology of the surface at each point
//! tensored with `BV(S)`, modulo the relations that let classes slide along
//! ω's; its differential, the `BV^c`-coaction, point extension and exact
//! Betti numbers.

mod coaction;
mod cohomology;
mod differential;
mod element;
pub mod linalg;

pub use coaction::{extend_points, mog_coaction, MogTensor};
pub use cohomology::{cohomology_ranks, cohomology_with, mog_basis, CohomologyReport};
pub use differential::{diagonal, generator_differential, mog_differential};
pub use element::{cluster_roots, mog_normal_form, mono_factors, Factor, HClass, MogElement, MogMono, PushTarget};
