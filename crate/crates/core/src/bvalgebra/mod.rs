//! Presented graded-commutative algebras of Arnold type: `BV(S)`, the
//! cylinder algebra `BVC(S)` and the bulk algebra `BVGG(g, S)`, with normal
//! forms, cocompositions, marked-point coactions, the involution `I` and the
//! boundary operators `∂`.

mod coaction;
mod label;
mod mono;
mod presentation;
mod text;

pub use coaction::{
    boundary, boundary_sum, coact_marked, cobracket_projection, cocompose, cocompose_at_marked,
    cocompose_at_marked_group, collapse_image, infinity_image, involution, involution_image, marked_image, merge_image,
    rename_image, AlgTensor, Target,
};
pub use label::{Gen, Label};
pub use mono::{reduce_word, reduce_word_with, sort_word, AlgSum, Mono};
pub use presentation::{basis, multiply, normal_form, AlgElement, Presentation, PresentationKind};
pub use text::{format_sum, parse_gen, parse_sum};
