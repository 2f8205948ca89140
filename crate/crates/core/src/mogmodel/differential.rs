//! The differential of `Mo_g(S)`.
//!
//! `d` vanishes on cohomology classes and is determined on generators by
//! `dω_{ij} = Δ_{ij}` and `dθ_i = (2−2g)ν_i`, where
//! `Δ = ν⊗1 + 1⊗ν − Σ_k (a^k⊗b^k − b^k⊗a^k)` is the diagonal class of the
//! surface written in the basis with `a^k b^k = ν`. (With this product
//! convention the relative sign between the two mixed terms is the one that
//! makes `x_i Δ_{ij} = x_j Δ_{ij}` hold, so that `d` preserves the relations.)

use super::element::{mono_factors, Factor, HClass, MogElement, PushTarget};
use crate::bvalgebra::{Gen, Label};
use crate::exactpoly::{qi, ExactScalar};
use num_traits::Zero;

/// The image of a generator under `d`, as signed products of classes.
pub fn generator_differential(genus: u32, g: Gen) -> Vec<(ExactScalar, Vec<Factor>)> {
    match g {
        Gen::T(p) => {
            let c = qi(2 - 2 * genus as i64);
            if c.is_zero() {
                vec![]
            } else {
                vec![(c, vec![Factor::H(p, HClass::Nu)])]
            }
        }
        Gen::W { hi: j, lo: Label::Pt(i) } => diagonal(genus, i, j),
        Gen::W { .. } => vec![],
    }
}

/// The diagonal class `Δ_{ij}` as signed products of classes.
pub fn diagonal(genus: u32, i: u32, j: u32) -> Vec<(ExactScalar, Vec<Factor>)> {
    let mut out = vec![(qi(1), vec![Factor::H(i, HClass::Nu)]), (qi(1), vec![Factor::H(j, HClass::Nu)])];
    for k in 1..=genus as u8 {
        out.push((qi(-1), vec![Factor::H(i, HClass::A(k)), Factor::H(j, HClass::B(k))]));
        out.push((qi(1), vec![Factor::H(i, HClass::B(k)), Factor::H(j, HClass::A(k))]));
    }
    out
}

pub(crate) fn differential_with(a: &MogElement, target: PushTarget) -> MogElement {
    let mut out = MogElement::zero(a.genus(), a.labels().iter().copied());
    for (m, c) in a.terms() {
        let factors: Vec<Factor> = mono_factors(m).collect();
        let mut before = 0usize;
        for (pos, f) in factors.iter().enumerate() {
            if let Factor::G(g) = f {
                let sign = if before % 2 == 1 { -c.clone() } else { c.clone() };
                for (coef, image) in generator_differential(a.genus(), *g) {
                    let mut word = factors[..pos].to_vec();
                    word.extend(image);
                    word.extend_from_slice(&factors[pos + 1..]);
                    out.add_product_unchecked(&word, &sign * coef, target);
                }
            }
            before += match f {
                Factor::H(_, cl) => cl.degree(),
                Factor::G(_) => 1,
            };
        }
    }
    out
}

/// The differential of `Mo_g(S)`: a degree-one derivation with `d² = 0`.
pub fn mog_differential(a: &MogElement) -> MogElement {
    differential_with(a, PushTarget::Min)
}
