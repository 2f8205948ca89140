//! Cocompositions, marked-point coactions, the involution `I` and the
//! boundary operators `∂`.
//!
//! Every structure map is an algebra homomorphism, so it is specified by its
//! values on generators; the `*_image` functions return those generator
//! images and are shared with the stratified model. Tensor products are
//! realized inside the unified algebra (the factors use disjoint generator
//! sets), and [`AlgTensor`] splits a unified sum back into its two factors.

use super::label::{Gen, Label};
use super::mono::{AlgSum, Mono};
use super::presentation::{AlgElement, Presentation, PresentationKind};
use crate::error::{EngineError, Result};
use crate::exactpoly::{qi, ExactScalar};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Where a point (or group of points) goes in a cocomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    /// Collision with another ordinary point.
    Point(u32),
    /// The end `*` of a cylinder.
    Star,
    /// The marked point `⎵h`: the `t = 0` end of handle `h`.
    Under(u8),
    /// The marked point `‾h`: the `t = 1` end of handle `h ≥ 2`.
    Over(u8),
    /// The point at infinity: the `t = 1` end of handle 1.
    Infinity,
}

/// Generator images of the cocomposition collapsing `group` to the new point `new`.
///
/// `ω_{jk}` with `j, k ∈ group` maps to `θ_new + ω_{jk}`, `θ_j` to `θ_new + θ_j`,
/// and any other generator touching the group is relabelled to `new`.
pub fn collapse_image(group: &BTreeSet<u32>, new: u32) -> impl Fn(Gen) -> AlgSum + '_ {
    move |g| {
        let inside = |l: Label| l.point().is_some_and(|p| group.contains(&p));
        match g {
            Gen::T(p) if group.contains(&p) => AlgSum::gen(Gen::T(new)).add(&AlgSum::gen(g)),
            Gen::W { hi, lo } if group.contains(&hi) && inside(lo) => AlgSum::gen(Gen::T(new)).add(&AlgSum::gen(g)),
            Gen::W { hi, lo } if group.contains(&hi) => AlgSum::omega(Label::Pt(new), lo),
            Gen::W { hi, lo } if inside(lo) => AlgSum::omega(Label::Pt(hi), Label::Pt(new)),
            _ => AlgSum::gen(g),
        }
    }
}

/// Generator images for the group approaching the marked label `m`.
///
/// `ω_{am} ↦ ω_{*a}`, `ω_{ax} ↦ ω_{mx}` for `x ∉ group` (zero when `x` is
/// itself marked), generators inside the group are unchanged.
pub fn marked_image(group: &BTreeSet<u32>, m: Label) -> impl Fn(Gen) -> AlgSum + '_ {
    move |g| {
        let inside = |l: Label| l.point().is_some_and(|p| group.contains(&p));
        match g {
            Gen::W { hi, lo } => {
                let (a, x) = match (group.contains(&hi), inside(lo)) {
                    (true, true) | (false, false) => return AlgSum::gen(g),
                    (true, false) => (hi, lo),
                    (false, true) => (lo.point().unwrap(), Label::Pt(hi)),
                };
                if x == m {
                    AlgSum::gen(Gen::star(a))
                } else {
                    AlgSum::omega(m, x)
                }
            }
            Gen::T(_) => AlgSum::gen(g),
        }
    }
}

/// Generator images for the group approaching the point at infinity:
/// `ω_{ax} ↦ ω_{*a}` for every `x ∉ group`.
pub fn infinity_image(group: &BTreeSet<u32>) -> impl Fn(Gen) -> AlgSum + '_ {
    move |g| {
        let inside = |l: Label| l.point().is_some_and(|p| group.contains(&p));
        match g {
            Gen::W { hi, lo } => match (group.contains(&hi), inside(lo)) {
                (true, false) => AlgSum::gen(Gen::star(hi)),
                (false, true) => AlgSum::gen(Gen::star(lo.point().unwrap())),
                _ => AlgSum::gen(g),
            },
            Gen::T(_) => AlgSum::gen(g),
        }
    }
}

/// Generator images of the involution `I` on the cylinder factor of `group`:
/// `ω_{*i} ↦ −ω_{*i}`, `ω_{ij} ↦ ω_{ij} − ω_{*i} − ω_{*j}`, `θ_i ↦ θ_i − 2ω_{*i}`.
pub fn involution_image(group: &BTreeSet<u32>) -> impl Fn(Gen) -> AlgSum + '_ {
    move |g| match g {
        Gen::W { hi, lo: Label::Star } if group.contains(&hi) => AlgSum::gen(g).neg(),
        Gen::W { hi, lo: Label::Pt(lo) } if group.contains(&hi) && group.contains(&lo) => {
            AlgSum::gen(g).sub(&AlgSum::gen(Gen::star(hi))).sub(&AlgSum::gen(Gen::star(lo)))
        }
        Gen::T(p) if group.contains(&p) => AlgSum::gen(g).sub(&AlgSum::gen(Gen::star(p)).scale(&qi(2))),
        _ => AlgSum::gen(g),
    }
}

/// Generator images when the cylinder packet `lower ∪ upper` splits into
/// `lower` followed by `upper`: `ω_{ab} ↦ ω_{*a}` for `a ∈ lower`, `b ∈ upper`.
pub fn merge_image<'a>(lower: &'a BTreeSet<u32>, upper: &'a BTreeSet<u32>) -> impl Fn(Gen) -> AlgSum + 'a {
    move |g| match g {
        Gen::W { hi, lo: Label::Pt(lo) } if lower.contains(&hi) && upper.contains(&lo) => AlgSum::gen(Gen::star(hi)),
        Gen::W { hi, lo: Label::Pt(lo) } if lower.contains(&lo) && upper.contains(&hi) => AlgSum::gen(Gen::star(lo)),
        _ => AlgSum::gen(g),
    }
}

/// Renames the point `from` to `to`.
pub fn rename_image(from: u32, to: Label) -> impl Fn(Gen) -> AlgSum {
    move |g| g.rename(from, to).map(AlgSum::gen).unwrap_or_default()
}

/// Applies the marked-point coaction of `group` towards `target` (one of the
/// non-point targets) to a unified sum, including the involution at the
/// `t = 1` end of handles `h ≥ 2`.
pub fn coact_marked(a: &AlgSum, group: &BTreeSet<u32>, target: Target) -> AlgSum {
    match target {
        Target::Point(_) => panic!("coact_marked needs a non-point target"),
        Target::Star => a.map_hom(&marked_image(group, Label::Star)),
        Target::Under(h) => a.map_hom(&marked_image(group, Label::Under(h))),
        Target::Over(h) => a.map_hom(&marked_image(group, Label::Over(h))).map_hom(&involution_image(group)),
        Target::Infinity => a.map_hom(&infinity_image(group)),
    }
}

/// An element of a tensor product of two presented algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgTensor {
    left: Presentation,
    right: Presentation,
    terms: BTreeMap<(Mono, Mono), ExactScalar>,
}

impl AlgTensor {
    /// Splits a unified sum: generators satisfying `is_left` form the left factor.
    pub fn split(left: Presentation, right: Presentation, a: &AlgSum, is_left: impl Fn(Gen) -> bool) -> Self {
        let mut terms: BTreeMap<(Mono, Mono), ExactScalar> = BTreeMap::new();
        for (m, c) in a.terms() {
            let mut l = Vec::new();
            let mut r = Vec::new();
            let mut odd = false;
            for g in m {
                if is_left(*g) {
                    // moving g to the left past all right generators seen so far
                    odd ^= r.len() % 2 == 1;
                    l.push(*g);
                } else {
                    r.push(*g);
                }
            }
            let e = terms.entry((l, r)).or_insert_with(ExactScalar::zero);
            *e += if odd { -c.clone() } else { c.clone() };
        }
        terms.retain(|_, c| !c.is_zero());
        AlgTensor { left, right, terms }
    }

    /// The presentation of the left factor.
    pub fn left(&self) -> &Presentation {
        &self.left
    }

    /// The presentation of the right factor.
    pub fn right(&self) -> &Presentation {
        &self.right
    }

    /// Iterates over `((left, right), coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&(Mono, Mono), &ExactScalar)> {
        self.terms.iter()
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `l ⊗ r`.
    pub fn coeff(&self, l: &[Gen], r: &[Gen]) -> ExactScalar {
        self.terms.get(&(l.to_vec(), r.to_vec())).cloned().unwrap_or_else(ExactScalar::zero)
    }
}

impl fmt::Display for AlgTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |m: &Mono| {
            if m.is_empty() {
                "1".to_string()
            } else {
                m.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("*")
            }
        };
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|((l, r), c)| format!("{}({} ⊗ {})", crate::exactpoly::fmt_coeff_prefix(c, true), side(l), side(r)))
            .collect();
        f.write_str(&crate::exactpoly::join_terms(terms))
    }
}

fn group_of(p: &Presentation, group: &[u32]) -> Result<BTreeSet<u32>> {
    let set: BTreeSet<u32> = group.iter().copied().collect();
    if set.is_empty() || !set.is_subset(p.labels()) {
        return Err(EngineError::UnknownLabel(format!("{group:?} is not a nonempty subset of the labels of {p}")));
    }
    Ok(set)
}

fn check_target(p: &Presentation, target: Target) -> Result<()> {
    let ok = match target {
        Target::Point(_) => false,
        Target::Infinity => true,
        Target::Star => p.kind() == PresentationKind::Bvc,
        Target::Under(h) => p.kind() == PresentationKind::Bvgg && (1..=p.genus()).contains(&(h as u32)),
        Target::Over(h) => p.kind() == PresentationKind::Bvgg && (2..=p.genus()).contains(&(h as u32)),
    };
    if ok {
        Ok(())
    } else {
        Err(EngineError::InvalidArgument(format!("invalid target {target:?} for {p}")))
    }
}

/// The cocomposition collapsing `group` to the new point `new`:
/// returns (outer factor on `(S ∖ group) ∪ {new}`) ⊗ (inner factor on `group`).
pub fn cocompose(a: &AlgElement, group: &[u32], new: u32) -> Result<AlgTensor> {
    let p = a.presentation();
    let set = group_of(p, group)?;
    if p.labels().contains(&new) {
        return Err(EngineError::InvalidArgument(format!("new label {new} already used in {p}")));
    }
    let image = a.sum().map_hom(&collapse_image(&set, new));
    let outer = p.with_labels(p.labels().difference(&set).copied().chain([new]));
    let inner = Presentation::bv(set.iter().copied());
    let is_inner = |g: Gen| match g {
        Gen::T(x) => set.contains(&x),
        Gen::W { hi, lo } => set.contains(&hi) && lo.point().is_some_and(|l| set.contains(&l)),
    };
    Ok(AlgTensor::split(outer, inner, &image, |g| !is_inner(g)))
}

/// The coaction extracting the cylinder factor of `group` approaching a
/// marked point, `*`, or `∞`: returns `BVC(group) ⊗ (rest)`.
///
/// At the `t = 1` end of a handle `h ≥ 2` the involution is applied to the
/// cylinder factor.
pub fn cocompose_at_marked_group(a: &AlgElement, group: &[u32], target: Target) -> Result<AlgTensor> {
    let p = a.presentation();
    let set = group_of(p, group)?;
    check_target(p, target)?;
    let image = coact_marked(a.sum(), &set, target);
    let left = Presentation::bvc(set.iter().copied());
    let right = p.with_labels(p.labels().difference(&set).copied());
    Ok(AlgTensor::split(left, right, &image, |g| g.labels().0.point().is_some_and(|x| set.contains(&x))))
}

/// The coaction for a single point approaching a marked point, `*`, or `∞`.
pub fn cocompose_at_marked(a: &AlgElement, point: u32, target: Target) -> Result<AlgTensor> {
    cocompose_at_marked_group(a, &[point], target)
}

/// Projection `BVC({i}) → Q` onto the cobracket cogenerator `ω_{*i}`.
pub fn cobracket_projection(a: &AlgElement) -> Result<ExactScalar> {
    let p = a.presentation();
    if p.kind() != PresentationKind::Bvc || p.labels().len() != 1 {
        return Err(EngineError::PresentationMismatch(format!("cobracket projection needs BVC of one label, got {p}")));
    }
    let i = *p.labels().iter().next().unwrap();
    Ok(a.sum().coeff(&[Gen::star(i)]))
}

/// The involution `I` of `BVC(S)`.
pub fn involution(a: &AlgElement) -> Result<AlgElement> {
    let p = a.presentation();
    if p.kind() != PresentationKind::Bvc {
        return Err(EngineError::PresentationMismatch(format!("involution needs BVC, got {p}")));
    }
    AlgElement::new(p.clone(), a.sum().map_hom(&involution_image(p.labels())))
}

/// `∂_{ij}` on a unified sum: point `i` collides with `target`, the result
/// is projected onto the cobracket cogenerator placed in front.
///
/// For a point target `j` the merged point keeps the label `j`.
pub fn boundary_sum(a: &AlgSum, i: u32, target: Target) -> AlgSum {
    match target {
        Target::Point(j) => {
            let group: BTreeSet<u32> = [i, j].into_iter().collect();
            let fresh = u32::MAX;
            let image = a.map_hom(&collapse_image(&group, fresh));
            let w = Gen::w(i, j);
            let kept = image.filter(|m| !m.contains(&Gen::T(i)) && !m.contains(&Gen::T(j)));
            kept.strip_front(w).map_hom(&rename_image(fresh, Label::Pt(j)))
        }
        _ => {
            let group: BTreeSet<u32> = [i].into_iter().collect();
            let image = coact_marked(a, &group, target);
            image.filter(|m| !m.contains(&Gen::T(i))).strip_front(Gen::star(i))
        }
    }
}

/// The boundary operator `∂_{i,target}` of degree −1.
pub fn boundary(a: &AlgElement, i: u32, target: Target) -> Result<AlgElement> {
    let p = a.presentation();
    if !p.labels().contains(&i) {
        return Err(EngineError::UnknownLabel(format!("{i} not a label of {p}")));
    }
    match target {
        Target::Point(j) if j == i || !p.labels().contains(&j) => {
            return Err(EngineError::UnknownLabel(format!("invalid collision partner {j} for {i} in {p}")));
        }
        Target::Point(_) => {}
        t => check_target(p, t)?,
    }
    let rest = p.with_labels(p.labels().iter().copied().filter(|&x| x != i));
    AlgElement::new(rest, boundary_sum(a.sum(), i, target))
}
