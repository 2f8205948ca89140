//! The right `BV^c`-coaction on `Mo_g` and the point-extension maps.

use super::differential::mog_differential;
use super::element::{MogElement, MogMono, PushTarget};
use crate::bvalgebra::{collapse_image, AlgSum, Gen, Label, Mono, Presentation};
use crate::error::{EngineError, Result};
use crate::exactpoly::{fmt_coeff_prefix, join_terms, ExactScalar};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// An element of `Mo_g(S') ⊗ BV(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MogTensor {
    genus: u32,
    outer: BTreeSet<u32>,
    inner: Presentation,
    terms: BTreeMap<(MogMono, Mono), ExactScalar>,
}

impl MogTensor {
    /// An empty tensor with the given factors.
    pub fn zero(genus: u32, outer: BTreeSet<u32>, inner: Presentation) -> Self {
        MogTensor { genus, outer, inner, terms: BTreeMap::new() }
    }

    /// The genus of the left factor.
    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Labels of the left factor.
    pub fn outer_labels(&self) -> &BTreeSet<u32> {
        &self.outer
    }

    /// Presentation of the right factor.
    pub fn inner(&self) -> &Presentation {
        &self.inner
    }

    /// Iterates over `((left, right), coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&(MogMono, Mono), &ExactScalar)> {
        self.terms.iter()
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · x ⊗ y` for a left element `x` and a right monomial `y`.
    pub fn add_left(&mut self, x: &MogElement, y: &Mono, c: &ExactScalar) {
        for (m, v) in x.terms() {
            let key = (m.clone(), y.clone());
            let e = self.terms.entry(key.clone()).or_insert_with(ExactScalar::zero);
            *e += v * c;
            if e.is_zero() {
                self.terms.remove(&key);
            }
        }
    }

    /// The left factor of every term with the given right monomial.
    pub fn left_part(&self, y: &[Gen]) -> MogElement {
        let mut out = MogElement::zero(self.genus, self.outer.iter().copied());
        for ((m, r), c) in &self.terms {
            if r.as_slice() == y {
                out.add_mono(m.clone(), c.clone());
            }
        }
        out
    }

    /// `(d ⊗ 1)`, which is the full differential since `BV` has none.
    pub fn differential(&self) -> MogTensor {
        let mut out = MogTensor::zero(self.genus, self.outer.clone(), self.inner.clone());
        for ((m, r), c) in &self.terms {
            let mut x = MogElement::zero(self.genus, self.outer.iter().copied());
            x.add_mono(m.clone(), ExactScalar::one());
            out.add_left(&mog_differential(&x), r, c);
        }
        out
    }

    /// Renders as `left (x) right` terms.
    pub fn to_text(&self) -> String {
        let terms = self
            .terms
            .iter()
            .map(|((m, r), c)| {
                let mut x = MogElement::zero(self.genus, self.outer.iter().copied());
                x.add_mono(m.clone(), ExactScalar::one());
                let right = crate::bvalgebra::format_sum(&AlgSum::word(r));
                format!("{}({}) (x) ({})", fmt_coeff_prefix(c, true), x.to_text(), right)
            })
            .collect();
        join_terms(terms)
    }
}

impl fmt::Display for MogTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// The coaction collapsing the points of `group` to the new point `new`:
/// `Mo_g(S) → Mo_g(S∖T ∪ {new}) ⊗ BV(T)`.
///
/// Cohomology classes move to the new point, ω's and θ's inside the group
/// split as `θ_new ⊗ 1 + 1 ⊗ (generator)`, and ω's leaving the group are
/// reattached to the new point. `new` may be a member of `group` but must not
/// be one of the remaining labels.
pub fn mog_coaction(a: &MogElement, group: &[u32], new: u32) -> Result<MogTensor> {
    let set: BTreeSet<u32> = group.iter().copied().collect();
    if set.is_empty() || !set.is_subset(a.labels()) {
        return Err(EngineError::InvalidCollapse(format!(
            "collapse set {group:?} is not a nonempty subset of {:?}",
            a.labels()
        )));
    }
    let rest: BTreeSet<u32> = a.labels().difference(&set).copied().collect();
    if rest.contains(&new) {
        return Err(EngineError::InvalidArgument(format!("new label {new} is already in use")));
    }
    let outer: BTreeSet<u32> = rest.iter().copied().chain([new]).collect();
    let mut out = MogTensor::zero(a.genus(), outer.clone(), Presentation::bv(set.iter().copied()));
    // Inner symbols are relabelled out of the way of the outer ones while the
    // image is formed in one algebra, then restored.
    let shift = outer.iter().chain(set.iter()).max().copied().unwrap_or(0) + 1;
    let shifted: BTreeSet<u32> = set.iter().map(|p| p + shift).collect();
    let image_of = collapse_image(&shifted, new);
    let to_shifted = |g: Gen| -> Gen {
        let s = |p: u32| if set.contains(&p) { p + shift } else { p };
        match g {
            Gen::T(p) => Gen::T(s(p)),
            Gen::W { hi, lo } => {
                let lo = match lo {
                    Label::Pt(l) => Label::Pt(s(l)),
                    other => other,
                };
                Gen::omega(Label::Pt(s(hi)), lo).expect("relabelling keeps generators valid")
            }
        }
    };
    let is_inner = |g: Gen| match g {
        Gen::T(x) => shifted.contains(&x),
        Gen::W { hi, lo } => shifted.contains(&hi) && lo.point().is_some_and(|l| shifted.contains(&l)),
    };
    let unshift = |g: Gen| -> Gen {
        match g {
            Gen::T(p) => Gen::T(p - shift),
            Gen::W { hi, lo: Label::Pt(l) } => Gen::w(hi - shift, l - shift),
            other => other,
        }
    };
    for (m, c) in a.terms() {
        let h: Vec<_> = m.h.iter().map(|&(p, cl)| (if set.contains(&p) { new } else { p }, cl)).collect();
        let word: Vec<Gen> = m.bv.iter().map(|&g| to_shifted(g)).collect();
        let image = AlgSum::word(&word).map_hom(&image_of);
        for (mono, v) in image.terms() {
            let mut left = Vec::new();
            let mut right = Vec::new();
            let mut odd = false;
            for g in mono {
                if is_inner(*g) {
                    right.push(unshift(*g));
                } else {
                    odd ^= right.len() % 2 == 1;
                    left.push(*g);
                }
            }
            let coeff = if odd { -(c * v) } else { c * v };
            let mut x = MogElement::zero(a.genus(), outer.iter().copied());
            x.add_pushed(&h, &left, coeff, PushTarget::Min);
            right.sort();
            out.add_left(&x, &right, &ExactScalar::one());
        }
    }
    Ok(out)
}

/// The inclusion `Mo_g(S) → Mo_g(S ∪ N)` adding points that carry nothing.
pub fn extend_points(a: &MogElement, new_labels: &[u32]) -> Result<MogElement> {
    if let Some(p) = new_labels.iter().find(|p| a.labels().contains(p)) {
        return Err(EngineError::InvalidArgument(format!("label {p} already present")));
    }
    let labels = a.labels().iter().chain(new_labels).copied();
    let mut out = MogElement::zero(a.genus(), labels);
    for (m, c) in a.terms() {
        out.add_mono(m.clone(), c.clone());
    }
    Ok(out)
}
