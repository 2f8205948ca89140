//! Presentations `BV(S)`, `BVC(S)`, `BVGG(g, S)` and their elements.

use super::label::{Gen, Label};
use super::mono::{reduce_word, AlgSum, Mono};
use crate::error::{EngineError, Result};
use crate::exactpoly::ExactScalar;
use num_traits::One;
use std::collections::BTreeSet;
use std::fmt;

/// Which presented algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PresentationKind {
    /// `BV(S)`: generators `ω_{ij}`, `θ_i` with the Arnold relations.
    Bv,
    /// `BVC(S)`: additionally `ω_{*i}` (configurations on a cylinder).
    Bvc,
    /// `BVGG(g, S)`: additionally `ω_{i⎵h}` (`1 ≤ h ≤ g`) and `ω_{i‾h}` (`2 ≤ h ≤ g`).
    Bvgg,
}

/// A presented graded-commutative algebra on a finite set of point labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Presentation {
    kind: PresentationKind,
    labels: BTreeSet<u32>,
    genus: u32,
}

impl Presentation {
    /// `BV(S)`.
    pub fn bv(labels: impl IntoIterator<Item = u32>) -> Self {
        Presentation { kind: PresentationKind::Bv, labels: labels.into_iter().collect(), genus: 0 }
    }

    /// `BVC(S)`.
    pub fn bvc(labels: impl IntoIterator<Item = u32>) -> Self {
        Presentation { kind: PresentationKind::Bvc, labels: labels.into_iter().collect(), genus: 0 }
    }

    /// `BVGG(g, S)`.
    pub fn bvgg(genus: u32, labels: impl IntoIterator<Item = u32>) -> Self {
        Presentation { kind: PresentationKind::Bvgg, labels: labels.into_iter().collect(), genus }
    }

    /// Same kind and genus on a different label set.
    pub fn with_labels(&self, labels: impl IntoIterator<Item = u32>) -> Self {
        Presentation { kind: self.kind, labels: labels.into_iter().collect(), genus: self.genus }
    }

    /// The kind of algebra.
    pub fn kind(&self) -> PresentationKind {
        self.kind
    }

    /// The ordinary point labels.
    pub fn labels(&self) -> &BTreeSet<u32> {
        &self.labels
    }

    /// The genus (`0` unless the kind is `BVGG`).
    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// The non-point labels that may pair with points, in increasing order.
    pub fn special_labels(&self) -> Vec<Label> {
        match self.kind {
            PresentationKind::Bv => vec![],
            PresentationKind::Bvc => vec![Label::Star],
            PresentationKind::Bvgg => {
                let mut v: Vec<Label> = (1..=self.genus).map(|h| Label::Under(h as u8)).collect();
                v.extend((2..=self.genus).map(|h| Label::Over(h as u8)));
                v
            }
        }
    }

    /// True if `l` is a label of this presentation.
    pub fn has_label(&self, l: Label) -> bool {
        match l {
            Label::Pt(p) => self.labels.contains(&p),
            other => self.special_labels().contains(&other),
        }
    }

    /// True if the generator belongs to this presentation.
    pub fn allows(&self, g: Gen) -> bool {
        match g {
            Gen::T(p) => self.labels.contains(&p),
            Gen::W { hi, lo } => self.labels.contains(&hi) && self.has_label(lo),
        }
    }

    /// Checks that every generator of `a` belongs to this presentation.
    pub fn check(&self, a: &AlgSum) -> Result<()> {
        for g in a.generators() {
            if !self.allows(g) {
                return Err(EngineError::UnknownLabel(format!("generator {g} not in {self}")));
            }
        }
        Ok(())
    }

    /// All normal-form monomials of the given degree.
    pub fn basis(&self, degree: usize) -> Vec<Mono> {
        let mut out = Vec::new();
        let points: Vec<u32> = self.labels.iter().copied().collect();
        let specials = self.special_labels();
        // Per point: optional θ, and at most one ω with this point as upper index.
        fn rec(
            idx: usize,
            points: &[u32],
            specials: &[Label],
            remaining: usize,
            cur: &mut Vec<Gen>,
            out: &mut Vec<Mono>,
        ) {
            if idx == points.len() {
                if remaining == 0 {
                    let mut m = cur.clone();
                    m.sort();
                    out.push(m);
                }
                return;
            }
            let k = points[idx];
            let mut lows: Vec<Option<Label>> = vec![None];
            lows.extend(specials.iter().map(|l| Some(*l)));
            lows.extend(points[..idx].iter().map(|p| Some(Label::Pt(*p))));
            for theta in [false, true] {
                for lo in &lows {
                    let used = theta as usize + lo.is_some() as usize;
                    if used > remaining {
                        continue;
                    }
                    let n = cur.len();
                    if theta {
                        cur.push(Gen::T(k));
                    }
                    if let Some(lo) = lo {
                        cur.push(Gen::W { hi: k, lo: *lo });
                    }
                    rec(idx + 1, points, specials, remaining - used, cur, out);
                    cur.truncate(n);
                }
            }
        }
        rec(0, &points, &specials, degree, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Graded dimensions `dim_0, dim_1, …` up to the top nonzero degree.
    pub fn poincare(&self) -> Vec<usize> {
        let mut dims: Vec<usize> = (0..=2 * self.labels.len()).map(|d| self.basis(d).len()).collect();
        while dims.len() > 1 && dims.last() == Some(&0) {
            dims.pop();
        }
        dims
    }

    /// Normal form of a product of generators, validated against the presentation.
    pub fn normal_form(&self, word: &[Gen]) -> Result<AlgElement> {
        for g in word {
            if !self.allows(*g) {
                return Err(EngineError::UnknownLabel(format!("generator {g} not in {self}")));
            }
        }
        let mut s = AlgSum::zero();
        reduce_word(word.to_vec(), ExactScalar::one(), &mut s);
        Ok(AlgElement { presentation: self.clone(), terms: s })
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        match self.kind {
            PresentationKind::Bv => write!(f, "BV({{{}}})", labels.join(",")),
            PresentationKind::Bvc => write!(f, "BVC({{{}}})", labels.join(",")),
            PresentationKind::Bvgg => write!(f, "BVGG({}, {{{}}})", self.genus, labels.join(",")),
        }
    }
}

/// An element of a presented algebra, stored in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgElement {
    presentation: Presentation,
    terms: AlgSum,
}

impl AlgElement {
    /// Wraps a normal-form sum, checking that it lies in the presentation.
    pub fn new(presentation: Presentation, terms: AlgSum) -> Result<Self> {
        presentation.check(&terms)?;
        Ok(AlgElement { presentation, terms })
    }

    /// The zero element.
    pub fn zero(presentation: Presentation) -> Self {
        AlgElement { presentation, terms: AlgSum::zero() }
    }

    /// The unit.
    pub fn one(presentation: Presentation) -> Self {
        AlgElement { presentation, terms: AlgSum::one() }
    }

    /// A single generator.
    pub fn gen(presentation: Presentation, g: Gen) -> Result<Self> {
        Self::new(presentation, AlgSum::gen(g))
    }

    /// The presentation.
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// The underlying normal-form sum.
    pub fn sum(&self) -> &AlgSum {
        &self.terms
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    fn same(&self, other: &AlgElement) -> Result<()> {
        if self.presentation != other.presentation {
            return Err(EngineError::PresentationMismatch(format!("{} vs {}", self.presentation, other.presentation)));
        }
        Ok(())
    }

    /// Product in the algebra.
    pub fn multiply(&self, other: &AlgElement) -> Result<AlgElement> {
        self.same(other)?;
        Ok(AlgElement { presentation: self.presentation.clone(), terms: self.terms.mul(&other.terms) })
    }

    /// Sum in the algebra.
    pub fn add(&self, other: &AlgElement) -> Result<AlgElement> {
        self.same(other)?;
        Ok(AlgElement { presentation: self.presentation.clone(), terms: self.terms.add(&other.terms) })
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &ExactScalar) -> AlgElement {
        AlgElement { presentation: self.presentation.clone(), terms: self.terms.scale(c) }
    }
}

/// Product of two elements of the same presentation.
pub fn multiply(a: &AlgElement, b: &AlgElement) -> Result<AlgElement> {
    a.multiply(b)
}

/// The normal-form monomial basis of `p` in the given degree.
pub fn basis(p: &Presentation, degree: usize) -> Vec<Mono> {
    p.basis(degree)
}

/// Normal form of a product of generators in `p`.
pub fn normal_form(p: &Presentation, word: &[Gen]) -> Result<AlgElement> {
    p.normal_form(word)
}
