//! Labels and generators of the Arnold-type algebras.
//!
//! All algebras handled by the engine (`BV`, `BVC`, `BVGG` and their tensor
//! products) are realized inside one free graded-commutative algebra on the
//! generators `ω_{xy}` and `θ_p`; a generator `ω_{xy}` always involves at
//! least one ordinary point, so it is stored with the point as its upper
//! index.

use std::fmt;

/// A vertex label: the cylinder end `*`, a marked point `⎵h` / `‾h`, or an
/// ordinary point.
///
/// The derived order `Star < Under < Over < Pt` is the order used by the
/// Arnold rewriting; ordinary points are always the largest labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// The distinguished end `*` of a cylinder.
    Star,
    /// The marked point `⎵h` (`h ≥ 1`).
    Under(u8),
    /// The marked point `‾h` (`h ≥ 2`).
    Over(u8),
    /// An ordinary point.
    Pt(u32),
}

impl Label {
    /// True for ordinary points.
    pub fn is_point(self) -> bool {
        matches!(self, Label::Pt(_))
    }

    /// The point number, if this is an ordinary point.
    pub fn point(self) -> Option<u32> {
        match self {
            Label::Pt(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Star => write!(f, "*"),
            Label::Under(h) => write!(f, "_u {h}"),
            Label::Over(h) => write!(f, "_o {h}"),
            Label::Pt(p) => write!(f, "{p}"),
        }
    }
}

/// A degree-one generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    /// `ω_{lo,hi}` with `hi` an ordinary point and `lo < hi`.
    W { hi: u32, lo: Label },
    /// The framing class `θ_p`.
    T(u32),
}

impl Gen {
    /// `ω_{ab}` in canonical form; `ω_{aa} = θ_a` for a point, and `None`
    /// (the zero element) when neither label is an ordinary point.
    pub fn omega(a: Label, b: Label) -> Option<Gen> {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        match (lo, hi) {
            (Label::Pt(x), Label::Pt(y)) if x == y => Some(Gen::T(x)),
            (_, Label::Pt(h)) => Some(Gen::W { hi: h, lo }),
            _ => None,
        }
    }

    /// `ω_{ab}` between two ordinary points.
    pub fn w(a: u32, b: u32) -> Gen {
        Gen::omega(Label::Pt(a), Label::Pt(b)).expect("points")
    }

    /// `ω_{*a}`.
    pub fn star(a: u32) -> Gen {
        Gen::W { hi: a, lo: Label::Star }
    }

    /// The labels the generator involves.
    pub fn labels(self) -> (Label, Option<Label>) {
        match self {
            Gen::W { hi, lo } => (Label::Pt(hi), Some(lo)),
            Gen::T(p) => (Label::Pt(p), None),
        }
    }

    /// True if the generator involves the ordinary point `p`.
    pub fn involves(self, p: u32) -> bool {
        match self {
            Gen::W { hi, lo } => hi == p || lo == Label::Pt(p),
            Gen::T(q) => q == p,
        }
    }

    /// The generator with every occurrence of point `from` renamed to `to`.
    ///
    /// Returns `None` when the renamed generator vanishes.
    pub fn rename(self, from: u32, to: Label) -> Option<Gen> {
        let r = |l: Label| if l == Label::Pt(from) { to } else { l };
        match self {
            Gen::W { hi, lo } => Gen::omega(r(Label::Pt(hi)), r(lo)),
            Gen::T(p) if p == from => to.point().map(Gen::T),
            g => Some(g),
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::T(p) => write!(f, "t({p})"),
            Gen::W { hi, lo: Label::Star } => write!(f, "w(*,{hi})"),
            Gen::W { hi, lo: Label::Pt(lo) } => write!(f, "w({lo},{hi})"),
            Gen::W { hi, lo } => write!(f, "w({hi},{lo})"),
        }
    }
}
