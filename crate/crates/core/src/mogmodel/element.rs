//! Elements of the small model `Mo_g(S)`.
//!
//! A basis monomial is an Arnold-normal `BV(S)` monomial together with at
//! most one nonunit class of `H(Σ_g)` per ω-cluster, placed at the smallest
//! label of the cluster (the relations `x_i ω_{ij} = x_j ω_{ij}` push every
//! class along ω-edges). Classes are written to the left of the `BV` part,
//! ordered by label.

use crate::bvalgebra::{parse_gen, reduce_word, AlgSum, Gen, Label, Mono};
use crate::error::{EngineError, Result};
use crate::exactpoly::{fmt_coeff_prefix, join_terms, parse_coeff_and_factors, split_terms, ExactScalar};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A nonunit basis class of `H(Σ_g)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HClass {
    /// `a^k` (degree 1).
    A(u8),
    /// `b^k` (degree 1).
    B(u8),
    /// The volume class `ν = a^k b^k` (degree 2).
    Nu,
}

impl HClass {
    /// Cohomological degree.
    pub fn degree(self) -> usize {
        match self {
            HClass::Nu => 2,
            _ => 1,
        }
    }

    /// True for odd classes.
    pub fn is_odd(self) -> bool {
        self.degree() % 2 == 1
    }

    /// All nonunit basis classes in genus `g`, in the order
    /// `a^1, b^1, …, a^g, b^g, ν`.
    pub fn all(g: u32) -> Vec<HClass> {
        let mut v = Vec::new();
        for k in 1..=g as u8 {
            v.push(HClass::A(k));
            v.push(HClass::B(k));
        }
        v.push(HClass::Nu);
        v
    }

    /// Product of two classes in `H(Σ_g)`: `a^k b^k = ν = −b^k a^k`, all
    /// other products of nonunit classes vanish.
    pub fn product(x: HClass, y: HClass) -> Option<(HClass, bool)> {
        match (x, y) {
            (HClass::A(k), HClass::B(l)) if k == l => Some((HClass::Nu, false)),
            (HClass::B(k), HClass::A(l)) if k == l => Some((HClass::Nu, true)),
            _ => None,
        }
    }

    /// `∫_{Σ_g}` of a class: 1 for ν, 0 otherwise.
    pub fn integral(self) -> ExactScalar {
        if self == HClass::Nu {
            ExactScalar::one()
        } else {
            ExactScalar::zero()
        }
    }
}

impl fmt::Display for HClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HClass::A(k) => write!(f, "a{k}"),
            HClass::B(k) => write!(f, "b{k}"),
            HClass::Nu => write!(f, "nu"),
        }
    }
}

/// A raw factor of a product in `Mo_g(S)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    /// A cohomology class at a point.
    H(u32, HClass),
    /// A `BV` generator.
    G(Gen),
}

/// A basis monomial: classes (sorted by point, one per cluster minimum) and
/// a normal-form `BV` monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MogMono {
    /// `(point, class)` pairs in increasing point order.
    pub h: Vec<(u32, HClass)>,
    /// The normal-form `BV` monomial.
    pub bv: Mono,
}

impl MogMono {
    /// Total degree.
    pub fn degree(&self) -> usize {
        self.h.iter().map(|(_, c)| c.degree()).sum::<usize>() + self.bv.len()
    }
}

/// Where cluster classes are collected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PushTarget {
    /// The smallest label of the cluster (the canonical choice).
    #[default]
    Min,
    /// The largest label (used only to cross-check rank invariance).
    Max,
}

/// The representative point of every point's ω-cluster in a `BV` monomial.
pub fn cluster_roots(points: &BTreeSet<u32>, bv: &[Gen], target: PushTarget) -> BTreeMap<u32, u32> {
    let mut parent: BTreeMap<u32, u32> = points.iter().map(|&p| (p, p)).collect();
    fn find(parent: &mut BTreeMap<u32, u32>, x: u32) -> u32 {
        let p = parent[&x];
        if p == x {
            return x;
        }
        let r = find(parent, p);
        parent.insert(x, r);
        r
    }
    for g in bv {
        if let Gen::W { hi, lo: Label::Pt(lo) } = *g {
            let (a, b) = (find(&mut parent, hi), find(&mut parent, lo));
            if a != b {
                let keep = match target {
                    PushTarget::Min => a.min(b),
                    PushTarget::Max => a.max(b),
                };
                parent.insert(a, keep);
                parent.insert(b, keep);
            }
        }
    }
    points.iter().map(|&p| (p, find(&mut parent, p))).collect()
}

/// A linear combination of basis monomials of `Mo_g(S)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MogElement {
    genus: u32,
    labels: BTreeSet<u32>,
    terms: BTreeMap<MogMono, ExactScalar>,
}

impl MogElement {
    /// The zero element of `Mo_g(S)`.
    pub fn zero(genus: u32, labels: impl IntoIterator<Item = u32>) -> Self {
        MogElement { genus, labels: labels.into_iter().collect(), terms: BTreeMap::new() }
    }

    /// The unit of `Mo_g(S)`.
    pub fn one(genus: u32, labels: impl IntoIterator<Item = u32>) -> Self {
        let mut e = Self::zero(genus, labels);
        e.terms.insert(MogMono { h: vec![], bv: vec![] }, ExactScalar::one());
        e
    }

    /// The genus.
    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// The point labels.
    pub fn labels(&self) -> &BTreeSet<u32> {
        &self.labels
    }

    /// Iterates over `(monomial, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&MogMono, &ExactScalar)> {
        self.terms.iter()
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a basis monomial.
    pub fn coeff(&self, m: &MogMono) -> ExactScalar {
        self.terms.get(m).cloned().unwrap_or_else(ExactScalar::zero)
    }

    fn check_factor(&self, f: &Factor) -> Result<()> {
        let ok = match f {
            Factor::H(p, c) => {
                self.labels.contains(p)
                    && match c {
                        HClass::A(k) | HClass::B(k) => (1..=self.genus).contains(&(*k as u32)),
                        HClass::Nu => true,
                    }
            }
            Factor::G(g) => match *g {
                Gen::T(p) => self.labels.contains(&p),
                Gen::W { hi, lo: Label::Pt(lo) } => self.labels.contains(&hi) && self.labels.contains(&lo),
                Gen::W { .. } => false,
            },
        };
        if ok {
            Ok(())
        } else {
            Err(EngineError::UnknownLabel(format!("{f:?} is not a symbol of Mo_{}({:?})", self.genus, self.labels)))
        }
    }

    /// Adds `c ·` (normal form of the ordered product of `factors`).
    pub fn add_product(&mut self, factors: &[Factor], c: ExactScalar) -> Result<()> {
        for f in factors {
            self.check_factor(f)?;
        }
        self.add_product_unchecked(factors, c, PushTarget::Min);
        Ok(())
    }

    pub(crate) fn add_product_unchecked(&mut self, factors: &[Factor], c: ExactScalar, target: PushTarget) {
        // Move the classes in front of the BV generators, keeping their order.
        let mut odd = false;
        let mut h = Vec::new();
        let mut word = Vec::new();
        for f in factors {
            match f {
                Factor::H(p, cl) => {
                    if cl.is_odd() && word.len() % 2 == 1 {
                        odd = !odd;
                    }
                    h.push((*p, *cl));
                }
                Factor::G(g) => word.push(*g),
            }
        }
        let mut bv = AlgSum::zero();
        reduce_word(word, if odd { -c } else { c }, &mut bv);
        for (m, c) in bv.terms() {
            self.add_pushed(&h, m, c.clone(), target);
        }
    }

    /// Adds `c · h · m` with a raw class list `h` and a normal `BV` monomial `m`.
    pub(crate) fn add_pushed(&mut self, h: &[(u32, HClass)], m: &Mono, c: ExactScalar, target: PushTarget) {
        let roots = cluster_roots(&self.labels, m, target);
        // Stable sort by root with Koszul signs, then multiply at equal roots.
        let mut items: Vec<(u32, HClass)> = h.iter().map(|&(p, cl)| (roots[&p], cl)).collect();
        let mut odd = false;
        for i in 1..items.len() {
            let mut j = i;
            while j > 0 && items[j - 1].0 > items[j].0 {
                if items[j - 1].1.is_odd() && items[j].1.is_odd() {
                    odd = !odd;
                }
                items.swap(j - 1, j);
                j -= 1;
            }
        }
        let mut merged: Vec<(u32, HClass)> = Vec::new();
        for (p, cl) in items {
            match merged.last_mut() {
                Some((q, prev)) if *q == p => match HClass::product(*prev, cl) {
                    Some((r, s)) => {
                        *prev = r;
                        odd ^= s;
                    }
                    None => return,
                },
                _ => merged.push((p, cl)),
            }
        }
        let c = if odd { -c } else { c };
        self.add_mono(MogMono { h: merged, bv: m.clone() }, c);
    }

    /// Adds `c · m` for a monomial already in normal form.
    pub fn add_mono(&mut self, m: MogMono, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(ExactScalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &MogElement, c: &ExactScalar) {
        for (m, x) in &other.terms {
            self.add_mono(m.clone(), x * c);
        }
    }

    /// Sum.
    pub fn add(&self, other: &MogElement) -> Result<MogElement> {
        self.same(other)?;
        let mut s = self.clone();
        s.add_scaled(other, &ExactScalar::one());
        Ok(s)
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &ExactScalar) -> MogElement {
        let mut s = MogElement::zero(self.genus, self.labels.iter().copied());
        s.add_scaled(self, c);
        s
    }

    fn same(&self, other: &MogElement) -> Result<()> {
        if self.genus != other.genus || self.labels != other.labels {
            return Err(EngineError::PresentationMismatch(format!(
                "Mo_{}({:?}) vs Mo_{}({:?})",
                self.genus, self.labels, other.genus, other.labels
            )));
        }
        Ok(())
    }

    /// Product in `Mo_g(S)`.
    pub fn multiply(&self, other: &MogElement) -> Result<MogElement> {
        self.same(other)?;
        let mut out = MogElement::zero(self.genus, self.labels.iter().copied());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let f = mono_factors(a).chain(mono_factors(b)).collect::<Vec<_>>();
                out.add_product_unchecked(&f, ca * cb, PushTarget::Min);
            }
        }
        Ok(out)
    }

    /// Renders the element, e.g. `2*a1(1)*w(1,2) - nu(2)`.
    pub fn to_text(&self) -> String {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut toks: Vec<String> = m.h.iter().map(|(p, cl)| format!("{cl}({p})")).collect();
                toks.extend(m.bv.iter().map(|g| g.to_string()));
                format!("{}{}", fmt_coeff_prefix(c, !toks.is_empty()), toks.join("*"))
            })
            .collect();
        join_terms(terms)
    }

    /// Parses the text format of [`MogElement::to_text`].
    pub fn parse(genus: u32, labels: impl IntoIterator<Item = u32>, text: &str) -> Result<MogElement> {
        let mut out = MogElement::zero(genus, labels);
        let text = text.trim();
        if text == "0" || text.is_empty() {
            return Ok(out);
        }
        for term in split_terms(text) {
            let (c, toks) = parse_coeff_and_factors(&term)?;
            let mut factors = Vec::new();
            let mut zero = false;
            for t in toks {
                if t == "1" {
                    continue;
                }
                if t.starts_with("w(") || t.starts_with("t(") {
                    match parse_gen(&t)? {
                        Some(g) => factors.push(Factor::G(g)),
                        None => zero = true,
                    }
                } else {
                    factors.push(parse_class(&t)?);
                }
            }
            if !zero {
                out.add_product(&factors, c)?;
            }
        }
        Ok(out)
    }
}

fn parse_class(t: &str) -> Result<Factor> {
    let bad = || EngineError::Parse(format!("bad class token `{t}`"));
    let (name, rest) = t.split_once('(').ok_or_else(bad)?;
    let p: u32 = rest.strip_suffix(')').ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    let cl = if name == "nu" {
        HClass::Nu
    } else if let Some(k) = name.strip_prefix('a') {
        HClass::A(k.parse().map_err(|_| bad())?)
    } else if let Some(k) = name.strip_prefix('b') {
        HClass::B(k.parse().map_err(|_| bad())?)
    } else {
        return Err(bad());
    };
    Ok(Factor::H(p, cl))
}

/// The factors of a basis monomial, in order.
pub fn mono_factors(m: &MogMono) -> impl Iterator<Item = Factor> + '_ {
    m.h.iter().map(|&(p, c)| Factor::H(p, c)).chain(m.bv.iter().map(|&g| Factor::G(g)))
}

impl fmt::Display for MogElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Normal form of a raw product in `Mo_g(S)`.
pub fn mog_normal_form(genus: u32, labels: impl IntoIterator<Item = u32>, factors: &[Factor]) -> Result<MogElement> {
    let mut e = MogElement::zero(genus, labels);
    e.add_product(factors, ExactScalar::one())?;
    Ok(e)
}
