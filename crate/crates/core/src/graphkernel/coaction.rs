//! The right `BV^c`-coaction on graphs and the projection to `Mo_g`.

use super::graph::{DecoratedGraph, Item};
use super::sum::GraphSum;
use crate::bvalgebra::{format_sum, reduce_word, AlgSum, Gen, Mono, Presentation};
use crate::error::{EngineError, Result};
use crate::exactpoly::{fmt_coeff_prefix, join_terms, ExactScalar};
use crate::mogmodel::{Factor, MogElement};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// An element of `BVGraphs(S') ⊗ BV(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphTensor {
    outer: GraphSum,
    inner: Presentation,
    terms: BTreeMap<(DecoratedGraph, Mono), ExactScalar>,
}

impl GraphTensor {
    /// The zero tensor.
    pub fn zero(genus: u32, outer_ext: &[u32], inner: Presentation) -> GraphTensor {
        GraphTensor { outer: GraphSum::zero(genus, outer_ext), inner, terms: BTreeMap::new() }
    }

    /// Iterates over `((graph, BV monomial), coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&(DecoratedGraph, Mono), &ExactScalar)> {
        self.terms.iter()
    }

    /// The right-factor presentation.
    pub fn inner(&self) -> &Presentation {
        &self.inner
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The left factor of the terms with right factor `y`.
    pub fn left_part(&self, y: &[Gen]) -> GraphSum {
        let mut s = GraphSum::zero(self.outer.genus(), self.outer.ext());
        for ((g, m), c) in &self.terms {
            if m.as_slice() == y {
                s.add_graph(g, c.clone());
            }
        }
        s
    }

    /// Adds `c · x ⊗ y`.
    pub fn add_left(&mut self, x: &GraphSum, y: &Mono, c: &ExactScalar) {
        for (g, v) in x.terms() {
            let key = (g.clone(), y.clone());
            let e = self.terms.entry(key.clone()).or_insert_with(ExactScalar::zero);
            *e += v * c;
            if e.is_zero() {
                self.terms.remove(&key);
            }
        }
    }

    /// `(project_to_mog ⊗ id)`.
    pub fn project_left(&self) -> BTreeMap<(crate::mogmodel::MogMono, Mono), ExactScalar> {
        let mut out: BTreeMap<_, ExactScalar> = BTreeMap::new();
        for ((g, m), c) in &self.terms {
            for (mm, v) in project_to_mog(&GraphSum::graph(g)).terms() {
                *out.entry((mm.clone(), m.clone())).or_insert_with(ExactScalar::zero) += c * v;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Renders as `coeff*[graph] (x) (bv)` terms.
    pub fn to_text(&self) -> String {
        let terms = self
            .terms
            .iter()
            .map(|((g, m), c)| format!("{}[{}] (x) ({})", fmt_coeff_prefix(c, true), g, format_sum(&AlgSum::word(m))))
            .collect();
        join_terms(terms)
    }
}

/// The coaction collapsing the external vertices of `group` to a new
/// external vertex `new`: a sum over subsets `γ` of the edges (and
/// tadpoles) among the collapsed vertices; edges of `γ` go to the right
/// factor as `ω_{ij}` (tadpoles as `θ_i`), the remaining ones become
/// tadpoles at the new vertex, and decorations move to the new vertex.
pub fn coaction(a: &GraphSum, group: &[u32], new: u32) -> Result<GraphTensor> {
    let set: BTreeSet<u32> = group.iter().copied().collect();
    let ext: BTreeSet<u32> = a.ext().iter().copied().collect();
    if set.is_empty() || !set.is_subset(&ext) {
        return Err(EngineError::InvalidCollapse(format!(
            "collapse set {group:?} is not a nonempty subset of {ext:?}"
        )));
    }
    let rest: Vec<u32> = ext.difference(&set).copied().collect();
    if rest.contains(&new) {
        return Err(EngineError::InvalidArgument(format!("new label {new} is already in use")));
    }
    let mut outer_ext = rest.clone();
    outer_ext.push(new);
    outer_ext.sort_unstable();
    let mut out = GraphTensor::zero(a.genus(), &outer_ext, Presentation::bv(set.iter().copied()));
    let new_pos = outer_ext.binary_search(&new).unwrap();
    for (g, c) in a.terms() {
        let label = |v: usize| if g.is_external(v) { Some(g.ext()[v]) } else { None };
        let collapsed = |v: usize| label(v).is_some_and(|l| set.contains(&l));
        let map = |v: usize| -> usize {
            match label(v) {
                Some(l) if set.contains(&l) => new_pos,
                Some(l) => outer_ext.binary_search(&l).unwrap(),
                None => outer_ext.len() + (v - g.ext().len()),
            }
        };
        let inside: Vec<usize> =
            (0..g.edges().len()).filter(|&i| collapsed(g.edges()[i].0) && collapsed(g.edges()[i].1)).collect();
        let items = g.items();
        for mask in 0u64..(1u64 << inside.len()) {
            let chosen: BTreeSet<usize> =
                inside.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i).collect();
            let mut left = Vec::new();
            let mut right = Vec::new();
            let mut odd = false;
            let mut odd_left_after = 0usize;
            // Walk backwards so that each chosen edge moves right past the
            // odd items that follow it.
            for (i, it) in items.iter().enumerate().rev() {
                if chosen.contains(&i) {
                    odd ^= odd_left_after % 2 == 1;
                    let Item::Edge(u, v) = *it else { unreachable!() };
                    let (lu, lv) = (label(u).unwrap(), label(v).unwrap());
                    right.push(if lu == lv { Gen::T(lu) } else { Gen::w(lu, lv) });
                } else {
                    if it.is_odd() {
                        odd_left_after += 1;
                    }
                    left.push(match *it {
                        Item::Edge(u, v) => Item::Edge(map(u), map(v)),
                        Item::Deco(v, cl) => Item::Deco(map(v), cl),
                    });
                }
            }
            left.reverse();
            right.reverse();
            let mut x = GraphSum::zero(a.genus(), &outer_ext);
            x.add_items(g.internal(), &left, if odd { -c.clone() } else { c.clone() });
            let mut bv = AlgSum::zero();
            reduce_word(right, ExactScalar::one(), &mut bv);
            for (m, v) in bv.terms() {
                out.add_left(&x, m, v);
            }
        }
    }
    Ok(out)
}

/// The projection to `Mo_g`: graphs with internal vertices go to zero;
/// edges become `ω_{ij}`, tadpoles `θ_i` and decorations cohomology classes.
pub fn project_to_mog(a: &GraphSum) -> MogElement {
    let mut out = MogElement::zero(a.genus(), a.ext().iter().copied());
    for (g, c) in a.terms() {
        if g.internal() > 0 {
            continue;
        }
        let lab = |v: usize| g.ext()[v];
        let factors: Vec<Factor> = g
            .items()
            .into_iter()
            .map(|it| match it {
                Item::Edge(u, v) if u == v => Factor::G(Gen::T(lab(u))),
                Item::Edge(u, v) => Factor::G(Gen::w(lab(u), lab(v))),
                Item::Deco(v, cl) => Factor::H(lab(v), cl),
            })
            .collect();
        out.add_product(&factors, c.clone()).expect("graph symbols exist in Mo_g");
    }
    out
}
