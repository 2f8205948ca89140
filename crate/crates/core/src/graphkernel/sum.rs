//! Linear combinations of canonical graphs, and their product.

use super::graph::{DecoratedGraph, Item};
use crate::error::{EngineError, Result};
use crate::exactpoly::{fmt_coeff_prefix, join_terms, ExactScalar};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A finite formal sum of canonical graphs with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphSum {
    genus: u32,
    ext: Vec<u32>,
    terms: BTreeMap<DecoratedGraph, ExactScalar>,
}

impl GraphSum {
    /// The zero sum on the given external labels.
    pub fn zero(genus: u32, ext: &[u32]) -> GraphSum {
        let mut ext = ext.to_vec();
        ext.sort_unstable();
        GraphSum { genus, ext, terms: BTreeMap::new() }
    }

    /// The empty graph (the unit).
    pub fn one(genus: u32, ext: &[u32]) -> GraphSum {
        GraphSum::graph(&DecoratedGraph::empty(genus, ext))
    }

    /// A single graph, canonicalized.
    pub fn graph(g: &DecoratedGraph) -> GraphSum {
        let mut s = GraphSum::zero(g.genus(), g.ext());
        s.add_graph(g, ExactScalar::one());
        s
    }

    /// The genus.
    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// External labels in increasing order.
    pub fn ext(&self) -> &[u32] {
        &self.ext
    }

    /// Iterates over `(canonical graph, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&DecoratedGraph, &ExactScalar)> {
        self.terms.iter()
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True if there are no terms (the same as being zero).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the canonical form of `g` (with the canonicalization
    /// sign applied).
    pub fn coeff(&self, g: &DecoratedGraph) -> ExactScalar {
        match g.canonicalize() {
            None => ExactScalar::zero(),
            Some((odd, c)) => {
                let v = self.terms.get(&c).cloned().unwrap_or_else(ExactScalar::zero);
                if odd {
                    -v
                } else {
                    v
                }
            }
        }
    }

    /// Adds `c · g`, canonicalizing `g`.
    pub fn add_graph(&mut self, g: &DecoratedGraph, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        if let Some((odd, canon)) = g.canonicalize() {
            let e = self.terms.entry(canon.clone()).or_insert_with(ExactScalar::zero);
            if odd {
                *e -= c;
            } else {
                *e += c;
            }
            if e.is_zero() {
                self.terms.remove(&canon);
            }
        }
    }

    /// Adds `c ·` (graph given by items in orientation order).
    pub(crate) fn add_items(&mut self, internal: usize, items: &[Item], c: ExactScalar) {
        let (odd, g) = DecoratedGraph::from_items(self.genus, &self.ext, internal, items)
            .expect("items produced by graph operations are valid");
        self.add_graph(&g, if odd { -c } else { c });
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &GraphSum, c: &ExactScalar) {
        for (g, x) in &other.terms {
            let e = self.terms.entry(g.clone()).or_insert_with(ExactScalar::zero);
            *e += x * c;
            if e.is_zero() {
                self.terms.remove(g);
            }
        }
    }

    /// Sum of two graph sums on the same labels.
    pub fn add(&self, other: &GraphSum) -> Result<GraphSum> {
        self.same(other)?;
        let mut s = self.clone();
        s.add_scaled(other, &ExactScalar::one());
        Ok(s)
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &ExactScalar) -> GraphSum {
        let mut s = GraphSum::zero(self.genus, &self.ext);
        s.add_scaled(self, c);
        s
    }

    fn same(&self, other: &GraphSum) -> Result<()> {
        if self.genus != other.genus || self.ext != other.ext {
            return Err(EngineError::PresentationMismatch(format!(
                "graphs of genus {} on {:?} vs genus {} on {:?}",
                self.genus, self.ext, other.genus, other.ext
            )));
        }
        Ok(())
    }

    /// Product by superposition at external vertices; internal vertices of
    /// the two factors stay disjoint.
    pub fn multiply(&self, other: &GraphSum) -> Result<GraphSum> {
        self.same(other)?;
        let mut out = GraphSum::zero(self.genus, &self.ext);
        let n_ext = self.ext.len();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let shift = |v: usize| if v < n_ext { v } else { v + a.internal() };
                let mut items = a.items();
                items.extend(b.items().into_iter().map(|it| match it {
                    Item::Edge(u, v) => Item::Edge(shift(u), shift(v)),
                    Item::Deco(v, c) => Item::Deco(shift(v), c),
                }));
                out.add_items(a.internal() + b.internal(), &items, ca * cb);
            }
        }
        Ok(out)
    }

    /// One graph per line, `coeff * graph`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let lines: Vec<String> =
            self.terms.iter().map(|(g, c)| format!("{}[{}]", fmt_coeff_prefix(c, true), g.to_text())).collect();
        join_terms(lines)
    }
}

impl fmt::Display for GraphSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
