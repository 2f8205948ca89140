//! The Feynman-rule map `A`, the integral map `F = ∫_k A` and the
//! partition function.

use super::catalog::ModelFormCatalog;
use crate::error::{EngineError, Result};
use crate::exactpoly::ExactScalar;
use crate::graphkernel::{DecoratedGraph, GraphSum, Item};
use crate::totalization::{total_fiber_integrate, StratifiedElement, Stratum};
use num_traits::Zero;
use std::collections::BTreeSet;

/// All vertex labels of a graph: external labels, then internal ones.
pub fn vertex_labels(gr: &DecoratedGraph) -> BTreeSet<u32> {
    (0..gr.vertex_count()).map(|v| gr.vertex_name(v)).collect()
}

/// The internal vertex labels of a graph.
pub fn internal_labels(gr: &DecoratedGraph) -> BTreeSet<u32> {
    (gr.ext().len()..gr.vertex_count()).map(|v| gr.vertex_name(v)).collect()
}

/// `A(Γ)`: the product, in orientation order, of `π_{ij}^* ω` per edge,
/// `π_j^* η` per tadpole and the pulled-back class forms per decoration.
/// Internal vertices are treated as additional points.
pub fn map_a(gr: &DecoratedGraph, cat: &ModelFormCatalog) -> Result<StratifiedElement> {
    if gr.genus() != cat.genus() {
        return Err(EngineError::InvalidArgument(format!(
            "graph of genus {} with a catalog of genus {}",
            gr.genus(),
            cat.genus()
        )));
    }
    let all = vertex_labels(gr);
    let mut acc = StratifiedElement::one(cat.geometry(), all.clone());
    for item in gr.items() {
        let factor = match item {
            Item::Edge(u, v) if u == v => cat.eta().pull_back_to(&[gr.vertex_name(u)], &all)?,
            Item::Edge(u, v) => cat.omega().pull_back_to(&[gr.vertex_name(u), gr.vertex_name(v)], &all)?,
            Item::Deco(v, c) => cat.class_form(c)?.pull_back_to(&[gr.vertex_name(v)], &all)?,
        };
        acc = acc.wedge(&factor)?;
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// `F(Γ) = ∫_k A(Γ)`, integrating out the internal vertices.
pub fn map_f(gr: &DecoratedGraph, cat: &ModelFormCatalog) -> Result<StratifiedElement> {
    let a = map_a(gr, cat)?;
    total_fiber_integrate(&a, &internal_labels(gr))
}

/// `F` extended linearly to a sum of graphs.
pub fn map_f_sum(sum: &GraphSum, cat: &ModelFormCatalog) -> Result<StratifiedElement> {
    let labels: BTreeSet<u32> = sum.ext().iter().copied().collect();
    let mut acc = StratifiedElement::zero(cat.geometry(), labels);
    for (g, c) in sum.terms() {
        acc = acc.add_scaled(&map_f(g, cat)?, c)?;
    }
    Ok(acc)
}

/// The partition function of a connected graph without external vertices:
/// the complete fiber integral `∫_k A(Γ)`, a number.
pub fn partition_z(gr: &DecoratedGraph, cat: &ModelFormCatalog) -> Result<ExactScalar> {
    if !gr.ext().is_empty() {
        return Err(EngineError::InvalidGraph("the partition function needs a graph without external vertices".into()));
    }
    if !gr.is_connected() {
        return Err(EngineError::InvalidGraph("the partition function needs a connected graph".into()));
    }
    let f = map_f(gr, cat)?;
    let s = Stratum::empty(cat.geometry());
    let v = f.value(&s);
    let constant = v.form_of(&[]);
    let value = constant.evaluate(&[], 0);
    // Anything else would be a nonconstant or positive-degree remainder.
    let mut rest = v.clone();
    rest.add_alg_form(&crate::bvalgebra::AlgSum::one(), &constant.neg());
    if !rest.is_zero() {
        return Err(EngineError::InvalidGraph(format!(
            "integral over all points left a non-scalar remainder {}",
            rest.to_text()
        )));
    }
    Ok(if value.is_zero() { ExactScalar::zero() } else { value })
}
