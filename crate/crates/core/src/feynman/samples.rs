//! Exhaustive enumeration of small decorated graphs, used by the
//! verification sweeps (Stokes, partition function, chain map).

use crate::graphkernel::{DecoratedGraph, Item};
use crate::mogmodel::HClass;
use std::collections::BTreeSet;

/// Bounds for [`enumerate_graphs`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphBounds {
    /// Genus of the surface.
    pub genus: u32,
    /// External labels.
    pub ext: Vec<u32>,
    /// Number of internal vertices.
    pub internal: usize,
    /// Maximal number of edges (tadpoles included).
    pub max_edges: usize,
    /// Maximal number of decorations per vertex.
    pub max_decos: usize,
    /// Maximal number of decorations in the whole graph.
    pub max_total_decos: usize,
    /// Whether external vertices may carry decorations and tadpoles.
    pub decorate_external: bool,
    /// Decoration classes to draw from (defaults to all classes of the genus).
    pub palette: Vec<HClass>,
    /// Keep only connected graphs.
    pub connected: bool,
    /// Keep only graphs in which every component meets an external vertex.
    pub rooted: bool,
}

impl GraphBounds {
    /// Bounds with every class of genus `g` in the palette, no decorations
    /// on external vertices and no connectivity filter.
    pub fn new(genus: u32, ext: &[u32], internal: usize, max_edges: usize, max_decos: usize) -> GraphBounds {
        GraphBounds {
            genus,
            ext: ext.to_vec(),
            internal,
            max_edges,
            max_decos,
            max_total_decos: usize::MAX,
            decorate_external: false,
            palette: all_classes(genus),
            connected: false,
            rooted: false,
        }
    }
}

/// All nonunit classes `a^k, b^k (k ≤ g), ν`.
pub fn all_classes(g: u32) -> Vec<HClass> {
    let mut v = Vec::new();
    for k in 1..=g as u8 {
        v.push(HClass::A(k));
        v.push(HClass::B(k));
    }
    v.push(HClass::Nu);
    v
}

/// Every nonzero canonical graph within the bounds, each once, sorted.
///
/// Edges never repeat (parallel edges are odd and vanish) and internal
/// vertices carry no tadpoles.
pub fn enumerate_graphs(b: &GraphBounds) -> Vec<DecoratedGraph> {
    let n_ext = b.ext.len();
    let n = n_ext + b.internal;
    let mut edge_pool = Vec::new();
    for u in 0..n {
        for v in u..n {
            if u == v && (u >= n_ext || !b.decorate_external) {
                continue;
            }
            edge_pool.push(Item::Edge(u, v));
        }
    }
    let deco_vertices: Vec<usize> = if b.decorate_external { (0..n).collect() } else { (n_ext..n).collect() };
    let deco_pool: Vec<Item> =
        deco_vertices.iter().flat_map(|&v| b.palette.iter().map(move |&c| Item::Deco(v, c))).collect();
    let max_total = b.max_total_decos.min(deco_vertices.len() * b.max_decos);
    let deco_sets: Vec<Vec<Item>> = subsets_up_to(&deco_pool, max_total)
        .into_iter()
        .filter(|set| {
            deco_vertices
                .iter()
                .all(|&v| set.iter().filter(|it| matches!(it, Item::Deco(w, _) if *w == v)).count() <= b.max_decos)
        })
        .collect();
    let mut out = BTreeSet::new();
    for edges in subsets_up_to(&edge_pool, b.max_edges) {
        for decos in &deco_sets {
            let mut items = edges.clone();
            items.extend(decos.iter().copied());
            if let Ok((_, gr)) = DecoratedGraph::from_items(b.genus, &b.ext, b.internal, &items) {
                let keep = (!b.connected || gr.is_connected()) && (!b.rooted || gr.is_connected_to_external());
                if keep {
                    if let Some((_, canon)) = gr.canonicalize() {
                        out.insert(canon);
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Subsets of `pool` (in pool order) with at most `max` elements.
fn subsets_up_to<T: Copy>(pool: &[T], max: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for &x in pool {
        let extended: Vec<Vec<T>> = out
            .iter()
            .filter(|s| s.len() < max)
            .map(|s| {
                let mut s = s.clone();
                s.push(x);
                s
            })
            .collect();
        out.extend(extended);
    }
    out
}
