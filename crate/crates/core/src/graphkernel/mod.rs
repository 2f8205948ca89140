//! Decorated graph complexes: graphs with external and internal vertices,
//! canonical forms with orientation signs, superposition product, the
//! differential `d_s + d_c` twisted by a partition function, the `BV^c`
//! coaction and the projection to the small model.

mod coaction;
mod differential;
mod graph;
mod sum;

pub use coaction::{coaction, project_to_mog, GraphTensor};
pub use differential::{
    diagonal_terms, differential, differential_contract, differential_split, integrate_classes, PartitionFunction,
    ZTriv,
};
pub use graph::{DecoratedGraph, Item};
pub use sum::GraphSum;

/// Canonical form of a graph: the sign (`None` when the graph vanishes) and
/// the representative.
pub fn canonicalize(g: &DecoratedGraph) -> Option<(bool, DecoratedGraph)> {
    g.canonicalize()
}

/// Product of graph sums.
pub fn multiply(a: &GraphSum, b: &GraphSum) -> crate::error::Result<GraphSum> {
    a.multiply(b)
}
