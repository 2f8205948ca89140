//! Feynman rules: the model forms of the combinatorial model, the map
//! `A` from decorated graphs to stratified elements, its fiber integral `F`,
//! and the partition function of closed graphs.

pub mod catalog;
pub mod golden;
pub mod rules;
pub mod samples;

pub use catalog::{build_catalog, ModelFormCatalog};
pub use golden::{example_alpha, gamma_j, genus0_f, genus0_f_direct, genus0_star_graph};
pub use rules::{internal_labels, map_a, map_f, map_f_sum, partition_z, vertex_labels};
pub use samples::{all_classes, enumerate_graphs, GraphBounds};
