//! The differential `d = d_s + d_c` of the decorated graph complex.
//!
//! `d_s` replaces an edge (or tadpole) by the diagonal class
//! `Σ_q e^q ⊗ e^{q*}` over the basis `{1, a^k, b^k, ν}` with duals
//! `{ν, −b^k, a^k, 1}` — i.e. `ν⊗1 + 1⊗ν − Σ(a^k⊗b^k − b^k⊗a^k)`; any component
//! left without an external vertex is removed and replaced by its value
//! under a partition function. `d_c` contracts an edge with at least one
//! internal endpoint. Both act on the edge in position `p` with sign
//! `(−1)^p`.

use super::graph::{DecoratedGraph, Item};
use super::sum::GraphSum;
use crate::exactpoly::{qi, ExactScalar};
use crate::mogmodel::HClass;
use num_traits::{One, Zero};
use std::collections::BTreeSet;

/// Values on connected graphs without external vertices.
pub trait PartitionFunction: Sync {
    /// The value on a connected vacuum graph (all vertices internal).
    fn eval(&self, component: &DecoratedGraph) -> ExactScalar;
}

/// The trivial partition function: zero on graphs with more than one
/// vertex, `∫_{Σ_g}` of the decoration product on a single vertex.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZTriv;

/// `∫_{Σ_g}` of an ordered product of classes.
pub fn integrate_classes(classes: &[HClass]) -> ExactScalar {
    let mut acc: Option<(HClass, bool)> = None;
    for &c in classes {
        acc = match acc {
            None => Some((c, false)),
            Some((x, s)) => match HClass::product(x, c) {
                Some((y, t)) => Some((y, s ^ t)),
                None => return ExactScalar::zero(),
            },
        };
    }
    match acc {
        Some((HClass::Nu, s)) => {
            if s {
                -ExactScalar::one()
            } else {
                ExactScalar::one()
            }
        }
        _ => ExactScalar::zero(),
    }
}

impl PartitionFunction for ZTriv {
    fn eval(&self, component: &DecoratedGraph) -> ExactScalar {
        if component.vertex_count() != 1 || !component.edges().is_empty() {
            return ExactScalar::zero();
        }
        integrate_classes(&component.decorations_at(0))
    }
}

/// The diagonal class as `(left, right, coefficient)` with `None` for 1.
pub fn diagonal_terms(genus: u32) -> Vec<(Option<HClass>, Option<HClass>, ExactScalar)> {
    let mut v = vec![(None, Some(HClass::Nu), qi(1)), (Some(HClass::Nu), None, qi(1))];
    for k in 1..=genus as u8 {
        v.push((Some(HClass::A(k)), Some(HClass::B(k)), qi(-1)));
        v.push((Some(HClass::B(k)), Some(HClass::A(k)), qi(1)));
    }
    v
}

/// Removes components without external vertices, multiplying by their
/// partition-function values. Returns `None` when a value vanishes.
fn evaluate_vacuum_components(
    genus: u32,
    ext: &[u32],
    internal: usize,
    items: Vec<Item>,
    z: &dyn PartitionFunction,
) -> Option<(ExactScalar, usize, Vec<Item>)> {
    let (_, raw) = DecoratedGraph::from_items(genus, ext, internal, &items).ok()?;
    let vacuum: Vec<BTreeSet<usize>> =
        raw.components().into_iter().filter(|c| c.iter().all(|&v| !raw.is_external(v))).collect();
    if vacuum.is_empty() {
        return Some((ExactScalar::one(), internal, items));
    }
    let mut factor = ExactScalar::one();
    let mut rest = items;
    for comp in &vacuum {
        let inside = |it: &Item| match *it {
            Item::Edge(u, _) => comp.contains(&u),
            Item::Deco(v, _) => comp.contains(&v),
        };
        // Move the component's items to the front, keeping their order.
        let mut odd = false;
        let mut odd_rest = 0usize;
        let mut front = Vec::new();
        let mut back = Vec::new();
        for it in rest {
            if inside(&it) {
                if it.is_odd() && odd_rest % 2 == 1 {
                    odd = !odd;
                }
                front.push(it);
            } else {
                if it.is_odd() {
                    odd_rest += 1;
                }
                back.push(it);
            }
        }
        let local: Vec<usize> = comp.iter().copied().collect();
        let idx = |v: usize| local.binary_search(&v).expect("vertex of component");
        let comp_items: Vec<Item> = front
            .iter()
            .map(|it| match *it {
                Item::Edge(u, v) => Item::Edge(idx(u), idx(v)),
                Item::Deco(v, c) => Item::Deco(idx(v), c),
            })
            .collect();
        let (s, comp_graph) = DecoratedGraph::from_items(genus, &[], local.len(), &comp_items).ok()?;
        let val = z.eval(&comp_graph);
        if val.is_zero() {
            return None;
        }
        factor *= if odd ^ s { -val } else { val };
        rest = back;
    }
    // Drop the evaluated vertices and renumber.
    let removed: BTreeSet<usize> = vacuum.iter().flatten().copied().collect();
    let new_index = |v: usize| v - removed.range(..v).count();
    let items = rest
        .into_iter()
        .map(|it| match it {
            Item::Edge(u, v) => Item::Edge(new_index(u), new_index(v)),
            Item::Deco(v, c) => Item::Deco(new_index(v), c),
        })
        .collect();
    Some((factor, internal - removed.len(), items))
}

/// `d_s` with a partition function.
pub fn differential_split(a: &GraphSum, z: &dyn PartitionFunction) -> GraphSum {
    let mut out = GraphSum::zero(a.genus(), a.ext());
    for (g, c) in a.terms() {
        let items = g.items();
        for (p, &(u, v)) in g.edges().iter().enumerate() {
            let sign = if p % 2 == 1 { -c.clone() } else { c.clone() };
            let others: Vec<Item> = items.iter().enumerate().filter(|(i, _)| *i != p).map(|(_, it)| *it).collect();
            for (x, y, coef) in diagonal_terms(g.genus()) {
                let mut new_items: Vec<Item> = Vec::new();
                new_items.extend(x.map(|x| Item::Deco(u, x)));
                new_items.extend(y.map(|y| Item::Deco(v, y)));
                new_items.extend(others.iter().copied());
                if let Some((f, internal, items)) =
                    evaluate_vacuum_components(g.genus(), g.ext(), g.internal(), new_items, z)
                {
                    out.add_items(internal, &items, &sign * coef * f);
                }
            }
        }
    }
    out
}

/// `d_c`: contraction of edges with at least one internal endpoint.
pub fn differential_contract(a: &GraphSum) -> GraphSum {
    let mut out = GraphSum::zero(a.genus(), a.ext());
    for (g, c) in a.terms() {
        let items = g.items();
        for (p, &(u, v)) in g.edges().iter().enumerate() {
            if u == v || (g.is_external(u) && g.is_external(v)) {
                continue;
            }
            let (keep, gone) = if g.is_external(u) {
                (u, v)
            } else if g.is_external(v) {
                (v, u)
            } else {
                (u.min(v), u.max(v))
            };
            let map = |w: usize| {
                let w = if w == gone { keep } else { w };
                if w > gone {
                    w - 1
                } else {
                    w
                }
            };
            let mut new_items = Vec::new();
            let mut internal_tadpole = false;
            for (i, it) in items.iter().enumerate() {
                if i == p {
                    continue;
                }
                new_items.push(match *it {
                    Item::Edge(x, y) => {
                        let (x, y) = (map(x), map(y));
                        if x == y && x >= g.ext().len() {
                            internal_tadpole = true;
                        }
                        Item::Edge(x, y)
                    }
                    Item::Deco(x, cl) => Item::Deco(map(x), cl),
                });
            }
            if internal_tadpole {
                // only arises from a pair of parallel edges, which vanishes
                continue;
            }
            let sign = if p % 2 == 1 { -c.clone() } else { c.clone() };
            out.add_items(g.internal() - 1, &new_items, sign * qi(CONTRACTION_SIGN));
        }
    }
    out
}

/// Relative sign of `d_c` with respect to `d_s`.
const CONTRACTION_SIGN: i64 = -1;

/// The full differential `d_s + d_c` with partition function `z`.
pub fn differential(a: &GraphSum, z: &dyn PartitionFunction) -> GraphSum {
    let mut out = differential_split(a, z);
    out.add_scaled(&differential_contract(a), &ExactScalar::one());
    out
}
