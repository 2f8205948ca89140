//! Exact cohomology of `Mo_g(S)`.

use super::differential::differential_with;
use super::element::{cluster_roots, HClass, MogElement, MogMono, PushTarget};
use super::linalg::{rank, SparseRow};
use crate::bvalgebra::Presentation;
use crate::exactpoly::ExactScalar;
use num_traits::One;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

/// Per-degree dimensions, differential ranks and Betti numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    /// The genus.
    pub genus: u32,
    /// The number of points.
    pub points: usize,
    /// `dim Mo^n` for `n = 0..=top`.
    pub dims: Vec<usize>,
    /// `rank(d: Mo^n → Mo^{n+1})`.
    pub ranks: Vec<usize>,
    /// `dim H^n`, with trailing zeros removed.
    pub betti: Vec<usize>,
}

impl CohomologyReport {
    /// `Σ (−1)^n dim Mo^n`.
    pub fn euler_from_dims(&self) -> i64 {
        alternating(&self.dims)
    }

    /// `Σ (−1)^n dim H^n`.
    pub fn euler_from_betti(&self) -> i64 {
        alternating(&self.betti)
    }
}

fn alternating(v: &[usize]) -> i64 {
    v.iter().enumerate().map(|(n, &x)| if n % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

/// The monomial basis of `Mo_g(S)` in one degree, for a given push target.
pub fn mog_basis(genus: u32, labels: &BTreeSet<u32>, degree: usize, target: PushTarget) -> Vec<MogMono> {
    let bv = Presentation::bv(labels.iter().copied());
    let mut classes: Vec<Option<HClass>> = vec![None];
    classes.extend(HClass::all(genus).into_iter().map(Some));
    let mut out = Vec::new();
    for k in 0..=degree {
        for m in bv.basis(k) {
            let roots: BTreeSet<u32> = cluster_roots(labels, &m, target).into_values().collect();
            let roots: Vec<u32> = roots.into_iter().collect();
            let mut choice = Vec::new();
            fill(&roots, &classes, degree - k, &mut choice, &mut |h| {
                out.push(MogMono { h: h.to_vec(), bv: m.clone() });
            });
        }
    }
    out.sort();
    out
}

/// Receives one complete assignment of classes to cluster roots.
type Emit<'a> = dyn FnMut(&[(u32, HClass)]) + 'a;

fn fill(roots: &[u32], classes: &[Option<HClass>], remaining: usize, cur: &mut Vec<(u32, HClass)>, emit: &mut Emit) {
    let Some((&p, rest)) = roots.split_first() else {
        if remaining == 0 {
            emit(cur);
        }
        return;
    };
    for c in classes {
        let deg = c.map_or(0, |c| c.degree());
        if deg > remaining {
            continue;
        }
        if let Some(c) = c {
            cur.push((p, *c));
        }
        fill(rest, classes, remaining - deg, cur, emit);
        if c.is_some() {
            cur.pop();
        }
    }
}

/// Rank of `d` from degree `n` to `n + 1`.
fn differential_rank(genus: u32, labels: &BTreeSet<u32>, n: usize, target: PushTarget) -> usize {
    let source = mog_basis(genus, labels, n, target);
    let index: BTreeMap<MogMono, usize> =
        mog_basis(genus, labels, n + 1, target).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let rows: Vec<SparseRow> = source
        .par_iter()
        .map(|m| {
            let mut x = MogElement::zero(genus, labels.iter().copied());
            x.add_mono(m.clone(), ExactScalar::one());
            differential_with(&x, target).terms().map(|(t, c)| (index[t], c.clone())).collect()
        })
        .collect();
    rank(&rows)
}

/// Cohomology of `Mo_g(S)` with an explicit push target.
pub fn cohomology_with(genus: u32, labels: &BTreeSet<u32>, target: PushTarget) -> CohomologyReport {
    let top = 2 * labels.len() + 2 * labels.len().max(1);
    let mut dims: Vec<usize> = (0..=top).map(|n| mog_basis(genus, labels, n, target).len()).collect();
    while dims.len() > 1 && *dims.last().unwrap() == 0 {
        dims.pop();
    }
    let ranks: Vec<usize> =
        (0..dims.len()).into_par_iter().map(|n| differential_rank(genus, labels, n, target)).collect();
    let mut betti: Vec<usize> =
        (0..dims.len()).map(|n| dims[n] - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 }).collect();
    while betti.len() > 1 && *betti.last().unwrap() == 0 {
        betti.pop();
    }
    CohomologyReport { genus, points: labels.len(), dims, ranks, betti }
}

/// Betti numbers of `Mo_g(r)` on the labels `1..=r`, computed by exact
/// rational elimination degree by degree.
pub fn cohomology_ranks(genus: u32, r: u32) -> CohomologyReport {
    cohomology_with(genus, &(1..=r).collect(), PushTarget::Min)
}
