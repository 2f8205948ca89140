//! Exact rank computation for sparse rational matrices.
//!
//! Rows are scaled to primitive integer vectors and eliminated with
//! fraction-free integer row operations (`p·r − f·s`, then divided by the
//! content), so no rational arithmetic happens inside the elimination loop.

use crate::exactpoly::ExactScalar;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// A sparse row: column index to nonzero value.
pub type SparseRow = BTreeMap<usize, ExactScalar>;

type IntRow = BTreeMap<usize, BigInt>;

fn to_primitive(row: &SparseRow) -> IntRow {
    let mut lcm = BigInt::one();
    for v in row.values() {
        lcm = lcm.lcm(v.denom());
    }
    let mut out: IntRow =
        row.iter().filter(|(_, v)| !v.is_zero()).map(|(&c, v)| (c, v.numer() * (&lcm / v.denom()))).collect();
    normalize(&mut out);
    out
}

fn normalize(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(v);
    }
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
    if row.values().next().is_some_and(|v| v.is_negative()) {
        for v in row.values_mut() {
            *v = -v.clone();
        }
    }
}

/// Rank of the matrix whose rows are given.
pub fn rank(rows: &[SparseRow]) -> usize {
    // pivots: leading column -> reduced row with that leading column
    let mut pivots: BTreeMap<usize, IntRow> = BTreeMap::new();
    for row in rows {
        let mut r = to_primitive(row);
        while let Some((&lead, _)) = r.iter().next() {
            let Some(p) = pivots.get(&lead) else { break };
            let a = p[&lead].clone();
            let b = r[&lead].clone();
            // r ← a·r − b·p eliminates the leading entry
            let mut next: IntRow = BTreeMap::new();
            for (&c, v) in &r {
                next.insert(c, v * &a);
            }
            for (&c, v) in p {
                let e = next.entry(c).or_insert_with(BigInt::zero);
                *e -= v * &b;
            }
            next.retain(|_, v| !v.is_zero());
            normalize(&mut next);
            r = next;
        }
        if let Some((&lead, _)) = r.iter().next() {
            pivots.insert(lead, r);
        }
    }
    pivots.len()
}
