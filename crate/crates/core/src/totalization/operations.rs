//! Continuity, the `BV^c`-coaction, the boundary operators `∂_{ij}`, the
//! combinatorial fiber integral and the Stokes defect.

use super::element::{collect_values, StratifiedElement};
use super::stratum::{enumerate_strata, FaceMove, Location, Stratum};
use super::value::StratumValue;
use crate::bvalgebra::{boundary_sum, collapse_image, merge_image, reduce_word, AlgSum, Gen, Label, Mono, Target};
use crate::error::{EngineError, Result};
use crate::exactpoly::{sign_of, ExactScalar, FaceSpec};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

/// Sign `σ` attached to each integrated pair `ω_{*k} dt_k`.
///
/// Fixed by normalization: the single-vertex graph decorated by `ν = a^1 b^1`
/// must integrate to `+1`.
pub const FIBER_PAIR_SIGN: i64 = -1;

/// The sign `s` in the Stokes formula `d∫α − s ∫dα = Σ ∫ ∂_{ij} α`.
///
/// The fiber integral has even degree, so `s = +1`; the acceptance suite
/// certifies the choice.
pub const STOKES_SIGN: i64 = 1;

/// Sign in front of the boundary sum in the Stokes formula.
pub const STOKES_BOUNDARY_SIGN: i64 = -1;

/// A violated face equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceViolation {
    /// The stratum whose face is tested.
    pub stratum: Stratum,
    /// The face of its form domain.
    pub face: FaceSpec,
    /// The stratum across the face.
    pub merged: Stratum,
    /// Restricted value minus the structure-map image of the merged value.
    pub difference: StratumValue,
}

/// Result of a continuity check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ContinuityReport {
    /// Number of (stratum, face) pairs compared.
    pub faces_checked: usize,
    /// The failing face equations.
    pub violations: Vec<FaceViolation>,
}

impl ContinuityReport {
    /// True if every face equation holds.
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Human-readable description of a face.
pub fn describe_face(face: FaceSpec) -> String {
    match face {
        FaceSpec::Collision { handle, index } => {
            format!("collision of packets {} and {} on handle {}", index + 1, index + 2, handle + 1)
        }
        FaceSpec::LeftEnd { handle } => format!("t = 0 end of handle {}", handle + 1),
        FaceSpec::RightEnd { handle } => format!("t = 1 end of handle {}", handle + 1),
    }
}

/// The structure map image of a merged-stratum value on a face.
fn face_image(v: &StratumValue, mv: &FaceMove) -> StratumValue {
    match mv {
        FaceMove::Merge { lower, upper } => v.map_alg(&merge_image(lower, upper)),
        FaceMove::End { group, rule } => v.map_alg_sum(|a| rule.apply(a, group)),
    }
}

/// Checks every face equation: the restriction of a stratum value to a face
/// equals the packet-merge / marked-end image of the value on the stratum
/// across the face.
pub fn check_continuity(a: &StratifiedElement) -> ContinuityReport {
    let geometry = a.geometry();
    let strata = enumerate_strata(geometry, a.labels());
    let results: Vec<(usize, Vec<FaceViolation>)> = strata
        .par_iter()
        .map(|s| {
            let mut violations = Vec::new();
            let faces = s.faces();
            let v = a.value(s);
            for &face in &faces {
                let (merged, mv) = s.across_face(geometry, face);
                let lhs = v.restrict_face(face).expect("face of the stratum's own domain");
                let rhs = face_image(&a.value(&merged), &mv);
                let difference = lhs.sub(&rhs);
                if !difference.is_zero() {
                    violations.push(FaceViolation { stratum: s.clone(), face, merged, difference });
                }
            }
            (faces.len(), violations)
        })
        .collect();
    let mut report = ContinuityReport::default();
    for (n, v) in results {
        report.faces_checked += n;
        report.violations.extend(v);
    }
    report
}

/// The result of a coaction: `Σ_m α_m ⊗ m` with `m` running over
/// normal-form monomials of `BV(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalTensor {
    /// The outer factor for each inner monomial.
    pub parts: BTreeMap<Mono, StratifiedElement>,
    /// The outer label set.
    pub outer: BTreeSet<u32>,
}

impl TotalTensor {
    /// The outer element multiplying the inner monomial `m` (zero if absent).
    pub fn part(&self, m: &[Gen], zero: &StratifiedElement) -> StratifiedElement {
        self.parts.get(m).cloned().unwrap_or_else(|| zero.clone())
    }
}

/// Stable split of a monomial into (outer, inner) with the sign of the
/// shuffle `m = ± outer · inner`.
fn split_mono(m: &[Gen], is_inner: impl Fn(Gen) -> bool) -> (Vec<Gen>, Vec<Gen>, bool) {
    let mut outer = Vec::new();
    let mut inner = Vec::new();
    let mut odd = false;
    for &g in m {
        if is_inner(g) {
            inner.push(g);
        } else {
            odd ^= inner.len() % 2 == 1;
            outer.push(g);
        }
    }
    (outer, inner, odd)
}

/// The coaction collapsing the points `group` to the new point `new`:
/// on strata where the group sits inside one factor, the cocomposition is
/// applied to that factor and the collapsed `BV(T)` factor is split off to
/// the right (past the form, with its Koszul sign).
pub fn total_coaction(a: &StratifiedElement, group: &BTreeSet<u32>, new: u32) -> Result<TotalTensor> {
    if group.is_empty() || !group.is_subset(a.labels()) {
        return Err(EngineError::InvalidCollapse(format!("{group:?} is not a nonempty subset of {:?}", a.labels())));
    }
    let mut outer: BTreeSet<u32> = a.labels().difference(group).copied().collect();
    if !outer.insert(new) {
        return Err(EngineError::InvalidCollapse(format!("new label {new} is already an outer label")));
    }
    let fresh = u32::MAX;
    let inside = |g: Gen| match g {
        Gen::T(p) => group.contains(&p),
        Gen::W { hi, lo: Label::Pt(lo) } => group.contains(&hi) && group.contains(&lo),
        _ => false,
    };
    let parts: Vec<(Mono, Stratum, StratumValue)> = a
        .values()
        .par_iter()
        .filter_map(|(s, v)| s.collapse(group, new).map(|t| (s, v, t)))
        .flat_map_iter(|(_, v, t)| {
            let mut out: BTreeMap<Mono, StratumValue> = BTreeMap::new();
            for (m, form) in v.terms() {
                let image = AlgSum::word(m).map_hom(&collapse_image(group, fresh));
                for (w, c) in image.terms() {
                    let (o, inner, odd) = split_mono(w, inside);
                    let mut renamed = AlgSum::zero();
                    let o: Option<Vec<Gen>> = o.iter().map(|g| g.rename(fresh, Label::Pt(new))).collect();
                    let Some(o) = o else { continue };
                    reduce_word(o, if odd { -c.clone() } else { c.clone() }, &mut renamed);
                    let f = if inner.len() % 2 == 1 { form.parity_twist() } else { form.clone() };
                    out.entry(inner).or_insert_with(|| StratumValue::zero(t.shape())).add_alg_form(&renamed, &f);
                }
            }
            out.into_iter().map(move |(m, val)| (m, t.clone(), val))
        })
        .collect();
    let mut grouped: BTreeMap<Mono, Vec<(Stratum, StratumValue)>> = BTreeMap::new();
    for (m, s, v) in parts {
        grouped.entry(m).or_default().push((s, v));
    }
    let parts = grouped
        .into_iter()
        .map(|(m, vs)| (m, StratifiedElement::from_values(a.geometry(), outer.clone(), collect_values(vs))))
        .filter(|(_, e)| !e.is_zero())
        .collect();
    Ok(TotalTensor { parts, outer })
}

/// The boundary operator `∂_{ij}` of degree −1: point `i` collides with
/// point `j` (which keeps its label); the binary cogenerator `ω_{ij}` is
/// projected out.
pub fn total_boundary(a: &StratifiedElement, i: u32, j: u32) -> Result<StratifiedElement> {
    if i == j || !a.labels().contains(&i) || !a.labels().contains(&j) {
        return Err(EngineError::UnknownLabel(format!("invalid pair ({i},{j}) for labels {:?}", a.labels())));
    }
    let mut labels = a.labels().clone();
    labels.remove(&i);
    let parts: Vec<(Stratum, StratumValue)> = a
        .values()
        .par_iter()
        .filter(|(s, _)| s.locate(i) == s.locate(j))
        .map(|(s, v)| {
            let (t, dropped) = s.remove_point(i);
            debug_assert!(dropped.is_none());
            (t, v.map_alg_sum(|x| boundary_sum(x, i, Target::Point(j))))
        })
        .collect();
    Ok(StratifiedElement::from_values(a.geometry(), labels, collect_values(parts)))
}

/// Parity of the permutation sorting `v`.
fn permutation_parity(v: &[usize]) -> bool {
    let mut odd = false;
    for x in 0..v.len() {
        for y in x + 1..v.len() {
            odd ^= v[x] > v[y];
        }
    }
    odd
}

/// The combinatorial fiber integral `∫_K`: sums over the strata in which every
/// point of `K` is alone in a packet on a handle; each such packet factor is
/// projected onto its `ω_{*k}` coefficient and the form is integrated over
/// the positions of the `K` packets.
///
/// Conventions: a term `m ⊗ φ` is rewritten as
/// `± m' ⊗ (ω_{*k_1} … ω_{*k_n}) ⊗ φ` (K in increasing order), the
/// differentials `dt_{k_1} … dt_{k_n}` are moved to the front of `φ` in the
/// same order, the pairs `ω_{*k} dt_k` are brought together and each pair is
/// replaced by `σ` = [`FIBER_PAIR_SIGN`] times the integral over `t_k`.
pub fn total_fiber_integrate(a: &StratifiedElement, k: &BTreeSet<u32>) -> Result<StratifiedElement> {
    if !k.is_subset(a.labels()) {
        return Err(EngineError::UnknownLabel(format!("{k:?} not inside {:?}", a.labels())));
    }
    let labels: BTreeSet<u32> = a.labels().difference(k).copied().collect();
    if k.is_empty() {
        return Ok(a.clone());
    }
    let n = k.len();
    let ks: Vec<u32> = k.iter().copied().collect();
    let global =
        sign_of((n * (n - 1) / 2) % 2 == 1) * num_traits::pow(ExactScalar::from_integer(FIBER_PAIR_SIGN.into()), n);
    let parts: Vec<(Stratum, StratumValue)> = a
        .values()
        .par_iter()
        .filter_map(|(s, v)| {
            // Every K point alone in its own packet.
            let mut locs = Vec::with_capacity(n);
            for &p in &ks {
                match s.locate(p) {
                    Some(loc @ Location::Packet { .. }) if s.group(loc).len() == 1 => locs.push(loc),
                    _ => return None,
                }
            }
            let shape = s.shape();
            let mut retained: Vec<Vec<bool>> = shape.sizes().iter().map(|&r| vec![true; r]).collect();
            let mut var_order = Vec::with_capacity(n);
            for loc in &locs {
                let Location::Packet { handle, index } = *loc else { unreachable!() };
                retained[handle][index] = false;
                var_order.push(shape.var_index(handle, index));
            }
            let coeff = &global * sign_of(permutation_parity(&var_order));
            let mut t = s.clone();
            for &p in &ks {
                t = t.remove_point(p).0;
            }
            let stars: BTreeSet<Gen> = ks.iter().map(|&p| Gen::star(p)).collect();
            let mut out = StratumValue::zero(t.shape());
            for (m, form) in v.terms() {
                if m.iter().filter(|g| stars.contains(g)).count() != n
                    || m.iter().any(|g| matches!(g, Gen::T(p) if k.contains(p)))
                {
                    continue;
                }
                let (rest, _, odd) = split_mono(m, |g| stars.contains(&g));
                let integrated = form.fiber_integrate(&retained).expect("retention matches shape");
                let c = if odd { -coeff.clone() } else { coeff.clone() };
                out.add_term(rest, &integrated.scale(&c));
            }
            Some((t, out))
        })
        .collect();
    Ok(StratifiedElement::from_values(a.geometry(), labels, collect_values(parts)))
}

/// The Stokes defect `d∫_K α − s ∫_K dα − σ Σ_{i∈K} Σ_{j<i} ∫_{K∖i} ∂_{ij} α`
/// with `s` = [`STOKES_SIGN`] and `σ` = [`STOKES_BOUNDARY_SIGN`]; it vanishes
/// for continuous `α` without framing classes at the points of `K`.
pub fn stokes_defect(a: &StratifiedElement, k: &BTreeSet<u32>) -> Result<StratifiedElement> {
    let lhs = total_fiber_integrate(a, k)?.differential();
    let integrated_d = total_fiber_integrate(&a.differential(), k)?;
    let mut defect = lhs.add_scaled(&integrated_d, &-ExactScalar::from_integer(STOKES_SIGN.into()))?;
    for &i in k {
        let mut rest = k.clone();
        rest.remove(&i);
        for &j in a.labels().iter().filter(|&&j| j < i) {
            let b = total_fiber_integrate(&total_boundary(a, i, j)?, &rest)?;
            defect = defect.add_scaled(&b, &-ExactScalar::from_integer(STOKES_BOUNDARY_SIGN.into()))?;
        }
    }
    Ok(defect)
}

/// The unit-coefficient projection of a coaction onto the inner monomial `1`.
pub fn counit_part(t: &TotalTensor, a: &StratifiedElement) -> StratifiedElement {
    t.parts.get(&Vec::new()).cloned().unwrap_or_else(|| StratifiedElement::zero(a.geometry(), t.outer.clone()))
}
