//! Stratified elements: a value on every stratum of a point set.
//!
//! Only nonzero strata are stored. All operations act stratum by stratum and
//! run in parallel; results are collected into ordered maps, so they do not
//! depend on scheduling.

use super::stratum::{enumerate_strata, Geometry, Location, Stratum};
use super::value::StratumValue;
use crate::bvalgebra::{AlgSum, Gen, Label};
use crate::error::{EngineError, Result};
use crate::exactpoly::{ExactScalar, VarImage};
use num_traits::One;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

/// An element of the totalization model on a fixed point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratifiedElement {
    geometry: Geometry,
    labels: BTreeSet<u32>,
    values: BTreeMap<Stratum, StratumValue>,
}

/// Sums per-stratum contributions into an ordered map, dropping zeros.
pub(crate) fn collect_values(parts: Vec<(Stratum, StratumValue)>) -> BTreeMap<Stratum, StratumValue> {
    let mut out: BTreeMap<Stratum, StratumValue> = BTreeMap::new();
    for (s, v) in parts {
        if v.is_zero() {
            continue;
        }
        match out.get_mut(&s) {
            Some(acc) => acc.add_scaled(&v, &ExactScalar::one()),
            None => {
                out.insert(s, v);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

impl StratifiedElement {
    /// The zero element.
    pub fn zero(geometry: Geometry, labels: BTreeSet<u32>) -> Self {
        StratifiedElement { geometry, labels, values: BTreeMap::new() }
    }

    /// The constant `c` on every stratum.
    pub fn constant(geometry: Geometry, labels: BTreeSet<u32>, c: ExactScalar) -> Self {
        let values = enumerate_strata(geometry, &labels)
            .into_iter()
            .map(|s| {
                let v = StratumValue::scalar(s.shape(), c.clone());
                (s, v)
            })
            .collect();
        let mut e = StratifiedElement { geometry, labels, values };
        e.values.retain(|_, v| !v.is_zero());
        e
    }

    /// The unit.
    pub fn one(geometry: Geometry, labels: BTreeSet<u32>) -> Self {
        StratifiedElement::constant(geometry, labels, ExactScalar::one())
    }

    /// Builds an element by evaluating `f` on every stratum.
    pub fn from_fn(
        geometry: Geometry,
        labels: BTreeSet<u32>,
        f: impl Fn(&Stratum) -> StratumValue + Sync,
    ) -> Result<Self> {
        let strata = enumerate_strata(geometry, &labels);
        let parts: Vec<(Stratum, StratumValue)> = strata
            .into_par_iter()
            .map(|s| {
                let v = f(&s);
                (s, v)
            })
            .collect();
        let mut e = StratifiedElement::zero(geometry, labels);
        for (s, v) in parts {
            e.set(s, v)?;
        }
        Ok(e)
    }

    pub(crate) fn from_values(
        geometry: Geometry,
        labels: BTreeSet<u32>,
        values: BTreeMap<Stratum, StratumValue>,
    ) -> Self {
        StratifiedElement { geometry, labels, values }
    }

    /// The surface model.
    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    /// The point set.
    pub fn labels(&self) -> &BTreeSet<u32> {
        &self.labels
    }

    /// The nonzero strata and their values.
    pub fn values(&self) -> &BTreeMap<Stratum, StratumValue> {
        &self.values
    }

    /// The value on a stratum (zero if not stored).
    pub fn value(&self, s: &Stratum) -> StratumValue {
        self.values.get(s).cloned().unwrap_or_else(|| StratumValue::zero(s.shape()))
    }

    /// True if every stratum value vanishes.
    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Sets the value on a stratum after validating labels, shape and generators.
    pub fn set(&mut self, s: Stratum, v: StratumValue) -> Result<()> {
        if s.labels() != self.labels {
            return Err(EngineError::UnknownLabel(format!(
                "stratum {} does not cover the labels {:?}",
                s.to_text(self.geometry),
                self.labels
            )));
        }
        if v.shape() != &s.shape() {
            return Err(EngineError::ShapeMismatch(format!(
                "value shape {:?} on stratum {}",
                v.shape().sizes(),
                s.to_text(self.geometry)
            )));
        }
        for (m, _) in v.terms() {
            if let Some(g) = m.iter().find(|g| !s.allows(self.geometry, **g)) {
                return Err(EngineError::UnknownLabel(format!(
                    "generator {g} not available on stratum {}",
                    s.to_text(self.geometry)
                )));
            }
        }
        if v.is_zero() {
            self.values.remove(&s);
        } else {
            self.values.insert(s, v);
        }
        Ok(())
    }

    fn check_compatible(&self, other: &StratifiedElement) -> Result<()> {
        if self.geometry != other.geometry || self.labels != other.labels {
            return Err(EngineError::PresentationMismatch(format!(
                "{} on {:?} vs {} on {:?}",
                self.geometry.to_text(),
                self.labels,
                other.geometry.to_text(),
                other.labels
            )));
        }
        Ok(())
    }

    /// `self + c · other`.
    pub fn add_scaled(&self, other: &StratifiedElement, c: &ExactScalar) -> Result<StratifiedElement> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (s, v) in &other.values {
            let mut acc = out.value(s);
            acc.add_scaled(v, c);
            out.values.insert(s.clone(), acc);
        }
        out.values.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// Sum.
    pub fn add(&self, other: &StratifiedElement) -> Result<StratifiedElement> {
        self.add_scaled(other, &ExactScalar::one())
    }

    /// Difference.
    pub fn sub(&self, other: &StratifiedElement) -> Result<StratifiedElement> {
        self.add_scaled(other, &-ExactScalar::one())
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &ExactScalar) -> StratifiedElement {
        let mut out = self.clone();
        out.values = self.values.iter().map(|(s, v)| (s.clone(), v.scale(c))).collect();
        out.values.retain(|_, v| !v.is_zero());
        out
    }

    /// The total differential, stratum by stratum.
    pub fn differential(&self) -> StratifiedElement {
        let parts: Vec<(Stratum, StratumValue)> =
            self.values.par_iter().map(|(s, v)| (s.clone(), v.differential())).collect();
        StratifiedElement::from_values(self.geometry, self.labels.clone(), collect_values(parts))
    }

    /// The graded product, stratum by stratum.
    pub fn wedge(&self, other: &StratifiedElement) -> Result<StratifiedElement> {
        self.check_compatible(other)?;
        let parts: Vec<(Stratum, StratumValue)> =
            self.values.par_iter().filter_map(|(s, v)| other.values.get(s).map(|w| (s.clone(), v.wedge(w)))).collect();
        Ok(StratifiedElement::from_values(self.geometry, self.labels.clone(), collect_values(parts)))
    }

    /// Renames points through an injective map (labels missing from the map are kept).
    pub fn relabel(&self, map: &BTreeMap<u32, u32>) -> Result<StratifiedElement> {
        let labels: BTreeSet<u32> = self.labels.iter().map(|p| *map.get(p).unwrap_or(p)).collect();
        if labels.len() != self.labels.len() {
            return Err(EngineError::InvalidArgument(format!("relabelling {map:?} is not injective")));
        }
        let rename = |g: Gen| -> AlgSum {
            let r = |l: Label| match l {
                Label::Pt(p) => Label::Pt(*map.get(&p).unwrap_or(&p)),
                other => other,
            };
            let img = match g {
                Gen::T(p) => Some(Gen::T(*map.get(&p).unwrap_or(&p))),
                Gen::W { hi, lo } => Gen::omega(r(Label::Pt(hi)), r(lo)),
            };
            img.map(AlgSum::gen).unwrap_or_default()
        };
        let values = self.values.iter().map(|(s, v)| (s.relabel(map), v.map_alg(&rename))).collect();
        Ok(StratifiedElement::from_values(self.geometry, labels, values))
    }

    /// Pullback along the map forgetting the new points `extra`: the value on
    /// a stratum is the value on the stratum with those points removed, with
    /// the form pulled back along the coordinate projection.
    pub fn extend_points(&self, extra: &BTreeSet<u32>) -> Result<StratifiedElement> {
        if let Some(p) = extra.iter().find(|p| self.labels.contains(p)) {
            return Err(EngineError::InvalidArgument(format!("point {p} already present")));
        }
        let mut labels = self.labels.clone();
        labels.extend(extra.iter().copied());
        let parts: Vec<(Stratum, StratumValue)> = self
            .values
            .par_iter()
            .flat_map_iter(|(s, v)| {
                let mut targets = vec![s.clone()];
                for &p in extra {
                    targets = targets.iter().flat_map(|t| t.insertions(p)).collect();
                }
                targets.into_iter().map(move |t| {
                    let images = projection_images(s, &t);
                    let w = v.pullback(&t.shape(), &images);
                    (t, w)
                })
            })
            .collect();
        Ok(StratifiedElement::from_values(self.geometry, labels, collect_values(parts)))
    }

    /// The pullback `π_T^*`: the points of `self` (in increasing order) are
    /// renamed to `target`, then the remaining points of `all` are added.
    pub fn pull_back_to(&self, target: &[u32], all: &BTreeSet<u32>) -> Result<StratifiedElement> {
        if target.len() != self.labels.len() {
            return Err(EngineError::InvalidArgument(format!(
                "{} target labels for an element on {} points",
                target.len(),
                self.labels.len()
            )));
        }
        let map: BTreeMap<u32, u32> = self.labels.iter().copied().zip(target.iter().copied()).collect();
        let relabelled = self.relabel(&map)?;
        if !relabelled.labels.is_subset(all) {
            return Err(EngineError::InvalidArgument(format!("target {target:?} not inside {all:?}")));
        }
        let extra: BTreeSet<u32> = all.difference(&relabelled.labels).copied().collect();
        relabelled.extend_points(&extra)
    }

    /// Keeps only the strata satisfying a predicate.
    pub fn restrict_strata(&self, keep: impl Fn(&Stratum) -> bool) -> StratifiedElement {
        let values = self.values.iter().filter(|(s, _)| keep(s)).map(|(s, v)| (s.clone(), v.clone())).collect();
        StratifiedElement::from_values(self.geometry, self.labels.clone(), values)
    }

    /// Total degrees (algebra degree plus form degree) occurring in the element.
    pub fn degrees(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for v in self.values.values() {
            for (m, f) in v.terms() {
                for d in f.degrees() {
                    out.insert(m.len() + d as usize);
                }
            }
        }
        out
    }

    /// Renders the dump format: a header line, then one record per nonzero
    /// stratum `(r_1,…,r_g | f) : <algebra> * (<form>) + …`.
    pub fn dump(&self) -> String {
        let labels: Vec<String> = self.labels.iter().map(u32::to_string).collect();
        let mut out = format!("geometry={}; labels=[{}]\n", self.geometry.to_text(), labels.join(","));
        for (s, v) in &self.values {
            out.push_str(&format!("{} : {}\n", s.to_text(self.geometry), v.to_text()));
        }
        out
    }

    /// Parses [`StratifiedElement::dump`] output.
    pub fn parse_dump(text: &str) -> Result<StratifiedElement> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| EngineError::Parse("empty dump".into()))?;
        let bad = || EngineError::Parse(format!("bad dump header `{header}`"));
        let (g, l) = header.split_once(';').ok_or_else(bad)?;
        let geometry = Geometry::parse(g.trim().strip_prefix("geometry=").ok_or_else(bad)?)?;
        let l = l.trim().strip_prefix("labels=[").and_then(|l| l.strip_suffix(']')).ok_or_else(bad)?;
        let labels: BTreeSet<u32> = l
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| x.parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let mut e = StratifiedElement::zero(geometry, labels);
        for line in lines {
            let (s, v) =
                line.split_once(") : ").ok_or_else(|| EngineError::Parse(format!("bad dump record `{line}`")))?;
            let s = Stratum::parse(geometry, &format!("{s})"))?;
            let v = StratumValue::parse(&s.shape(), v)?;
            if e.values.contains_key(&s) {
                return Err(EngineError::Parse(format!("duplicate stratum `{}`", s.to_text(geometry))));
            }
            e.set(s, v)?;
        }
        Ok(e)
    }
}

/// Variable images for the projection from the domain of `big` to the domain
/// of `small`, where `small` is `big` with some points removed: each variable
/// of `small` is sent to the variable of the packet of `big` containing the
/// same points.
pub(crate) fn projection_images(small: &Stratum, big: &Stratum) -> Vec<VarImage> {
    let shape_small = small.shape();
    let shape_big = big.shape();
    let mut images = Vec::with_capacity(shape_small.nvars());
    for (h, packets) in small.handles().iter().enumerate() {
        for g in packets {
            let p = *g.iter().next().expect("nonempty packet");
            match big.locate(p) {
                Some(Location::Packet { handle, index }) if handle == h => {
                    images.push(VarImage::Var(shape_big.var_index(handle, index)))
                }
                _ => panic!("packet of {p} not found in the larger stratum"),
            }
        }
    }
    images
}
