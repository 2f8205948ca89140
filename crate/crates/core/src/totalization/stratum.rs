//! Geometries, strata and their combinatorics.
//!
//! A stratum records where every point sits: in one of the bulk spheres, or
//! in an ordered packet on a handle. Packets on a handle are ordered by their
//! coordinate `t`, so a handle carrying `r` packets contributes a factor
//! `Δ^r` to the form domain.

use crate::bvalgebra::{infinity_image, involution_image, marked_image, AlgSum, Gen, Label, Target};
use crate::error::{EngineError, Result};
use crate::exactpoly::{FaceSpec, SimplexShape};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// The surface model the strata live on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Geometry {
    /// One bulk sphere carrying the marked points `⎵h`, `‾h`, with `g`
    /// handles attached; the model for genus `g`.
    Handles(u32),
    /// Two spheres `L`, `R` joined by one handle; the genus-zero model.
    TwoSpheres,
}

/// Where a point lands when its packet reaches a handle end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EndRule {
    /// Index of the bulk sphere the packet enters.
    pub bulk: usize,
    /// The marked label (or infinity) the packet approaches.
    pub target: Target,
    /// Whether the cylinder involution `I` is applied afterwards.
    pub involution: bool,
}

impl EndRule {
    /// Generator images of the end map for a packet `group`: an algebra
    /// homomorphism from the merged stratum's algebra to the face's.
    pub fn apply(&self, a: &AlgSum, group: &BTreeSet<u32>) -> AlgSum {
        let image = match self.target {
            Target::Under(h) => a.map_hom(&marked_image(group, Label::Under(h))),
            Target::Over(h) => a.map_hom(&marked_image(group, Label::Over(h))),
            Target::Infinity => a.map_hom(&infinity_image(group)),
            Target::Star | Target::Point(_) => panic!("handle ends approach marked points or infinity"),
        };
        if self.involution {
            image.map_hom(&involution_image(group))
        } else {
            image
        }
    }
}

impl Geometry {
    /// The genus of the modelled surface.
    pub fn genus(self) -> u32 {
        match self {
            Geometry::Handles(g) => g,
            Geometry::TwoSpheres => 0,
        }
    }

    /// The default geometry for genus `g`: two spheres for `g = 0`, else handles.
    pub fn for_genus(g: u32) -> Geometry {
        if g == 0 {
            Geometry::TwoSpheres
        } else {
            Geometry::Handles(g)
        }
    }

    /// Number of bulk spheres.
    pub fn bulk_count(self) -> usize {
        match self {
            Geometry::Handles(_) => 1,
            Geometry::TwoSpheres => 2,
        }
    }

    /// Number of handles.
    pub fn handle_count(self) -> usize {
        match self {
            Geometry::Handles(g) => g as usize,
            Geometry::TwoSpheres => 1,
        }
    }

    /// Marked labels available in the bulk spheres.
    pub fn bulk_marked_labels(self) -> Vec<Label> {
        match self {
            Geometry::Handles(g) => {
                let mut v: Vec<Label> = (1..=g).map(|h| Label::Under(h as u8)).collect();
                v.extend((2..=g).map(|h| Label::Over(h as u8)));
                v
            }
            Geometry::TwoSpheres => vec![],
        }
    }

    /// The rule at the `t = 0` end of handle `h` (0-based).
    pub fn left_end(self, h: usize) -> EndRule {
        match self {
            Geometry::Handles(_) => EndRule { bulk: 0, target: Target::Under(h as u8 + 1), involution: false },
            Geometry::TwoSpheres => EndRule { bulk: 0, target: Target::Infinity, involution: true },
        }
    }

    /// The rule at the `t = 1` end of handle `h` (0-based).
    pub fn right_end(self, h: usize) -> EndRule {
        match self {
            Geometry::Handles(_) if h == 0 => EndRule { bulk: 0, target: Target::Infinity, involution: false },
            Geometry::Handles(_) => EndRule { bulk: 0, target: Target::Over(h as u8 + 1), involution: true },
            Geometry::TwoSpheres => EndRule { bulk: 1, target: Target::Infinity, involution: false },
        }
    }

    /// Display name of a bulk sphere.
    pub fn bulk_name(self, b: usize) -> &'static str {
        match (self, b) {
            (Geometry::Handles(_), _) => "0",
            (Geometry::TwoSpheres, 0) => "L",
            (Geometry::TwoSpheres, _) => "R",
        }
    }

    /// Text form `handles(g)` / `two-spheres`.
    pub fn to_text(self) -> String {
        match self {
            Geometry::Handles(g) => format!("handles({g})"),
            Geometry::TwoSpheres => "two-spheres".to_string(),
        }
    }

    /// Parses [`Geometry::to_text`] output.
    pub fn parse(s: &str) -> Result<Geometry> {
        let s = s.trim();
        if s == "two-spheres" {
            return Ok(Geometry::TwoSpheres);
        }
        s.strip_prefix("handles(")
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|g| g.trim().parse().ok())
            .map(Geometry::Handles)
            .ok_or_else(|| EngineError::Parse(format!("bad geometry `{s}`")))
    }
}

/// The position of a point in a stratum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Location {
    /// In a bulk sphere.
    Bulk(usize),
    /// In the packet with the given 0-based index on a handle.
    Packet { handle: usize, index: usize },
}

/// A stratum: the bulk groups and the ordered packets of every handle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Stratum {
    bulks: Vec<BTreeSet<u32>>,
    handles: Vec<Vec<BTreeSet<u32>>>,
}

impl Stratum {
    /// The stratum with no points.
    pub fn empty(geometry: Geometry) -> Stratum {
        Stratum { bulks: vec![BTreeSet::new(); geometry.bulk_count()], handles: vec![vec![]; geometry.handle_count()] }
    }

    /// Builds a stratum from its groups, validating disjointness and
    /// nonempty packets.
    pub fn new(geometry: Geometry, bulks: Vec<BTreeSet<u32>>, handles: Vec<Vec<BTreeSet<u32>>>) -> Result<Stratum> {
        if bulks.len() != geometry.bulk_count() || handles.len() != geometry.handle_count() {
            return Err(EngineError::ShapeMismatch(format!("stratum does not fit geometry {}", geometry.to_text())));
        }
        let s = Stratum { bulks, handles };
        let mut seen = BTreeSet::new();
        for g in s.groups() {
            for &p in g {
                if !seen.insert(p) {
                    return Err(EngineError::InvalidArgument(format!("point {p} appears twice in a stratum")));
                }
            }
        }
        if s.handles.iter().flatten().any(BTreeSet::is_empty) {
            return Err(EngineError::InvalidArgument("empty packet".into()));
        }
        Ok(s)
    }

    /// The bulk groups.
    pub fn bulks(&self) -> &[BTreeSet<u32>] {
        &self.bulks
    }

    /// The packets of every handle, in increasing `t`.
    pub fn handles(&self) -> &[Vec<BTreeSet<u32>>] {
        &self.handles
    }

    /// All groups (bulks first, then packets handle by handle).
    pub fn groups(&self) -> impl Iterator<Item = &BTreeSet<u32>> {
        self.bulks.iter().chain(self.handles.iter().flatten())
    }

    /// The handle sizes `(r_1, …, r_g)` as a form domain.
    pub fn shape(&self) -> SimplexShape {
        SimplexShape::new(self.handles.iter().map(Vec::len).collect())
    }

    /// All points of the stratum.
    pub fn labels(&self) -> BTreeSet<u32> {
        self.groups().flatten().copied().collect()
    }

    /// Where point `p` sits.
    pub fn locate(&self, p: u32) -> Option<Location> {
        if let Some(b) = self.bulks.iter().position(|g| g.contains(&p)) {
            return Some(Location::Bulk(b));
        }
        for (h, packets) in self.handles.iter().enumerate() {
            if let Some(k) = packets.iter().position(|g| g.contains(&p)) {
                return Some(Location::Packet { handle: h, index: k });
            }
        }
        None
    }

    /// The group at a location.
    pub fn group(&self, loc: Location) -> &BTreeSet<u32> {
        match loc {
            Location::Bulk(b) => &self.bulks[b],
            Location::Packet { handle, index } => &self.handles[handle][index],
        }
    }

    fn group_mut(&mut self, loc: Location) -> &mut BTreeSet<u32> {
        match loc {
            Location::Bulk(b) => &mut self.bulks[b],
            Location::Packet { handle, index } => &mut self.handles[handle][index],
        }
    }

    /// True if the generator belongs to this stratum's algebra
    /// (bulk factors ⊗ packet factors).
    pub fn allows(&self, geometry: Geometry, g: Gen) -> bool {
        match g {
            Gen::T(p) => self.locate(p).is_some(),
            Gen::W { hi, lo } => {
                let Some(loc) = self.locate(hi) else { return false };
                match (lo, loc) {
                    (Label::Pt(l), _) => self.group(loc).contains(&l),
                    (Label::Star, Location::Packet { .. }) => true,
                    (Label::Under(_) | Label::Over(_), Location::Bulk(_)) => {
                        geometry.bulk_marked_labels().contains(&lo)
                    }
                    _ => false,
                }
            }
        }
    }

    /// The stratum with point `p` added to the group at `loc`.
    pub fn with_point_at(&self, p: u32, loc: Location) -> Stratum {
        let mut s = self.clone();
        s.group_mut(loc).insert(p);
        s
    }

    /// Every stratum obtained by adding the new point `p`: into a bulk,
    /// into an existing packet, or as a new singleton packet at any position.
    pub fn insertions(&self, p: u32) -> Vec<Stratum> {
        let mut out = Vec::new();
        for b in 0..self.bulks.len() {
            out.push(self.with_point_at(p, Location::Bulk(b)));
        }
        for (h, packets) in self.handles.iter().enumerate() {
            for k in 0..packets.len() {
                out.push(self.with_point_at(p, Location::Packet { handle: h, index: k }));
            }
            for k in 0..=packets.len() {
                let mut s = self.clone();
                s.handles[h].insert(k, [p].into_iter().collect());
                out.push(s);
            }
        }
        out
    }

    /// Removes point `p`. Returns the smaller stratum and, if `p` was alone
    /// in its packet, the `(handle, index)` of the dropped packet.
    pub fn remove_point(&self, p: u32) -> (Stratum, Option<(usize, usize)>) {
        let mut s = self.clone();
        match self.locate(p) {
            None => (s, None),
            Some(Location::Bulk(b)) => {
                s.bulks[b].remove(&p);
                (s, None)
            }
            Some(Location::Packet { handle, index }) => {
                let g = &mut s.handles[handle][index];
                g.remove(&p);
                if g.is_empty() {
                    s.handles[handle].remove(index);
                    (s, Some((handle, index)))
                } else {
                    (s, None)
                }
            }
        }
    }

    /// Replaces every label through `map` (labels missing from the map are kept).
    pub fn relabel(&self, map: &BTreeMap<u32, u32>) -> Stratum {
        let f = |g: &BTreeSet<u32>| g.iter().map(|p| *map.get(p).unwrap_or(p)).collect::<BTreeSet<u32>>();
        Stratum {
            bulks: self.bulks.iter().map(f).collect(),
            handles: self.handles.iter().map(|ps| ps.iter().map(f).collect()).collect(),
        }
    }

    /// Replaces the whole group containing `group` by the single point `new`.
    pub fn collapse(&self, group: &BTreeSet<u32>, new: u32) -> Option<Stratum> {
        let first = *group.iter().next()?;
        let loc = self.locate(first)?;
        if !group.is_subset(self.group(loc)) {
            return None;
        }
        let mut s = self.clone();
        let g = s.group_mut(loc);
        g.retain(|p| !group.contains(p));
        g.insert(new);
        Some(s)
    }

    /// The codimension-one faces of the form domain.
    pub fn faces(&self) -> Vec<FaceSpec> {
        let mut out = Vec::new();
        for (h, packets) in self.handles.iter().enumerate() {
            if packets.is_empty() {
                continue;
            }
            out.push(FaceSpec::LeftEnd { handle: h });
            for index in 0..packets.len() - 1 {
                out.push(FaceSpec::Collision { handle: h, index });
            }
            out.push(FaceSpec::RightEnd { handle: h });
        }
        out
    }

    /// The stratum reached through a face: merged packets, or the end packet
    /// moved into a bulk sphere. Also returns the moving group(s).
    pub fn across_face(&self, geometry: Geometry, face: FaceSpec) -> (Stratum, FaceMove) {
        let mut s = self.clone();
        match face {
            FaceSpec::Collision { handle, index } => {
                let upper = s.handles[handle].remove(index + 1);
                let lower = s.handles[handle][index].clone();
                s.handles[handle][index].extend(upper.iter().copied());
                (s, FaceMove::Merge { lower, upper })
            }
            FaceSpec::LeftEnd { handle } => {
                let group = s.handles[handle].remove(0);
                let rule = geometry.left_end(handle);
                s.bulks[rule.bulk].extend(group.iter().copied());
                (s, FaceMove::End { group, rule })
            }
            FaceSpec::RightEnd { handle } => {
                let group = s.handles[handle].pop().expect("nonempty handle");
                let rule = geometry.right_end(handle);
                s.bulks[rule.bulk].extend(group.iter().copied());
                (s, FaceMove::End { group, rule })
            }
        }
    }

    /// Text form `(r_1,…,r_g | 1->0, 2->1.1)`.
    pub fn to_text(&self, geometry: Geometry) -> String {
        let sizes: Vec<String> = self.handles.iter().map(|p| p.len().to_string()).collect();
        let mut assignment: Vec<(u32, String)> = Vec::new();
        for (b, g) in self.bulks.iter().enumerate() {
            assignment.extend(g.iter().map(|&p| (p, geometry.bulk_name(b).to_string())));
        }
        for (h, packets) in self.handles.iter().enumerate() {
            for (k, g) in packets.iter().enumerate() {
                assignment.extend(g.iter().map(|&p| (p, format!("{}.{}", h + 1, k + 1))));
            }
        }
        assignment.sort();
        let f: Vec<String> = assignment.iter().map(|(p, l)| format!("{p}->{l}")).collect();
        format!("({} | {})", sizes.join(","), f.join(", "))
    }

    /// Parses [`Stratum::to_text`] output.
    pub fn parse(geometry: Geometry, text: &str) -> Result<Stratum> {
        let bad = || EngineError::Parse(format!("bad stratum `{text}`"));
        let body = text.trim().strip_prefix('(').and_then(|b| b.strip_suffix(')')).ok_or_else(bad)?;
        let (sizes, f) = body.split_once('|').ok_or_else(bad)?;
        let sizes: Vec<usize> = if sizes.trim().is_empty() {
            vec![]
        } else {
            sizes.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
        };
        if sizes.len() != geometry.handle_count() {
            return Err(bad());
        }
        let mut bulks = vec![BTreeSet::new(); geometry.bulk_count()];
        let mut handles: Vec<Vec<BTreeSet<u32>>> = sizes.iter().map(|&r| vec![BTreeSet::new(); r]).collect();
        for item in f.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (p, l) = item.split_once("->").ok_or_else(bad)?;
            let p: u32 = p.trim().parse().map_err(|_| bad())?;
            let l = l.trim();
            if let Some(b) = (0..geometry.bulk_count()).find(|&b| geometry.bulk_name(b) == l) {
                bulks[b].insert(p);
            } else {
                let (h, k) = l.split_once('.').ok_or_else(bad)?;
                let h: usize = h.parse().map_err(|_| bad())?;
                let k: usize = k.parse().map_err(|_| bad())?;
                let slot = handles.get_mut(h.wrapping_sub(1)).and_then(|ps| ps.get_mut(k.wrapping_sub(1)));
                slot.ok_or_else(bad)?.insert(p);
            }
        }
        Stratum::new(geometry, bulks, handles)
    }
}

/// What happens to the groups when crossing a face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FaceMove {
    /// Two adjacent packets merge.
    Merge { lower: BTreeSet<u32>, upper: BTreeSet<u32> },
    /// An end packet enters a bulk sphere.
    End { group: BTreeSet<u32>, rule: EndRule },
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Bulk(b) => write!(f, "bulk {b}"),
            Location::Packet { handle, index } => write!(f, "{}.{}", handle + 1, index + 1),
        }
    }
}

/// Every stratum with point set `labels`, each exactly once.
///
/// Points are inserted one at a time in increasing order; a stratum is
/// reached by a unique insertion sequence (remove the largest point to step
/// back), so the list is duplicate-free.
pub fn enumerate_strata(geometry: Geometry, labels: &BTreeSet<u32>) -> Vec<Stratum> {
    let mut cur = vec![Stratum::empty(geometry)];
    for &p in labels {
        cur = cur.iter().flat_map(|s| s.insertions(p)).collect();
    }
    cur.sort();
    cur
}
