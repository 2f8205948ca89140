//! The model forms: `a^k`, `b^k`, `ν`, `η` on one point and the propagator
//! `ω` on two points, stratum by stratum.

use crate::bvalgebra::{AlgSum, Gen, Label};
use crate::error::{EngineError, Result};
use crate::exactpoly::{q, qi, ExactScalar, PolyForm, SimplexShape};
use crate::mogmodel::HClass;
use crate::totalization::{Geometry, Location, StratifiedElement, Stratum, StratumValue};
use std::collections::BTreeSet;

/// The model forms of one genus.
#[derive(Clone, Debug)]
pub struct ModelFormCatalog {
    geometry: Geometry,
    a: Vec<StratifiedElement>,
    b: Vec<StratifiedElement>,
    nu: StratifiedElement,
    eta: StratifiedElement,
    omega: StratifiedElement,
}

fn one_point() -> BTreeSet<u32> {
    [1].into_iter().collect()
}

fn two_points() -> BTreeSet<u32> {
    [1, 2].into_iter().collect()
}

fn w(a: u32, b: u32) -> AlgSum {
    AlgSum::gen(Gen::w(a, b))
}

fn star(a: u32) -> AlgSum {
    AlgSum::gen(Gen::star(a))
}

fn theta(a: u32) -> AlgSum {
    AlgSum::gen(Gen::T(a))
}

fn under(p: u32, h: usize) -> AlgSum {
    AlgSum::omega(Label::Pt(p), Label::Under(h as u8))
}

fn over(p: u32, h: usize) -> AlgSum {
    AlgSum::omega(Label::Pt(p), Label::Over(h as u8))
}

/// Small helper assembling `Σ a_i ⊗ φ_i` on one stratum.
struct Builder {
    shape: SimplexShape,
    value: StratumValue,
}

impl Builder {
    fn new(s: &Stratum) -> Self {
        let shape = s.shape();
        Builder { value: StratumValue::zero(shape.clone()), shape }
    }

    fn c(&self, x: ExactScalar) -> PolyForm {
        PolyForm::constant(self.shape.clone(), x)
    }

    /// `t` of the packet at a location.
    fn t(&self, loc: Location) -> PolyForm {
        let Location::Packet { handle, index } = loc else { panic!("bulk point has no coordinate") };
        PolyForm::var(self.shape.clone(), handle, index)
    }

    fn dt(&self, loc: Location) -> PolyForm {
        let Location::Packet { handle, index } = loc else { panic!("bulk point has no coordinate") };
        PolyForm::dvar(self.shape.clone(), handle, index)
    }

    fn add(&mut self, a: AlgSum, f: PolyForm) {
        self.value.add_alg_form(&a, &f);
    }

    fn add_const(&mut self, a: AlgSum, x: ExactScalar) {
        let f = self.c(x);
        self.add(a, f);
    }

    /// `c0 + c1·t`.
    fn affine(&self, loc: Location, c0: ExactScalar, c1: ExactScalar) -> PolyForm {
        self.c(c0).add(&self.t(loc).scale(&c1)).expect("same shape")
    }

    fn done(self) -> StratumValue {
        self.value
    }
}

fn handle_of(loc: Location) -> Option<usize> {
    match loc {
        Location::Packet { handle, .. } => Some(handle),
        Location::Bulk(_) => None,
    }
}

/// `a^k` (1-based `k`): `1 ⊗ dt` on handle `k`, zero elsewhere.
fn a_value(k: usize, s: &Stratum) -> StratumValue {
    let mut bld = Builder::new(s);
    let loc = s.locate(1).expect("point 1");
    if handle_of(loc) == Some(k - 1) {
        let f = bld.dt(loc);
        bld.add(AlgSum::one(), f);
    }
    bld.done()
}

/// `b^k`: `ω_{1*}` on handle `k`; in the bulk `ω_{1⎵1}` (k = 1) or
/// `ω_{1⎵k} − ω_{1‾k}` (k ≥ 2).
fn b_value(k: usize, s: &Stratum) -> StratumValue {
    let mut bld = Builder::new(s);
    match s.locate(1).expect("point 1") {
        Location::Bulk(_) if k == 1 => bld.add_const(under(1, 1), qi(1)),
        Location::Bulk(_) => bld.add_const(under(1, k).sub(&over(1, k)), qi(1)),
        Location::Packet { handle, .. } if handle == k - 1 => bld.add_const(star(1), qi(1)),
        Location::Packet { .. } => {}
    }
    bld.done()
}

/// `η`: `θ − ω_{1⎵1}` in the bulk, `θ − ω_{1*}` on handle 1,
/// `θ − 2t ω_{*1}` on handles `h ≥ 2`.
fn eta_value(s: &Stratum) -> StratumValue {
    let mut bld = Builder::new(s);
    let loc = s.locate(1).expect("point 1");
    bld.add_const(theta(1), qi(1));
    match loc {
        Location::Bulk(_) => bld.add_const(under(1, 1), qi(-1)),
        Location::Packet { handle: 0, .. } => bld.add_const(star(1), qi(-1)),
        Location::Packet { .. } => {
            let f = bld.t(loc).scale(&qi(-2));
            bld.add(star(1), f);
        }
    }
    bld.done()
}

/// `ω` with point `p` in the bulk and point `q` on a handle.
fn omega_bulk_handle(bld: &mut Builder, p: u32, qq: u32, lq: Location) {
    match lq {
        // ω_{p⎵1}(1/2 − t) + ω_{q*}(−1/2 + t)
        Location::Packet { handle: 0, .. } => {
            let f = bld.affine(lq, q(1, 2), qi(-1));
            bld.add(under(p, 1), f);
            let f = bld.affine(lq, q(-1, 2), qi(1));
            bld.add(star(qq), f);
        }
        // ω_{p⎵j}(1 − t) + ω_{p‾j} t − 1/2 ω_{p⎵1}
        Location::Packet { handle, .. } => {
            let j = handle + 1;
            let f = bld.affine(lq, qi(1), qi(-1));
            bld.add(under(p, j), f);
            let f = bld.t(lq);
            bld.add(over(p, j), f);
            bld.add_const(under(p, 1), q(-1, 2));
        }
        Location::Bulk(_) => unreachable!(),
    }
}

/// `ω` on the handle geometry.
fn omega_value_handles(s: &Stratum) -> StratumValue {
    let mut bld = Builder::new(s);
    let l1 = s.locate(1).expect("point 1");
    let l2 = s.locate(2).expect("point 2");
    match (l1, l2) {
        (Location::Bulk(_), Location::Bulk(_)) => {
            bld.add_const(w(1, 2), qi(1));
            bld.add_const(under(1, 1).add(&under(2, 1)), q(-1, 2));
        }
        (Location::Bulk(_), _) => omega_bulk_handle(&mut bld, 1, 2, l2),
        (_, Location::Bulk(_)) => omega_bulk_handle(&mut bld, 2, 1, l1),
        _ if l1 == l2 => {
            // Infinitesimally close on one handle.
            bld.add_const(w(1, 2), qi(1));
            let stars = star(1).add(&star(2));
            if handle_of(l1) == Some(0) {
                bld.add_const(stars, q(-1, 2));
            } else {
                let f = bld.t(l1).neg();
                bld.add(stars, f);
            }
        }
        (Location::Packet { handle: h1, index: k1 }, Location::Packet { handle: h2, index: k2 }) if h1 == h2 => {
            let ((p, lp), (qq, lq)) = if k1 < k2 { ((1, l1), (2, l2)) } else { ((2, l2), (1, l1)) };
            let diff = bld.t(lp).sub(&bld.t(lq)).expect("same shape");
            if h1 == 0 {
                // ω_{p*}(1/2 + t_p − t_q) + ω_{q*}(−1/2 + t_q − t_p)
                let f = bld.c(q(1, 2)).add(&diff).expect("same shape");
                bld.add(star(p), f);
                let f = bld.c(q(-1, 2)).sub(&diff).expect("same shape");
                bld.add(star(qq), f);
            } else {
                // ω_{p*}(1 − t_q) + ω_{q*}(−t_p)
                let f = bld.affine(lq, qi(1), qi(-1));
                bld.add(star(p), f);
                let f = bld.t(lp).neg();
                bld.add(star(qq), f);
            }
        }
        (Location::Packet { handle: h1, .. }, Location::Packet { handle: h2, .. }) => {
            // One point on the first handle, the other on handle j ≥ 2:
            // (−1/2 + t_p) ω_{p*}; zero when neither is on the first handle.
            let first = if h1 == 0 {
                Some((1, l1))
            } else if h2 == 0 {
                Some((2, l2))
            } else {
                None
            };
            if let Some((p, lp)) = first {
                let f = bld.affine(lp, q(-1, 2), qi(1));
                bld.add(star(p), f);
            }
        }
    }
    bld.done()
}

/// `ν` on the two-spheres geometry: `dt ω_{1*}` on the handle.
fn nu_value_spheres(s: &Stratum) -> StratumValue {
    let mut bld = Builder::new(s);
    let loc = s.locate(1).expect("point 1");
    if handle_of(loc).is_some() {
        // dt · ω_{1*} = −ω_{1*} ⊗ dt with forms written to the right.
        let f = bld.dt(loc).neg();
        bld.add(star(1), f);
    }
    bld.done()
}

/// `η` on the two-spheres geometry: `θ` on the spheres, `θ − 2(1 − t) ω_{1*}` on the handle.
fn eta_value_spheres(s: &Stratum) -> StratumValue {
    let mut bld = Builder::new(s);
    let loc = s.locate(1).expect("point 1");
    bld.add_const(theta(1), qi(1));
    if handle_of(loc).is_some() {
        let f = bld.affine(loc, qi(-2), qi(2));
        bld.add(star(1), f);
    }
    bld.done()
}

/// `ω` on the two-spheres geometry.
fn omega_value_spheres(s: &Stratum) -> StratumValue {
    let mut bld = Builder::new(s);
    let l1 = s.locate(1).expect("point 1");
    let l2 = s.locate(2).expect("point 2");
    let on_sphere = |p: u32, b: usize, lq: Location, bld: &mut Builder| {
        // Right sphere: t ω_{q*}; left sphere: (t − 1) ω_{q*}.
        let f = if b == 1 { bld.t(lq) } else { bld.affine(lq, qi(-1), qi(1)) };
        bld.add(star(p), f);
    };
    match (l1, l2) {
        (Location::Bulk(b1), Location::Bulk(b2)) => {
            if b1 == b2 {
                bld.add_const(w(1, 2), qi(1));
            }
        }
        (Location::Bulk(b), _) => on_sphere(2, b, l2, &mut bld),
        (_, Location::Bulk(b)) => on_sphere(1, b, l1, &mut bld),
        _ if l1 == l2 => {
            bld.add_const(w(1, 2), qi(1));
            let f = bld.affine(l1, qi(-1), qi(1));
            bld.add(star(1).add(&star(2)), f);
        }
        (Location::Packet { index: k1, .. }, Location::Packet { index: k2, .. }) => {
            // Lower point p, upper point q: t_p ω_{p*} − (1 − t_q) ω_{q*}.
            let ((p, lp), (qq, lq)) = if k1 < k2 { ((1, l1), (2, l2)) } else { ((2, l2), (1, l1)) };
            let f = bld.t(lp);
            bld.add(star(p), f);
            let f = bld.affine(lq, qi(-1), qi(1));
            bld.add(star(qq), f);
        }
    }
    bld.done()
}

impl ModelFormCatalog {
    /// The genus.
    pub fn genus(&self) -> u32 {
        self.geometry.genus()
    }

    /// The geometry the forms live on.
    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    /// `a^k` (1-based).
    pub fn a(&self, k: usize) -> &StratifiedElement {
        &self.a[k - 1]
    }

    /// `b^k` (1-based).
    pub fn b(&self, k: usize) -> &StratifiedElement {
        &self.b[k - 1]
    }

    /// `ν`.
    pub fn nu(&self) -> &StratifiedElement {
        &self.nu
    }

    /// `η`.
    pub fn eta(&self) -> &StratifiedElement {
        &self.eta
    }

    /// The propagator `ω`.
    pub fn omega(&self) -> &StratifiedElement {
        &self.omega
    }

    /// The one-point form representing a cohomology class.
    pub fn class_form(&self, c: HClass) -> Result<&StratifiedElement> {
        let g = self.genus() as usize;
        match c {
            HClass::A(k) if (1..=g).contains(&(k as usize)) => Ok(self.a(k as usize)),
            HClass::B(k) if (1..=g).contains(&(k as usize)) => Ok(self.b(k as usize)),
            HClass::Nu => Ok(&self.nu),
            _ => Err(EngineError::InvalidArgument(format!("class {c} does not exist in genus {g}"))),
        }
    }

    /// `Σ_k a^k b^k` (one point).
    pub fn sum_ab(&self) -> StratifiedElement {
        let mut acc = StratifiedElement::zero(self.geometry, one_point());
        for k in 1..=self.genus() as usize {
            let ab = self.a(k).wedge(self.b(k)).expect("same labels");
            acc = acc.add(&ab).expect("same labels");
        }
        acc
    }
}

/// Builds the catalog of genus `g` (the two-spheres model for `g = 0`).
pub fn build_catalog(g: u32) -> Result<ModelFormCatalog> {
    let geometry = Geometry::for_genus(g);
    if g == 0 {
        return Ok(ModelFormCatalog {
            geometry,
            a: vec![],
            b: vec![],
            nu: StratifiedElement::from_fn(geometry, one_point(), nu_value_spheres)?,
            eta: StratifiedElement::from_fn(geometry, one_point(), eta_value_spheres)?,
            omega: StratifiedElement::from_fn(geometry, two_points(), omega_value_spheres)?,
        });
    }
    let gs = g as usize;
    let mut a = Vec::with_capacity(gs);
    let mut b = Vec::with_capacity(gs);
    for k in 1..=gs {
        a.push(StratifiedElement::from_fn(geometry, one_point(), |s| a_value(k, s))?);
        b.push(StratifiedElement::from_fn(geometry, one_point(), |s| b_value(k, s))?);
    }
    let nu = a[0].wedge(&b[0])?;
    Ok(ModelFormCatalog {
        geometry,
        a,
        b,
        nu,
        eta: StratifiedElement::from_fn(geometry, one_point(), eta_value)?,
        omega: StratifiedElement::from_fn(geometry, two_points(), omega_value_handles)?,
    })
}
