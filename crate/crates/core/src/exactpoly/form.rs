//! Polynomial differential forms on products of simplices.
//!
//! A [`SimplexShape`] `(r_1, …, r_g)` describes `Δ^{r_1} × … × Δ^{r_g}` where
//! each factor is realized as the chain `0 ≤ t_i^(1) ≤ … ≤ t_i^(r_i) ≤ 1`.
//! Variables are numbered handle-major: all packets of handle 1 first, then
//! handle 2, and so on.
//!
//! A [`PolyForm`] is a sparse sum of terms `c · t^e · dt_{i_1} ∧ … ∧ dt_{i_k}`
//! with `i_1 < … < i_k`; the differentials are stored as a bitmask.

use super::scalar::{fmt_coeff_prefix, join_terms, parse_coeff_and_factors, split_terms, ExactScalar};
use crate::error::{EngineError, Result};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Number of packets on each handle: the domain `Δ^{r_1} × … × Δ^{r_g}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SimplexShape {
    sizes: Vec<usize>,
}

impl SimplexShape {
    /// Creates a shape from the per-handle packet counts.
    pub fn new(sizes: Vec<usize>) -> Self {
        SimplexShape { sizes }
    }

    /// Per-handle packet counts `(r_1, …, r_g)`.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Number of handles `g`.
    pub fn handles(&self) -> usize {
        self.sizes.len()
    }

    /// Total number of variables `r_1 + … + r_g`.
    pub fn nvars(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Global index of the variable `t_handle^(k)` (both 0-based).
    pub fn var_index(&self, handle: usize, k: usize) -> usize {
        debug_assert!(k < self.sizes[handle]);
        self.sizes[..handle].iter().sum::<usize>() + k
    }

    /// Inverse of [`SimplexShape::var_index`].
    pub fn var_position(&self, idx: usize) -> (usize, usize) {
        let mut rest = idx;
        for (h, &r) in self.sizes.iter().enumerate() {
            if rest < r {
                return (h, rest);
            }
            rest -= r;
        }
        panic!("variable index {idx} out of range for shape {:?}", self.sizes)
    }

    /// Shape obtained by replacing the packet count of one handle.
    pub fn with_handle_size(&self, handle: usize, size: usize) -> SimplexShape {
        let mut sizes = self.sizes.clone();
        sizes[handle] = size;
        SimplexShape { sizes }
    }
}

/// A codimension-one face of a product of simplices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FaceSpec {
    /// `t_h^(j) = t_h^(j+1)` with `index = j` 0-based; the two packets merge.
    Collision { handle: usize, index: usize },
    /// `t_h^(1) = 0`.
    LeftEnd { handle: usize },
    /// `t_h^(r_h) = 1`.
    RightEnd { handle: usize },
}

/// Where a variable goes under a pullback along an affine face map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarImage {
    /// The variable becomes the target variable with this global index.
    Var(usize),
    /// The variable becomes a constant (its differential vanishes).
    Const(ExactScalar),
}

/// Key of a single term: exponent vector and dt bitmask.
pub type TermKey = (Vec<u16>, u64);

/// Polynomial differential form with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyForm {
    shape: SimplexShape,
    terms: BTreeMap<TermKey, ExactScalar>,
}

/// Number of set bits of `mask` strictly below bit `v`.
fn bits_below(mask: u64, v: usize) -> u32 {
    (mask & ((1u64 << v) - 1)).count_ones()
}

/// Sign of `dt_A ∧ dt_B` relative to the sorted product, `None` if they overlap.
fn merge_sign(a: u64, b: u64) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    // Count pairs (i in a, j in b) with i > j.
    let mut inversions = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros() as usize;
        inversions += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    Some(inversions % 2 == 1)
}

impl PolyForm {
    /// The zero form on `shape`.
    pub fn zero(shape: SimplexShape) -> Self {
        PolyForm { shape, terms: BTreeMap::new() }
    }

    /// The constant function `c` on `shape`.
    pub fn constant(shape: SimplexShape, c: ExactScalar) -> Self {
        let n = shape.nvars();
        let mut f = PolyForm::zero(shape);
        f.add_term(vec![0; n], 0, c);
        f
    }

    /// The constant function 1.
    pub fn one(shape: SimplexShape) -> Self {
        Self::constant(shape, ExactScalar::one())
    }

    /// The coordinate function `t_handle^(k)` (0-based indices).
    pub fn var(shape: SimplexShape, handle: usize, k: usize) -> Self {
        let v = shape.var_index(handle, k);
        Self::monomial(shape, v, 1, false)
    }

    /// The one-form `dt_handle^(k)` (0-based indices).
    pub fn dvar(shape: SimplexShape, handle: usize, k: usize) -> Self {
        let v = shape.var_index(handle, k);
        Self::monomial(shape, v, 0, true)
    }

    /// `t_v^e` or `t_v^e dt_v` for the global variable `v`.
    fn monomial(shape: SimplexShape, v: usize, e: u16, with_dt: bool) -> Self {
        let mut exps = vec![0; shape.nvars()];
        exps[v] = e;
        let mut f = PolyForm::zero(shape);
        f.add_term(exps, if with_dt { 1 << v } else { 0 }, ExactScalar::one());
        f
    }

    /// Builds a form from explicit terms, merging duplicates.
    pub fn from_terms(
        shape: SimplexShape,
        terms: impl IntoIterator<Item = (Vec<u16>, u64, ExactScalar)>,
    ) -> Result<Self> {
        let n = shape.nvars();
        let mut f = PolyForm::zero(shape);
        for (e, m, c) in terms {
            if e.len() != n || (n < 64 && m >> n != 0) {
                return Err(EngineError::ShapeMismatch(format!(
                    "term with {} exponents / mask {m:#b} on a {n}-variable shape",
                    e.len()
                )));
            }
            f.add_term(e, m, c);
        }
        Ok(f)
    }

    /// The domain shape.
    pub fn shape(&self) -> &SimplexShape {
        &self.shape
    }

    /// Iterates over `((exponents, dt-mask), coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &ExactScalar)> {
        self.terms.iter()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True if there are no nonzero terms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the zero form.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · t^e dt_mask` in place.
    pub fn add_term(&mut self, exps: Vec<u16>, mask: u64, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((exps, mask)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Form degrees occurring in the terms (sorted, deduplicated).
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|(_, m)| m.count_ones()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The form degree if the form is homogeneous (zero counts as degree 0).
    pub fn degree(&self) -> Option<u32> {
        match self.degrees().as_slice() {
            [] => Some(0),
            [d] => Some(*d),
            _ => None,
        }
    }

    /// Splits the form into homogeneous pieces by form degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, PolyForm> {
        let mut out: BTreeMap<u32, PolyForm> = BTreeMap::new();
        for ((e, m), c) in &self.terms {
            out.entry(m.count_ones()).or_insert_with(|| PolyForm::zero(self.shape.clone())).add_term(
                e.clone(),
                *m,
                c.clone(),
            );
        }
        out
    }

    fn check_shape(&self, other: &PolyForm) -> Result<()> {
        if self.shape != other.shape {
            return Err(EngineError::ShapeMismatch(format!("{:?} vs {:?}", self.shape.sizes, other.shape.sizes)));
        }
        Ok(())
    }

    /// Sum of two forms on the same shape.
    pub fn add(&self, other: &PolyForm) -> Result<PolyForm> {
        self.check_shape(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    /// `self += other` (shapes must agree; checked in debug builds).
    pub fn add_assign_unchecked(&mut self, other: &PolyForm) {
        debug_assert_eq!(self.shape, other.shape);
        for ((e, m), c) in &other.terms {
            self.add_term(e.clone(), *m, c.clone());
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &PolyForm, c: &ExactScalar) {
        debug_assert_eq!(self.shape, other.shape);
        if c.is_zero() {
            return;
        }
        for ((e, m), x) in &other.terms {
            self.add_term(e.clone(), *m, x * c);
        }
    }

    /// Difference of two forms on the same shape.
    pub fn sub(&self, other: &PolyForm) -> Result<PolyForm> {
        self.check_shape(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &-ExactScalar::one());
        Ok(out)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &ExactScalar) -> PolyForm {
        let mut out = PolyForm::zero(self.shape.clone());
        if c.is_zero() {
            return out;
        }
        for (k, x) in &self.terms {
            out.terms.insert(k.clone(), x * c);
        }
        out
    }

    /// The negated form.
    pub fn neg(&self) -> PolyForm {
        self.scale(&-ExactScalar::one())
    }

    /// Multiplies odd-degree terms by −1: the sign `(−1)^{deg}`.
    pub fn parity_twist(&self) -> PolyForm {
        let mut out = self.clone();
        for ((_, m), c) in out.terms.iter_mut() {
            if m.count_ones() % 2 == 1 {
                *c = -c.clone();
            }
        }
        out
    }

    /// Graded product `self ∧ other`.
    pub fn wedge(&self, other: &PolyForm) -> Result<PolyForm> {
        self.check_shape(other)?;
        Ok(self.wedge_unchecked(other))
    }

    /// Graded product without the shape check.
    pub fn wedge_unchecked(&self, other: &PolyForm) -> PolyForm {
        let mut out = PolyForm::zero(self.shape.clone());
        for ((ea, ma), ca) in &self.terms {
            for ((eb, mb), cb) in &other.terms {
                let Some(odd) = merge_sign(*ma, *mb) else { continue };
                let e: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = ca * cb;
                out.add_term(e, ma | mb, if odd { -c } else { c });
            }
        }
        out
    }

    /// Exterior derivative.
    pub fn exterior_d(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.shape.clone());
        for ((e, m), c) in &self.terms {
            for (v, &ev) in e.iter().enumerate() {
                if ev == 0 || m & (1 << v) != 0 {
                    continue;
                }
                let mut e2 = e.clone();
                e2[v] -= 1;
                let mut c2 = c * ExactScalar::from_integer(ev.into());
                if bits_below(*m, v) % 2 == 1 {
                    c2 = -c2;
                }
                out.add_term(e2, m | (1 << v), c2);
            }
        }
        out
    }

    /// Pullback along the affine map sending old variable `v` to `images[v]`.
    ///
    /// `target` is the shape of the source of the map (the new domain).
    pub fn pullback(&self, target: &SimplexShape, images: &[VarImage]) -> PolyForm {
        assert_eq!(images.len(), self.shape.nvars(), "pullback image count");
        let n = target.nvars();
        let mut out = PolyForm::zero(target.clone());
        'terms: for ((e, m), c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = vec![0u16; n];
            for (v, &ev) in e.iter().enumerate() {
                if ev == 0 {
                    continue;
                }
                match &images[v] {
                    VarImage::Var(w) => exps[*w] += ev,
                    VarImage::Const(k) => {
                        if k.is_zero() {
                            continue 'terms;
                        }
                        coeff *= num_traits::pow(k.clone(), ev as usize);
                    }
                }
            }
            // Map the differentials in order, tracking the permutation sign.
            let mut mask = 0u64;
            let mut odd = false;
            let mut mm = *m;
            while mm != 0 {
                let v = mm.trailing_zeros() as usize;
                mm &= mm - 1;
                match &images[v] {
                    VarImage::Const(_) => continue 'terms,
                    VarImage::Var(w) => {
                        if mask & (1 << w) != 0 {
                            continue 'terms;
                        }
                        // Appending dt_w after the current product; sort it in.
                        odd ^= (mask >> (w + 1)).count_ones() % 2 == 1;
                        mask |= 1 << w;
                    }
                }
            }
            out.add_term(exps, mask, if odd { -coeff } else { coeff });
        }
        out
    }

    /// Shape of the given face of this form's domain.
    pub fn face_shape(&self, face: FaceSpec) -> Result<SimplexShape> {
        face_shape(&self.shape, face)
    }

    /// Restriction (pullback) to a codimension-one face.
    pub fn restrict_face(&self, face: FaceSpec) -> Result<PolyForm> {
        let target = face_shape(&self.shape, face)?;
        let images = face_images(&self.shape, face)?;
        Ok(self.pullback(&target, &images))
    }

    /// Evaluates the coefficient of `dt_mask` at a point (given per variable).
    pub fn evaluate(&self, point: &[ExactScalar], mask: u64) -> ExactScalar {
        let mut acc = ExactScalar::zero();
        for ((e, m), c) in &self.terms {
            if *m != mask {
                continue;
            }
            let mut x = c.clone();
            for (v, &ev) in e.iter().enumerate() {
                if ev > 0 {
                    x *= num_traits::pow(point[v].clone(), ev as usize);
                }
            }
            acc += x;
        }
        acc
    }

    /// Integration along the fiber of the forgetful map dropping the packets
    /// with `retained[h][k] == false`.
    ///
    /// The fiber is oriented by the forgotten differentials in increasing
    /// variable order, placed in front: a term `dt_F ∧ φ` integrates to
    /// `(∫ coefficient) φ`. Each maximal run of forgotten variables between
    /// retained neighbours (or the ends 0 and 1) is integrated over the
    /// corresponding sub-chain, innermost variable first.
    pub fn fiber_integrate(&self, retained: &[Vec<bool>]) -> Result<PolyForm> {
        let sizes = self.shape.sizes();
        if retained.len() != sizes.len() || retained.iter().zip(sizes).any(|(r, &s)| r.len() != s) {
            return Err(EngineError::ShapeMismatch(format!("retention marking does not match shape {sizes:?}")));
        }
        let n = self.shape.nvars();
        let mut forgotten_mask = 0u64;
        let mut new_sizes = Vec::with_capacity(sizes.len());
        let mut new_index = vec![usize::MAX; n];
        let mut next = 0usize;
        for (h, marks) in retained.iter().enumerate() {
            let mut kept = 0;
            for (k, &keep) in marks.iter().enumerate() {
                let v = self.shape.var_index(h, k);
                if keep {
                    new_index[v] = next;
                    next += 1;
                    kept += 1;
                } else {
                    forgotten_mask |= 1 << v;
                }
            }
            new_sizes.push(kept);
        }
        let target = SimplexShape::new(new_sizes);

        // Strip the forgotten differentials (moved to the front, ascending).
        let mut poly = PolyForm::zero(self.shape.clone());
        for ((e, m), c) in &self.terms {
            if m & forgotten_mask != forgotten_mask {
                continue;
            }
            let rest = m & !forgotten_mask;
            // dt_m = ± dt_F ∧ dt_rest; the sign counts pairs (r in rest, f in F) with r < f.
            let mut inv = 0u32;
            let mut ff = forgotten_mask;
            while ff != 0 {
                let f = ff.trailing_zeros() as usize;
                ff &= ff - 1;
                inv += bits_below(rest, f);
            }
            poly.add_term(e.clone(), rest, if inv % 2 == 1 { -c.clone() } else { c.clone() });
        }

        // Integrate runs of forgotten variables, innermost (smallest) first.
        for (h, marks) in retained.iter().enumerate() {
            let mut k = 0;
            while k < marks.len() {
                if marks[k] {
                    k += 1;
                    continue;
                }
                let start = k;
                while k < marks.len() && !marks[k] {
                    k += 1;
                }
                let lower = if start == 0 {
                    VarBound::Const(ExactScalar::zero())
                } else {
                    VarBound::Var(self.shape.var_index(h, start - 1))
                };
                let upper = if k == marks.len() {
                    VarBound::Const(ExactScalar::one())
                } else {
                    VarBound::Var(self.shape.var_index(h, k))
                };
                for j in start..k {
                    let v = self.shape.var_index(h, j);
                    let up = if j + 1 < k { VarBound::Var(self.shape.var_index(h, j + 1)) } else { upper.clone() };
                    poly = poly.integrate_var(v, &lower, &up);
                }
            }
        }

        // Reindex onto the retained variables.
        let mut out = PolyForm::zero(target);
        for ((e, m), c) in poly.terms {
            let mut e2 = vec![0u16; next];
            let mut m2 = 0u64;
            for v in 0..n {
                if new_index[v] != usize::MAX {
                    e2[new_index[v]] = e[v];
                    if m & (1 << v) != 0 {
                        m2 |= 1 << new_index[v];
                    }
                } else {
                    debug_assert_eq!(e[v], 0);
                }
            }
            out.add_term(e2, m2, c);
        }
        Ok(out)
    }

    /// Definite integral `∫_{lower}^{upper} (·) dt_v` applied to the
    /// polynomial coefficients; `v` must not carry a differential.
    pub fn integrate_var(&self, v: usize, lower: &VarBound, upper: &VarBound) -> PolyForm {
        let mut out = PolyForm::zero(self.shape.clone());
        for ((e, m), c) in &self.terms {
            debug_assert_eq!(m & (1 << v), 0);
            let p = e[v] + 1;
            let c2 = c / ExactScalar::from_integer(p.into());
            for (bound, sgn) in [(upper, false), (lower, true)] {
                let mut e2 = e.clone();
                e2[v] = 0;
                let mut cc = c2.clone();
                match bound {
                    VarBound::Var(w) => e2[*w] += p,
                    VarBound::Const(k) => cc *= num_traits::pow(k.clone(), p as usize),
                }
                out.add_term(e2, *m, if sgn { -cc } else { cc });
            }
        }
        out
    }

    /// Renders the form in the text syntax accepted by [`PolyForm::parse`].
    pub fn to_text(&self) -> String {
        let terms = self
            .terms
            .iter()
            .map(|((e, m), c)| {
                let mut factors = Vec::new();
                for (v, &ev) in e.iter().enumerate() {
                    if ev > 0 {
                        let (h, k) = self.shape.var_position(v);
                        if ev == 1 {
                            factors.push(format!("t{}.{}", h + 1, k + 1));
                        } else {
                            factors.push(format!("t{}.{}^{}", h + 1, k + 1, ev));
                        }
                    }
                }
                let mut mm = *m;
                while mm != 0 {
                    let v = mm.trailing_zeros() as usize;
                    mm &= mm - 1;
                    let (h, k) = self.shape.var_position(v);
                    factors.push(format!("dt{}.{}", h + 1, k + 1));
                }
                format!("{}{}", fmt_coeff_prefix(c, !factors.is_empty()), factors.join("*"))
            })
            .collect();
        join_terms(terms)
    }

    /// Parses the text syntax `-1/2*t1.1^2*dt1.2 + 3` on the given shape.
    ///
    /// Differentials inside a term may appear in any order; the Koszul sign of
    /// sorting them is applied.
    pub fn parse(shape: &SimplexShape, text: &str) -> Result<PolyForm> {
        let n = shape.nvars();
        let mut out = PolyForm::zero(shape.clone());
        let text = text.trim();
        if text == "0" || text.is_empty() {
            return Ok(out);
        }
        for term in split_terms(text) {
            let (mut c, factors) = parse_coeff_and_factors(&term)?;
            let mut e = vec![0u16; n];
            let mut mask = 0u64;
            for f in factors {
                let (is_d, body) = match f.strip_prefix("dt") {
                    Some(b) => (true, b),
                    None => match f.strip_prefix('t') {
                        Some(b) => (false, b),
                        None => return Err(EngineError::Parse(format!("bad factor `{f}`"))),
                    },
                };
                let (var, pow) = match body.split_once('^') {
                    Some((v, p)) => {
                        (v, p.parse::<u16>().map_err(|_| EngineError::Parse(format!("bad exponent in `{f}`")))?)
                    }
                    None => (body, 1),
                };
                let (h, k) = var.split_once('.').ok_or_else(|| EngineError::Parse(format!("bad variable `{f}`")))?;
                let h: usize = h.parse().map_err(|_| EngineError::Parse(format!("bad handle in `{f}`")))?;
                let k: usize = k.parse().map_err(|_| EngineError::Parse(format!("bad packet in `{f}`")))?;
                if h == 0 || h > shape.handles() || k == 0 || k > shape.sizes()[h - 1] {
                    return Err(EngineError::Parse(format!("variable `{f}` outside shape {:?}", shape.sizes())));
                }
                let v = shape.var_index(h - 1, k - 1);
                if is_d {
                    if pow != 1 || mask & (1 << v) != 0 {
                        c = ExactScalar::zero();
                    }
                    if (mask >> (v + 1)).count_ones() % 2 == 1 {
                        c = -c;
                    }
                    mask |= 1 << v;
                } else {
                    e[v] += pow;
                }
            }
            out.add_term(e, mask, c);
        }
        Ok(out)
    }
}

/// A bound of integration: a variable or a constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarBound {
    /// Global variable index.
    Var(usize),
    /// Rational constant.
    Const(ExactScalar),
}

/// Shape of a face of `shape`.
pub fn face_shape(shape: &SimplexShape, face: FaceSpec) -> Result<SimplexShape> {
    let (handle, ok) = match face {
        FaceSpec::Collision { handle, index } => {
            (handle, handle < shape.handles() && index + 1 < shape.sizes()[handle])
        }
        FaceSpec::LeftEnd { handle } | FaceSpec::RightEnd { handle } => {
            (handle, handle < shape.handles() && shape.sizes()[handle] > 0)
        }
    };
    if !ok {
        return Err(EngineError::FaceOutOfRange(format!("{face:?} on shape {:?}", shape.sizes())));
    }
    Ok(shape.with_handle_size(handle, shape.sizes()[handle] - 1))
}

/// Images of the variables of `shape` under the inclusion of a face.
pub fn face_images(shape: &SimplexShape, face: FaceSpec) -> Result<Vec<VarImage>> {
    let target = face_shape(shape, face)?;
    let mut images = Vec::with_capacity(shape.nvars());
    for h in 0..shape.handles() {
        for k in 0..shape.sizes()[h] {
            let img = match face {
                FaceSpec::Collision { handle, index } if handle == h => {
                    let k2 = if k > index { k - 1 } else { k };
                    VarImage::Var(target.var_index(h, k2))
                }
                FaceSpec::LeftEnd { handle } if handle == h => {
                    if k == 0 {
                        VarImage::Const(ExactScalar::zero())
                    } else {
                        VarImage::Var(target.var_index(h, k - 1))
                    }
                }
                FaceSpec::RightEnd { handle } if handle == h => {
                    if k + 1 == shape.sizes()[h] {
                        VarImage::Const(ExactScalar::one())
                    } else {
                        VarImage::Var(target.var_index(h, k))
                    }
                }
                _ => VarImage::Var(target.var_index(h, k)),
            };
            images.push(img);
        }
    }
    Ok(images)
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Graded product of two forms.
pub fn wedge(a: &PolyForm, b: &PolyForm) -> Result<PolyForm> {
    a.wedge(b)
}

/// Exterior derivative of a form.
pub fn exterior_d(a: &PolyForm) -> PolyForm {
    a.exterior_d()
}

/// Restriction of a form to a face.
pub fn restrict_face(a: &PolyForm, face: FaceSpec) -> Result<PolyForm> {
    a.restrict_face(face)
}

/// Fiber integration forgetting the packets not marked as retained.
pub fn fiber_integrate(a: &PolyForm, retained: &[Vec<bool>]) -> Result<PolyForm> {
    a.fiber_integrate(retained)
}
