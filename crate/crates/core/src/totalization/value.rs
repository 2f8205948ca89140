//! Values on a single stratum: sums `Σ m ⊗ φ` of algebra monomials (in the
//! unified algebra of the stratum's tensor factors) and polynomial forms.
//!
//! Forms are written to the right of all algebra factors, so
//! `d(m ⊗ φ) = (−1)^{|m|} m ⊗ dφ` and
//! `(m ⊗ φ)(n ⊗ ψ) = (−1)^{|φ||n|} mn ⊗ φψ`.

use crate::bvalgebra::{format_sum, parse_sum, AlgSum, Gen, Mono};
use crate::error::{EngineError, Result};
use crate::exactpoly::{split_terms, ExactScalar, FaceSpec, PolyForm, SimplexShape, VarImage};
use num_traits::Zero;
use std::collections::BTreeMap;

/// A finite sum `Σ m ⊗ φ_m` over normal-form monomials `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StratumValue {
    shape: SimplexShape,
    terms: BTreeMap<Mono, PolyForm>,
}

impl StratumValue {
    /// The zero value on a form domain.
    pub fn zero(shape: SimplexShape) -> Self {
        StratumValue { shape, terms: BTreeMap::new() }
    }

    /// The constant `c · 1 ⊗ 1`.
    pub fn scalar(shape: SimplexShape, c: ExactScalar) -> Self {
        let mut v = StratumValue::zero(shape.clone());
        v.add_term(vec![], &PolyForm::constant(shape, c));
        v
    }

    /// `a ⊗ φ` for an algebra sum `a`.
    pub fn from_alg(a: &AlgSum, form: &PolyForm) -> Self {
        let mut v = StratumValue::zero(form.shape().clone());
        v.add_alg_form(a, form);
        v
    }

    /// The form domain.
    pub fn shape(&self) -> &SimplexShape {
        &self.shape
    }

    /// The monomial/form pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &PolyForm)> {
        self.terms.iter()
    }

    /// True if the value vanishes.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The form multiplying the monomial `m` (zero if absent).
    pub fn form_of(&self, m: &[Gen]) -> PolyForm {
        self.terms.get(m).cloned().unwrap_or_else(|| PolyForm::zero(self.shape.clone()))
    }

    /// Adds `m ⊗ φ` for a normal-form monomial `m`.
    pub fn add_term(&mut self, m: Mono, form: &PolyForm) {
        debug_assert_eq!(form.shape(), &self.shape);
        if form.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(form.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_unchecked(form);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Adds `a ⊗ φ`.
    pub fn add_alg_form(&mut self, a: &AlgSum, form: &PolyForm) {
        for (m, c) in a.terms() {
            self.add_term(m.clone(), &form.scale(c));
        }
    }

    /// Adds `c · other`.
    pub fn add_scaled(&mut self, other: &StratumValue, c: &ExactScalar) {
        for (m, f) in &other.terms {
            self.add_term(m.clone(), &f.scale(c));
        }
    }

    /// Sum of two values.
    pub fn add(&self, other: &StratumValue) -> StratumValue {
        let mut out = self.clone();
        out.add_scaled(other, &ExactScalar::from_integer(1.into()));
        out
    }

    /// Difference of two values.
    pub fn sub(&self, other: &StratumValue) -> StratumValue {
        let mut out = self.clone();
        out.add_scaled(other, &ExactScalar::from_integer((-1).into()));
        out
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &ExactScalar) -> StratumValue {
        let mut out = StratumValue::zero(self.shape.clone());
        if !c.is_zero() {
            out.add_scaled(self, c);
        }
        out
    }

    /// The total differential `m ⊗ φ ↦ (−1)^{|m|} m ⊗ dφ`.
    pub fn differential(&self) -> StratumValue {
        let mut out = StratumValue::zero(self.shape.clone());
        for (m, f) in &self.terms {
            let df = f.exterior_d();
            out.add_term(m.clone(), &if m.len() % 2 == 1 { df.neg() } else { df });
        }
        out
    }

    /// The product `(m ⊗ φ)(n ⊗ ψ) = (−1)^{|φ||n|} mn ⊗ φψ`.
    pub fn wedge(&self, other: &StratumValue) -> StratumValue {
        let mut out = StratumValue::zero(self.shape.clone());
        for (m, f) in &self.terms {
            for (n, g) in &other.terms {
                let mn = AlgSum::word(m).mul(&AlgSum::word(n));
                if mn.is_zero() {
                    continue;
                }
                let f = if n.len() % 2 == 1 { f.parity_twist() } else { f.clone() };
                out.add_alg_form(&mn, &f.wedge_unchecked(g));
            }
        }
        out
    }

    /// Applies an algebra homomorphism (given on generators) to the algebra part.
    pub fn map_alg(&self, f: &dyn Fn(Gen) -> AlgSum) -> StratumValue {
        self.map_alg_sum(|a| a.map_hom(f))
    }

    /// Applies a linear map of algebra sums to the algebra part.
    pub fn map_alg_sum(&self, f: impl Fn(&AlgSum) -> AlgSum) -> StratumValue {
        let mut out = StratumValue::zero(self.shape.clone());
        for (m, form) in &self.terms {
            out.add_alg_form(&f(&AlgSum::word(m)), form);
        }
        out
    }

    /// Restriction of the form part to a face.
    pub fn restrict_face(&self, face: FaceSpec) -> Result<StratumValue> {
        let shape = crate::exactpoly::face_shape(&self.shape, face)?;
        let mut out = StratumValue::zero(shape);
        for (m, f) in &self.terms {
            out.add_term(m.clone(), &f.restrict_face(face)?);
        }
        Ok(out)
    }

    /// Pullback of the form part along an affine map (see [`PolyForm::pullback`]).
    pub fn pullback(&self, target: &SimplexShape, images: &[VarImage]) -> StratumValue {
        let mut out = StratumValue::zero(target.clone());
        for (m, f) in &self.terms {
            out.add_term(m.clone(), &f.pullback(target, images));
        }
        out
    }

    /// Renders `m1 * (φ1) + m2 * (φ2)`; the empty monomial prints as `1`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, f)| {
                let alg = if m.is_empty() { "1".to_string() } else { format_sum(&AlgSum::word(m)) };
                format!("{alg} * ({})", f.to_text())
            })
            .collect();
        parts.join(" + ")
    }

    /// Parses [`StratumValue::to_text`] output on the given domain.
    pub fn parse(shape: &SimplexShape, text: &str) -> Result<StratumValue> {
        let mut out = StratumValue::zero(shape.clone());
        let text = text.trim();
        if text == "0" {
            return Ok(out);
        }
        for part in split_terms(text) {
            let (alg, form) =
                part.split_once(" * ").ok_or_else(|| EngineError::Parse(format!("bad stratum term `{part}`")))?;
            let form = form
                .trim()
                .strip_prefix('(')
                .and_then(|f| f.strip_suffix(')'))
                .ok_or_else(|| EngineError::Parse(format!("form must be parenthesized in `{part}`")))?;
            let a = if alg.trim() == "1" { AlgSum::one() } else { parse_sum(alg)? };
            out.add_alg_form(&a, &PolyForm::parse(shape, form)?);
        }
        Ok(out)
    }
}
