//! Normal forms of monomials and linear combinations in the unified algebra.
//!
//! A normal-form monomial is a strictly increasing list of generators in
//! which no two generators `ω_{·k}` share the upper index `k`. Reduction uses
//! the oriented Arnold relation
//!
//! `ω_{ik} ω_{jk} → ω_{ij} ω_{jk} − ω_{ij} ω_{ik}`   (`i < j < k`),
//!
//! which eliminates the largest common index, together with graded
//! commutativity and the vanishing of odd squares.

use super::label::Gen;
use crate::exactpoly::ExactScalar;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// A normal-form monomial (sorted, admissible list of generators).
pub type Mono = Vec<Gen>;

/// Sorts a word in place, returning the permutation parity, or `None` if a
/// generator repeats (odd square).
pub fn sort_word(word: &mut [Gen]) -> Option<bool> {
    let mut odd = false;
    for i in 1..word.len() {
        let mut j = i;
        while j > 0 && word[j - 1] > word[j] {
            word.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
        if j > 0 && word[j - 1] == word[j] {
            return None;
        }
    }
    Some(odd)
}

/// Rewrites a raw word into normal form, adding `coeff · nf(word)` to `out`.
pub fn reduce_word(mut word: Vec<Gen>, coeff: ExactScalar, out: &mut AlgSum) {
    let Some(odd) = sort_word(&mut word) else { return };
    let coeff = if odd { -coeff } else { coeff };
    let pair = (0..word.len().saturating_sub(1)).find(|&p| match (word[p], word[p + 1]) {
        (Gen::W { hi: a, .. }, Gen::W { hi: b, .. }) => a == b,
        _ => false,
    });
    let Some(p) = pair else {
        out.add_mono(word, coeff);
        return;
    };
    let (Gen::W { hi: k, lo: i }, Gen::W { lo: j, .. }) = (word[p], word[p + 1]) else { unreachable!() };
    let Some(wij) = Gen::omega(i, j) else { return };
    let mut first = word.clone();
    first[p] = wij;
    reduce_word(first, coeff.clone(), out);
    let mut second = word;
    second[p] = wij;
    second[p + 1] = Gen::W { hi: k, lo: i };
    reduce_word(second, -coeff, out);
}

/// Rewrites a raw word choosing, at every step, which applicable relation to
/// use via `pick(number_of_candidates)`.
///
/// Candidates are all pairs of generators in the (unsorted) word sharing the
/// upper index, including equal pairs. Used to test confluence of the
/// rewriting system.
pub fn reduce_word_with(word: Vec<Gen>, coeff: ExactScalar, out: &mut AlgSum, pick: &mut dyn FnMut(usize) -> usize) {
    let mut candidates = Vec::new();
    for p in 0..word.len() {
        for q in p + 1..word.len() {
            if let (Gen::W { hi: a, .. }, Gen::W { hi: b, .. }) = (word[p], word[q]) {
                if a == b {
                    candidates.push((p, q));
                }
            } else if word[p] == word[q] {
                candidates.push((p, q));
            }
        }
    }
    if candidates.is_empty() {
        reduce_word(word, coeff, out);
        return;
    }
    let (p, q) = candidates[pick(candidates.len()) % candidates.len()];
    if word[p] == word[q] {
        return;
    }
    // Move the generator at q next to p (it passes q − p − 1 odd generators).
    let mut w = word;
    let g = w.remove(q);
    w.insert(p + 1, g);
    let mut coeff = if (q - p - 1) % 2 == 1 { -coeff } else { coeff };
    if w[p] > w[p + 1] {
        w.swap(p, p + 1);
        coeff = -coeff;
    }
    let (Gen::W { hi: k, lo: i }, Gen::W { lo: j, .. }) = (w[p], w[p + 1]) else { unreachable!() };
    let Some(wij) = Gen::omega(i, j) else { return };
    let mut first = w.clone();
    first[p] = wij;
    reduce_word_with(first, coeff.clone(), out, pick);
    let mut second = w;
    second[p] = wij;
    second[p + 1] = Gen::W { hi: k, lo: i };
    reduce_word_with(second, -coeff, out, pick);
}

/// A linear combination of normal-form monomials in the unified algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgSum {
    terms: BTreeMap<Mono, ExactScalar>,
}

impl AlgSum {
    /// The zero element.
    pub fn zero() -> Self {
        AlgSum::default()
    }

    /// The unit.
    pub fn one() -> Self {
        Self::scalar(ExactScalar::one())
    }

    /// A scalar multiple of the unit.
    pub fn scalar(c: ExactScalar) -> Self {
        let mut s = AlgSum::zero();
        s.add_mono(Vec::new(), c);
        s
    }

    /// A single generator.
    pub fn gen(g: Gen) -> Self {
        let mut s = AlgSum::zero();
        s.add_mono(vec![g], ExactScalar::one());
        s
    }

    /// `ω_{ab}` or zero (see [`Gen::omega`]).
    pub fn omega(a: super::Label, b: super::Label) -> Self {
        Gen::omega(a, b).map(AlgSum::gen).unwrap_or_default()
    }

    /// The normal form of a product of generators.
    pub fn word(word: &[Gen]) -> Self {
        let mut s = AlgSum::zero();
        reduce_word(word.to_vec(), ExactScalar::one(), &mut s);
        s
    }

    /// Adds `c · m` where `m` is already in normal form.
    pub fn add_mono(&mut self, m: Mono, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    /// Iterates over `(monomial, coefficient)` pairs in monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &ExactScalar)> {
        self.terms.iter()
    }

    /// Consumes the sum into its term map.
    pub fn into_terms(self) -> BTreeMap<Mono, ExactScalar> {
        self.terms
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True if there are no terms (the same as being zero).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a normal-form monomial.
    pub fn coeff(&self, m: &[Gen]) -> ExactScalar {
        self.terms.get(m).cloned().unwrap_or_else(ExactScalar::zero)
    }

    /// `self += other`.
    pub fn add_assign(&mut self, other: &AlgSum) {
        for (m, c) in &other.terms {
            self.add_mono(m.clone(), c.clone());
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &AlgSum, c: &ExactScalar) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_mono(m.clone(), x * c);
        }
    }

    /// Sum.
    pub fn add(&self, other: &AlgSum) -> AlgSum {
        let mut s = self.clone();
        s.add_assign(other);
        s
    }

    /// Difference.
    pub fn sub(&self, other: &AlgSum) -> AlgSum {
        let mut s = self.clone();
        s.add_scaled(other, &-ExactScalar::one());
        s
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &ExactScalar) -> AlgSum {
        let mut s = AlgSum::zero();
        s.add_scaled(self, c);
        s
    }

    /// Negation.
    pub fn neg(&self) -> AlgSum {
        self.scale(&-ExactScalar::one())
    }

    /// Graded-commutative product, reduced to normal form.
    pub fn mul(&self, other: &AlgSum) -> AlgSum {
        let mut out = AlgSum::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut w = Vec::with_capacity(a.len() + b.len());
                w.extend_from_slice(a);
                w.extend_from_slice(b);
                reduce_word(w, ca * cb, &mut out);
            }
        }
        out
    }

    /// Degrees (number of generators) occurring in the sum.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(Vec::len).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Multiplies each term by `(−1)^{deg}`.
    pub fn parity_twist(&self) -> AlgSum {
        let mut s = self.clone();
        for (m, c) in s.terms.iter_mut() {
            if m.len() % 2 == 1 {
                *c = -c.clone();
            }
        }
        s
    }

    /// Applies the algebra homomorphism determined by generator images.
    pub fn map_hom(&self, f: &dyn Fn(Gen) -> AlgSum) -> AlgSum {
        let mut out = AlgSum::zero();
        let mut cache: BTreeMap<Gen, AlgSum> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut acc = AlgSum::scalar(c.clone());
            for g in m {
                let img = cache.entry(*g).or_insert_with(|| f(*g));
                acc = acc.mul(img);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign(&acc);
        }
        out
    }

    /// Keeps only the terms satisfying the predicate.
    pub fn filter(&self, keep: impl Fn(&Mono) -> bool) -> AlgSum {
        AlgSum { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// All generators occurring in the sum.
    pub fn generators(&self) -> std::collections::BTreeSet<Gen> {
        self.terms.keys().flatten().copied().collect()
    }

    /// Removes the generator `g` from the front of every monomial containing
    /// it (with the Koszul sign of moving it there) and drops the rest.
    pub fn strip_front(&self, g: Gen) -> AlgSum {
        let mut out = AlgSum::zero();
        for (m, c) in &self.terms {
            if let Some(pos) = m.iter().position(|x| *x == g) {
                let mut m2 = m.clone();
                m2.remove(pos);
                out.add_mono(m2, if pos % 2 == 1 { -c.clone() } else { c.clone() });
            }
        }
        out
    }
}

impl FromIterator<(Mono, ExactScalar)> for AlgSum {
    fn from_iter<I: IntoIterator<Item = (Mono, ExactScalar)>>(iter: I) -> Self {
        let mut s = AlgSum::zero();
        for (m, c) in iter {
            reduce_word(m, c, &mut s);
        }
        s
    }
}
