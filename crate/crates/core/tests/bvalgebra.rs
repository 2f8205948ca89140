//! Presented Arnold-type algebras: normal forms, dimensions against an
//! independent linear-algebra oracle, cocompositions, the involution and
//! both co-Leibniz identities.

use framedconf::bvalgebra::*;
use framedconf::exactpoly::{q, qi, ExactScalar};
use num_traits::{One, Zero};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn el(p: &Presentation, s: &str) -> AlgElement {
    AlgElement::parse(p, s).unwrap()
}

fn set(v: &[u32]) -> BTreeSet<u32> {
    v.iter().copied().collect()
}

// ==== oracle: quotient dimensions by exact Gaussian elimination ====

/// Rank of a rational matrix given as rows.
fn rank(mut rows: Vec<Vec<ExactScalar>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                let (pivot_row, row) = if i < r {
                    let (lo, hi) = rows.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = rows.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= p * &f;
                }
            }
        }
        r += 1;
    }
    r
}

/// Exterior-algebra product of basis bitmasks, with sign.
fn ext_mul(a: u32, b: u32) -> Option<(u32, bool)> {
    if a & b != 0 {
        return None;
    }
    let mut odd = false;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        odd ^= (a >> (j + 1)).count_ones() % 2 == 1;
        bb &= bb - 1;
    }
    Some((a | b, odd))
}

/// Graded dimensions of Λ(gens) / (quadratic relations), degree by degree.
///
/// `relations` are quadratic elements given as lists of (coefficient, i, j)
/// meaning `c · x_i x_j`.
fn quotient_dims(ngens: usize, relations: &[Vec<(i64, usize, usize)>]) -> Vec<usize> {
    let mut dims = Vec::new();
    for d in 0..=ngens {
        let cols: Vec<u32> = (0u32..1 << ngens).filter(|m| m.count_ones() as usize == d).collect();
        let col_of = |m: u32| cols.iter().position(|&x| x == m).unwrap();
        let mut rows = Vec::new();
        if d >= 2 {
            for rel in relations {
                for m in (0u32..1 << ngens).filter(|m| m.count_ones() as usize == d - 2) {
                    let mut row = vec![ExactScalar::zero(); cols.len()];
                    for &(c, i, j) in rel {
                        let Some((ij, s1)) = ext_mul(1 << i, 1 << j) else { continue };
                        let Some((full, s2)) = ext_mul(m, ij) else { continue };
                        let sign = if s1 ^ s2 { -c } else { c };
                        row[col_of(full)] += qi(sign);
                    }
                    rows.push(row);
                }
            }
        }
        dims.push(cols.len() - rank(rows));
    }
    while dims.len() > 1 && *dims.last().unwrap() == 0 {
        dims.pop();
    }
    dims
}

/// Oracle dimensions of the Arnold algebra on `points` ordinary points
/// (framed: each carries a free θ) plus `fixed` unframed points whose
/// mutual ω vanish (`fixed_pairs_vanish`) or are kept.
fn arnold_oracle(points: usize, fixed: usize, fixed_pairs_vanish: bool) -> Vec<usize> {
    let n = points + fixed;
    // generators: ω_{ab} for a<b (excluding fixed–fixed pairs if they vanish), then θ_p
    let mut idx = std::collections::BTreeMap::new();
    for b in 0..n {
        for a in 0..b {
            let both_fixed = a >= points && b >= points;
            if !(both_fixed && fixed_pairs_vanish) {
                let k = idx.len();
                idx.insert((a, b), k);
            }
        }
    }
    let ngens = idx.len() + points;
    let w = |a: usize, b: usize| idx.get(&(a.min(b), a.max(b))).copied();
    let mut rels = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                // ω_ij ω_jk + ω_jk ω_ki + ω_ki ω_ij, dropping vanishing generators
                let mut rel = Vec::new();
                for (x, y) in [((i, j), (j, k)), ((j, k), (k, i)), ((k, i), (i, j))] {
                    if let (Some(p), Some(q)) = (w(x.0, x.1), w(y.0, y.1)) {
                        rel.push((1, p, q));
                    }
                }
                if !rel.is_empty() {
                    rels.push(rel);
                }
            }
        }
    }
    quotient_dims(ngens, &rels)
}

fn poly_mul(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn trim(mut v: Vec<usize>) -> Vec<usize> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

/// `Π_{k=0}^{r-1} (1 + (m + k) t) · (1 + t)^r`.
fn product_formula(r: usize, m: usize) -> Vec<usize> {
    let mut p = vec![1];
    for k in 0..r {
        p = poly_mul(&p, &[1, m + k]);
        p = poly_mul(&p, &[1, 1]);
    }
    trim(p)
}

// ==== normal form ====

#[test]
fn symmetry_of_omega() {
    let p = Presentation::bv([1, 2]);
    assert_eq!(el(&p, "w(2,1)"), el(&p, "w(1,2)"));
}

#[test]
fn odd_square_vanishes() {
    let p = Presentation::bv([1]);
    assert!(el(&p, "t(1)*t(1)").is_zero());
}

#[test]
fn arnold_rewrite_eliminates_largest_common_index() {
    let p = Presentation::bv([1, 2, 3]);
    let lhs = p.normal_form(&[Gen::w(1, 3), Gen::w(2, 3)]).unwrap();
    assert_eq!(lhs, el(&p, "w(1,2)*w(2,3) - w(1,2)*w(1,3)"));
    assert_eq!(lhs.to_text(), "-w(1,2)*w(1,3) + w(1,2)*w(2,3)");
}

#[test]
fn unknown_generator_is_rejected() {
    let p = Presentation::bv([1, 2]);
    assert!(p.normal_form(&[Gen::w(1, 3)]).is_err());
    assert!(AlgElement::parse(&p, "w(*,1)").is_err());
    assert!(AlgElement::parse(&Presentation::bvgg(1, [1]), "w(1,_o 2)").is_err());
}

// ==== multiplication ====

#[test]
fn unit_and_odd_square_and_koszul() {
    let p = Presentation::bv([1, 2]);
    let w = el(&p, "w(1,2)");
    assert_eq!(AlgElement::one(p.clone()).multiply(&w).unwrap(), w);
    assert!(w.multiply(&w).unwrap().is_zero());
    let c = Presentation::bvc([1]);
    let t = el(&c, "t(1)");
    let s = el(&c, "w(*,1)");
    assert_eq!(t.multiply(&s).unwrap(), s.multiply(&t).unwrap().scale(&qi(-1)));
}

#[test]
fn multiply_rejects_mismatch() {
    let a = el(&Presentation::bv([1, 2]), "w(1,2)");
    let b = el(&Presentation::bv([1, 2, 3]), "w(1,2)");
    assert!(a.multiply(&b).is_err());
}

// ==== bases and dimensions ====

#[test]
fn bv_two_points_dimensions() {
    let p = Presentation::bv([1, 2]);
    assert_eq!(p.basis(0), vec![Vec::<Gen>::new()]);
    assert_eq!(p.poincare(), vec![1, 3, 3, 1]);
}

#[test]
fn unframed_three_point_dimensions() {
    let p = Presentation::bv([1, 2, 3]);
    let dims: Vec<usize> =
        (0..=3).map(|d| p.basis(d).iter().filter(|m| !m.iter().any(|g| matches!(g, Gen::T(_)))).count()).collect();
    assert_eq!(trim(dims), vec![1, 3, 2]);
}

#[test]
fn bv_dimensions_match_product_formula_and_oracle() {
    for r in 1..=4usize {
        let p = Presentation::bv(1..=r as u32);
        let expected = product_formula(r, 0);
        assert_eq!(trim(p.poincare()), expected, "basis r={r}");
        assert_eq!(arnold_oracle(r, 0, true), expected, "oracle r={r}");
    }
}

#[test]
fn bvc_dimensions_match_oracle() {
    for r in 1..=3usize {
        let p = Presentation::bvc(1..=r as u32);
        assert_eq!(trim(p.poincare()), arnold_oracle(r, 1, true), "r={r}");
        assert_eq!(trim(p.poincare()), product_formula(r, 1));
    }
}

#[test]
fn bvgg_dimensions_match_oracle() {
    for g in 0..=2u32 {
        let marked = if g == 0 { 0 } else { 2 * g as usize - 1 };
        for r in 1..=2usize {
            let p = Presentation::bvgg(g, 1..=r as u32);
            assert_eq!(trim(p.poincare()), arnold_oracle(r, marked, true), "g={g} r={r}");
            assert_eq!(trim(p.poincare()), product_formula(r, marked), "g={g} r={r}");
        }
    }
}

#[test]
fn basis_is_duplicate_free_and_normal() {
    let p = Presentation::bvgg(2, [1, 2, 3]);
    for d in 0..=6 {
        let b = p.basis(d);
        let uniq: BTreeSet<_> = b.iter().cloned().collect();
        assert_eq!(uniq.len(), b.len());
        for m in &b {
            let nf = p.normal_form(m).unwrap();
            assert_eq!(nf.sum().coeff(m), ExactScalar::one());
            assert_eq!(nf.sum().len(), 1);
        }
    }
}

// ==== confluence ====

fn all_gens(p: &Presentation) -> Vec<Gen> {
    p.basis(1).into_iter().map(|m| m[0]).collect()
}

fn nf_with(word: &[Gen], choices: &[usize]) -> AlgSum {
    let mut out = AlgSum::zero();
    let mut i = 0;
    reduce_word_with(word.to_vec(), ExactScalar::one(), &mut out, &mut |n| {
        let c = choices[i % choices.len()] % n;
        i += 1;
        c
    });
    out
}

#[test]
fn confluence_exhaustive_arity_three() {
    for p in [Presentation::bv([1, 2, 3]), Presentation::bvc([1, 2, 3]), Presentation::bvgg(2, [1, 2, 3])] {
        let gens = all_gens(&p);
        for &a in &gens {
            for &b in &gens {
                for &c in &gens {
                    let word = [a, b, c];
                    let reference = AlgSum::word(&word);
                    for choices in [[0usize, 0], [1, 0], [2, 1], [1, 2], [0, 1]] {
                        assert_eq!(nf_with(&word, &choices), reference, "{word:?}");
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn confluence_random_arity_four(
        idx in proptest::collection::vec(0usize..1000, 2..6),
        choices in proptest::collection::vec(0usize..7, 1..8),
        which in 0usize..2,
    ) {
        let p = if which == 0 { Presentation::bvc([1, 2, 3, 4]) } else { Presentation::bvgg(2, [1, 2, 3, 4]) };
        let gens = all_gens(&p);
        let word: Vec<Gen> = idx.iter().map(|i| gens[i % gens.len()]).collect();
        prop_assert_eq!(nf_with(&word, &choices), AlgSum::word(&word));
    }

    #[test]
    fn normal_form_is_idempotent(idx in proptest::collection::vec(0usize..1000, 0..6)) {
        let p = Presentation::bvgg(2, [1, 2, 3]);
        let gens = all_gens(&p);
        let word: Vec<Gen> = idx.iter().map(|i| gens[i % gens.len()]).collect();
        let a = AlgSum::word(&word);
        for (m, _) in a.terms() {
            let again = AlgSum::word(m);
            prop_assert_eq!(again.len(), 1);
            prop_assert_eq!(again.coeff(m), ExactScalar::one());
        }
    }
}

// ==== random elements ====

fn random_element(p: &Presentation, picks: &[(usize, i64)]) -> AlgElement {
    let all: Vec<Mono> = (0..=2 * p.labels().len()).flat_map(|d| p.basis(d)).collect();
    let mut s = AlgSum::zero();
    for &(i, c) in picks {
        s.add_mono(all[i % all.len()].clone(), qi(c));
    }
    AlgElement::new(p.clone(), s).unwrap()
}

/// Drops the terms carrying the framing class of the moving point `pt`: the
/// co-Leibniz identities concern exactly these elements (for instance
/// `ω_{12}θ_2` has `∂_{2,1} = ±θ_1` but `∂_{2,∞} = 0`).
fn without_theta(a: &AlgElement, pt: u32) -> AlgElement {
    AlgElement::new(a.presentation().clone(), a.sum().filter(|m| !m.contains(&Gen::T(pt)))).unwrap()
}

fn picks() -> impl Strategy<Value = Vec<(usize, i64)>> {
    proptest::collection::vec((0usize..100_000, -3i64..4), 1..5)
}

// ==== structure maps are well defined ====

/// A structure map given on generators must agree on a raw word and on its
/// normal form.
fn respects_relations(word: &[Gen], f: &dyn Fn(Gen) -> AlgSum) -> bool {
    let mut raw = AlgSum::one();
    for g in word {
        raw = raw.mul(&f(*g));
    }
    AlgSum::word(word).map_hom(f) == raw
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn structure_maps_respect_relations(idx in proptest::collection::vec(0usize..1000, 2..5)) {
        let p = Presentation::bvgg(2, [1, 2, 3, 4]);
        let gens = all_gens(&p);
        let word: Vec<Gen> = idx.iter().map(|i| gens[i % gens.len()]).collect();
        let g12 = set(&[1, 2]);
        let g3 = set(&[3]);
        prop_assert!(respects_relations(&word, &collapse_image(&g12, 9)));
        prop_assert!(respects_relations(&word, &marked_image(&g12, Label::Under(1))));
        prop_assert!(respects_relations(&word, &marked_image(&g3, Label::Over(2))));
        prop_assert!(respects_relations(&word, &infinity_image(&g12)));
        let c = Presentation::bvc([1, 2, 3]);
        let cg = all_gens(&c);
        let cword: Vec<Gen> = idx.iter().map(|i| cg[i % cg.len()]).collect();
        prop_assert!(respects_relations(&cword, &involution_image(c.labels())));
        prop_assert!(respects_relations(&cword, &merge_image(&set(&[1]), &set(&[2, 3]))));
        prop_assert!(respects_relations(&cword, &marked_image(&g12, Label::Star)));
        prop_assert!(respects_relations(&cword, &infinity_image(&g3)));
    }
}

// ==== cocompositions ====

#[test]
fn cocompose_internal_edge() {
    let p = Presentation::bv([1, 2]);
    let t = cocompose(&el(&p, "w(1,2)"), &[1, 2], 7).unwrap();
    assert_eq!(t.coeff(&[Gen::T(7)], &[]), qi(1));
    assert_eq!(t.coeff(&[], &[Gen::w(1, 2)]), qi(1));
    assert_eq!(t.terms().count(), 2);
}

#[test]
fn cocompose_relabels_external_edge() {
    let p = Presentation::bv([1, 2, 3]);
    let t = cocompose(&el(&p, "w(1,3)"), &[1, 2], 7).unwrap();
    assert_eq!(t.coeff(&[Gen::w(3, 7)], &[]), qi(1));
    assert_eq!(t.terms().count(), 1);
}

#[test]
fn cocompose_theta() {
    let p = Presentation::bv([1]);
    let t = cocompose(&el(&p, "t(1)"), &[1], 7).unwrap();
    assert_eq!(t.coeff(&[Gen::T(7)], &[]), qi(1));
    assert_eq!(t.coeff(&[], &[Gen::T(1)]), qi(1));
    assert_eq!(t.terms().count(), 2);
}

#[test]
fn cocompose_rejects_bad_group() {
    let p = Presentation::bv([1, 2]);
    assert!(cocompose(&el(&p, "w(1,2)"), &[3], 7).is_err());
    assert!(cocompose(&el(&p, "w(1,2)"), &[1], 2).is_err());
}

#[test]
fn marked_coaction_bulk_to_cylinder() {
    let p = Presentation::bvgg(1, [1]);
    let t = cocompose_at_marked(&el(&p, "w(1,_u 1)"), 1, Target::Under(1)).unwrap();
    assert_eq!(t.coeff(&[Gen::star(1)], &[]), qi(1));
    assert_eq!(t.terms().count(), 1);
}

#[test]
fn cylinder_edge_towards_star_has_no_cobracket_part() {
    let p = Presentation::bvc([1, 2]);
    let t = cocompose_at_marked(&el(&p, "w(1,2)"), 1, Target::Star).unwrap();
    for ((l, _), _) in t.terms() {
        assert_ne!(l, &vec![Gen::star(1)]);
    }
    assert_eq!(t.coeff(&[], &[Gen::star(2)]), qi(1));
}

#[test]
fn theta_passes_through_up_to_involution() {
    let p = Presentation::bvgg(2, [1]);
    let th = el(&p, "t(1)");
    for target in [Target::Under(1), Target::Under(2), Target::Infinity] {
        let t = cocompose_at_marked(&th, 1, target).unwrap();
        assert_eq!(t.coeff(&[Gen::T(1)], &[]), qi(1));
        assert_eq!(t.terms().count(), 1);
    }
    let t = cocompose_at_marked(&th, 1, Target::Over(2)).unwrap();
    assert_eq!(t.coeff(&[Gen::T(1)], &[]), qi(1));
    assert_eq!(t.coeff(&[Gen::star(1)], &[]), qi(-2));
}

#[test]
fn marked_coaction_rejects_invalid_target() {
    let p = Presentation::bvgg(1, [1]);
    let a = el(&p, "t(1)");
    assert!(cocompose_at_marked(&a, 1, Target::Over(1)).is_err());
    assert!(cocompose_at_marked(&a, 1, Target::Star).is_err());
    assert!(cocompose_at_marked(&a, 2, Target::Under(1)).is_err());
}

// ==== cobracket projection and boundary ====

#[test]
fn cobracket_projection_values() {
    let p = Presentation::bvc([1]);
    assert_eq!(cobracket_projection(&el(&p, "w(*,1)")).unwrap(), qi(1));
    assert_eq!(cobracket_projection(&el(&p, "1")).unwrap(), qi(0));
    assert_eq!(cobracket_projection(&el(&p, "t(1)")).unwrap(), qi(0));
    assert_eq!(cobracket_projection(&el(&p, "w(*,1)*t(1)")).unwrap(), qi(0));
    assert!(cobracket_projection(&el(&Presentation::bv([1]), "t(1)")).is_err());
}

#[test]
fn framing_class_at_moving_point_breaks_co_leibniz() {
    let p = Presentation::bv([1, 2]);
    let a = el(&p, "w(1,2)*t(2)");
    assert!(boundary(&a, 2, Target::Infinity).unwrap().is_zero());
    assert!(!boundary(&a, 2, Target::Point(1)).unwrap().is_zero());
}

#[test]
fn boundary_of_edge_and_unit() {
    let p = Presentation::bv([1, 2]);
    let one = AlgElement::one(Presentation::bv([2]));
    assert_eq!(boundary(&el(&p, "w(1,2)"), 1, Target::Point(2)).unwrap(), one);
    assert!(boundary(&el(&p, "1"), 1, Target::Point(2)).unwrap().is_zero());
}

#[test]
fn boundary_rejects_invalid_labels() {
    let p = Presentation::bv([1, 2]);
    let a = el(&p, "w(1,2)");
    assert!(boundary(&a, 3, Target::Point(2)).is_err());
    assert!(boundary(&a, 1, Target::Point(1)).is_err());
    assert!(boundary(&a, 1, Target::Star).is_err());
}

fn sum_boundaries(a: &AlgElement, p: u32, targets: &[Target]) -> AlgSum {
    let mut s = AlgSum::zero();
    for t in targets {
        s.add_assign(boundary(a, p, *t).unwrap().sum());
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn co_leibniz_bv(r in 1u32..4, pk in picks()) {
        let p = Presentation::bv(1..=r + 1);
        let a = without_theta(&random_element(&p, &pk), r + 1);
        let lhs = boundary(&a, r + 1, Target::Infinity).unwrap();
        let targets: Vec<Target> = (1..=r).map(Target::Point).collect();
        prop_assert_eq!(lhs.sum().clone(), sum_boundaries(&a, r + 1, &targets));
    }

    #[test]
    fn co_leibniz_cylinder(r in 0u32..3, pk in picks()) {
        let p = Presentation::bvc(1..=r + 1);
        let a = without_theta(&random_element(&p, &pk), r + 1);
        let lhs = boundary(&a, r + 1, Target::Infinity).unwrap();
        let mut targets = vec![Target::Star];
        targets.extend((1..=r).map(Target::Point));
        prop_assert_eq!(lhs.sum().clone(), sum_boundaries(&a, r + 1, &targets));
    }

    #[test]
    fn co_leibniz_bulk(g in 0u32..3, r in 0u32..3, pk in picks()) {
        let p = Presentation::bvgg(g, 1..=r + 1);
        let pt = r + 1;
        let a = without_theta(&random_element(&p, &pk), pt);
        let mut ones = vec![Target::Infinity];
        ones.extend((2..=g).map(|h| Target::Over(h as u8)));
        let mut zeros: Vec<Target> = (1..=g).map(|h| Target::Under(h as u8)).collect();
        zeros.extend((1..=r).map(Target::Point));
        prop_assert_eq!(sum_boundaries(&a, pt, &ones), sum_boundaries(&a, pt, &zeros));
    }

    #[test]
    fn cocomposition_is_coassociative(pk in picks()) {
        // collapse {1,2,3} then {1,2} inside, versus {1,2} first then {n,3}
        let p = Presentation::bv([1, 2, 3, 4]);
        let a = random_element(&p, &pk);
        let big = set(&[1, 2, 3]);
        let small = set(&[1, 2]);
        let first = a.sum().map_hom(&collapse_image(&big, 10)).map_hom(&collapse_image(&small, 11));
        let mid = set(&[11, 3]);
        let second = a.sum().map_hom(&collapse_image(&small, 11)).map_hom(&collapse_image(&mid, 10));
        prop_assert_eq!(first, second);
    }

    #[test]
    fn text_round_trip(pk in picks()) {
        let p = Presentation::bvgg(2, [1, 2, 3]);
        let a = random_element(&p, &pk);
        let text = a.to_text();
        let b = AlgElement::parse(&p, &text).unwrap();
        prop_assert_eq!(&b, &a);
        prop_assert_eq!(b.to_text(), text);
    }
}

// ==== involution ====

#[test]
fn involution_examples() {
    let p = Presentation::bvc([1, 2]);
    assert_eq!(involution(&el(&p, "t(1)")).unwrap(), el(&p, "t(1) - 2*w(*,1)"));
    let w = el(&p, "w(1,2)");
    assert_eq!(involution(&involution(&w).unwrap()).unwrap(), w);
    assert_eq!(involution(&el(&p, "1")).unwrap(), el(&p, "1"));
    assert!(involution(&el(&Presentation::bv([1]), "t(1)")).is_err());
}

#[test]
fn involution_squares_to_identity_through_degree_three() {
    let p = Presentation::bvc([1, 2]);
    for d in 0..=3 {
        for m in p.basis(d) {
            let a = AlgElement::new(p.clone(), {
                let mut s = AlgSum::zero();
                s.add_mono(m, qi(1));
                s
            })
            .unwrap();
            assert_eq!(involution(&involution(&a).unwrap()).unwrap(), a);
        }
    }
}

#[test]
fn rational_coefficients_print_and_parse() {
    let p = Presentation::bvgg(2, [1, 2]);
    let a = el(&p, "1/2*w(1,_u 2) - 3/4*w(2,_o 2)*t(1) + 5");
    assert_eq!(a.sum().coeff(&[Gen::W { hi: 1, lo: Label::Under(2) }]), q(1, 2));
    assert_eq!(AlgElement::parse(&p, &a.to_text()).unwrap(), a);
}
