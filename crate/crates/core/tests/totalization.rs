//! The totalization model: strata, continuity of the model forms, the
//! differential and product, coaction, boundary operators, fiber
//! integration (Fubini) and the Stokes formula.

use framedconf::bvalgebra::{parse_sum, Gen};
use framedconf::exactpoly::{q, qi, ExactScalar, PolyForm};
use framedconf::feynman::{build_catalog, map_a, ModelFormCatalog};
use framedconf::graphkernel::DecoratedGraph;
use framedconf::totalization::*;
use num_traits::One;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn labels(v: &[u32]) -> BTreeSet<u32> {
    v.iter().copied().collect()
}

fn pull(x: &StratifiedElement, target: &[u32], all: &[u32]) -> StratifiedElement {
    x.pull_back_to(target, &labels(all)).unwrap()
}

fn wedge_all(factors: &[StratifiedElement]) -> StratifiedElement {
    let mut acc = StratifiedElement::one(factors[0].geometry(), factors[0].labels().clone());
    for f in factors {
        acc = acc.wedge(f).unwrap();
    }
    acc
}

/// The one- and two-point forms of a catalog, in a fixed order.
fn catalog_forms(cat: &ModelFormCatalog) -> Vec<(String, StratifiedElement)> {
    let mut v = vec![
        ("nu".to_string(), cat.nu().clone()),
        ("eta".to_string(), cat.eta().clone()),
        ("omega".to_string(), cat.omega().clone()),
    ];
    for k in 1..=cat.genus() as usize {
        v.push((format!("a{k}"), cat.a(k).clone()));
        v.push((format!("b{k}"), cat.b(k).clone()));
    }
    v
}

// ==== strata ====

#[test]
fn strata_counts_for_one_and_two_points() {
    let g2 = Geometry::Handles(2);
    assert_eq!(enumerate_strata(g2, &labels(&[1])).len(), 3);
    assert_eq!(enumerate_strata(g2, &labels(&[1, 2])).len(), 13);
    assert_eq!(enumerate_strata(Geometry::Handles(0), &labels(&[1])).len(), 1);
    assert_eq!(enumerate_strata(Geometry::Handles(1), &labels(&[1])).len(), 2);
    // Genus zero uses two spheres joined by one handle.
    assert_eq!(enumerate_strata(Geometry::TwoSpheres, &labels(&[1])).len(), 3);
}

#[test]
fn strata_are_duplicate_free_and_round_trip_through_text() {
    for geometry in [Geometry::Handles(1), Geometry::Handles(3), Geometry::TwoSpheres] {
        let all = enumerate_strata(geometry, &labels(&[1, 2, 3]));
        let distinct: BTreeSet<&Stratum> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
        for s in &all {
            assert_eq!(s.labels(), labels(&[1, 2, 3]));
            assert_eq!(&Stratum::parse(geometry, &s.to_text(geometry)).unwrap(), s);
        }
    }
}

#[test]
fn strata_count_matches_a_brute_force_count() {
    // Each point sits in the bulk or on a handle; the points on one handle
    // form an ordered set partition (the packets), counted by Fubini numbers.
    fn brute(g: usize, n: usize) -> usize {
        fn ordered_partitions(k: usize) -> usize {
            let mut a = vec![1usize; k + 1];
            for m in 1..=k {
                a[m] = (1..=m).map(|j| binom(m, j) * a[m - j]).sum();
            }
            a[k]
        }
        fn binom(n: usize, k: usize) -> usize {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        let places = g + 1;
        let mut total = 0;
        for code in 0..places.pow(n as u32) {
            let mut counts = vec![0usize; places];
            let mut c = code;
            for _ in 0..n {
                counts[c % places] += 1;
                c /= places;
            }
            total += counts[1..].iter().map(|&k| ordered_partitions(k)).product::<usize>();
        }
        total
    }
    for g in 1..=3u32 {
        for n in 1..=4u32 {
            let ls: BTreeSet<u32> = (1..=n).collect();
            assert_eq!(enumerate_strata(Geometry::Handles(g), &ls).len(), brute(g as usize, n as usize), "g={g} n={n}");
        }
    }
}

// ==== continuity ====

#[test]
fn model_forms_are_continuous() {
    for g in 0..=3 {
        let cat = build_catalog(g).unwrap();
        for (name, x) in catalog_forms(&cat) {
            let report = check_continuity(&x);
            assert!(report.faces_checked > 0);
            assert!(report.passed(), "g={g} {name}: {:?}", report.violations.first());
        }
    }
}

#[test]
fn perturbed_propagator_fails_at_the_bulk_to_handle_face() {
    let g = Geometry::Handles(2);
    let cat = build_catalog(2).unwrap();
    let bulk = Stratum::parse(g, "(0,0 | 1->0, 2->0)").unwrap();
    let mut omega = cat.omega().clone();
    // replace −1/2 by −1/3 in front of ω_{1⎵1} + ω_{2⎵1}
    let shift = parse_sum("w(1,_u 1) + w(2,_u 1)").unwrap();
    let mut v = omega.value(&bulk);
    v.add_alg_form(&shift, &PolyForm::constant(bulk.shape(), q(1, 6)));
    omega.set(bulk.clone(), v).unwrap();
    let report = check_continuity(&omega);
    assert!(!report.passed());
    // Point 2 alone on the first handle sliding into the bulk is one of the
    // violated face equations.
    let b2 = Stratum::parse(g, "(1,0 | 1->0, 2->1.1)").unwrap();
    assert!(report.violations.iter().any(|f| f.stratum == b2 && f.merged == bulk));
    assert!(report.violations.iter().all(|f| f.merged == bulk));
}

// ==== differential and product ====

#[test]
fn a_classes_are_closed() {
    for g in 1..=3 {
        let cat = build_catalog(g).unwrap();
        for k in 1..=g as usize {
            assert!(total_d(cat.a(k)).is_zero());
        }
    }
}

#[test]
fn nu_is_the_product_of_the_first_pair() {
    for g in 1..=3 {
        let cat = build_catalog(g).unwrap();
        assert_eq!(&total_wedge(cat.a(1), cat.b(1)).unwrap(), cat.nu());
        assert!(total_d(cat.nu()).is_zero());
    }
}

#[test]
fn d_eta_is_twice_nu_minus_twice_the_symplectic_sum() {
    for g in 1..=3 {
        let cat = build_catalog(g).unwrap();
        let expected = cat.nu().scale(&qi(2)).sub(&cat.sum_ab().scale(&qi(2))).unwrap();
        assert_eq!(total_d(cat.eta()), expected, "g={g}");
    }
    // On the sphere model there are no a, b classes.
    let cat = build_catalog(0).unwrap();
    assert_eq!(total_d(cat.eta()), cat.nu().scale(&qi(2)));
}

/// `π_1^*ν + π_2^*ν − Σ_k (π_1^*a^k π_2^*b^k + π_2^*a^k π_1^*b^k)`.
fn expected_d_omega(cat: &ModelFormCatalog) -> StratifiedElement {
    let all = [1, 2];
    let mut e = pull(cat.nu(), &[1], &all).add(&pull(cat.nu(), &[2], &all)).unwrap();
    for k in 1..=cat.genus() as usize {
        let t1 = pull(cat.a(k), &[1], &all).wedge(&pull(cat.b(k), &[2], &all)).unwrap();
        let t2 = pull(cat.a(k), &[2], &all).wedge(&pull(cat.b(k), &[1], &all)).unwrap();
        e = e.sub(&t1).unwrap().sub(&t2).unwrap();
    }
    e
}

#[test]
fn d_omega_is_the_diagonal_class() {
    for g in 0..=3 {
        let cat = build_catalog(g).unwrap();
        assert_eq!(total_d(cat.omega()), expected_d_omega(&cat), "g={g}");
    }
}

#[test]
fn odd_squares_vanish_and_unit_is_neutral() {
    let cat = build_catalog(2).unwrap();
    for k in 1..=2 {
        assert!(cat.a(k).wedge(cat.a(k)).unwrap().is_zero());
    }
    let one = StratifiedElement::one(cat.geometry(), labels(&[1, 2]));
    assert_eq!(&one.wedge(cat.omega()).unwrap(), cat.omega());
}

#[test]
fn differential_squares_to_zero_on_model_forms() {
    for g in 0..=3 {
        let cat = build_catalog(g).unwrap();
        for (name, x) in catalog_forms(&cat) {
            assert!(total_d(&total_d(&x)).is_zero(), "g={g} {name}");
        }
    }
}

// ==== coaction ====

#[test]
fn collapsing_the_propagator_gives_eta_and_the_edge() {
    for g in 0..=3 {
        let cat = build_catalog(g).unwrap();
        let t = total_coaction(cat.omega(), &labels(&[1, 2]), 7).unwrap();
        let eta7 = cat.eta().relabel(&[(1, 7)].into_iter().collect()).unwrap();
        let zero = StratifiedElement::zero(cat.geometry(), labels(&[7]));
        assert_eq!(t.part(&[], &zero), eta7, "g={g}");
        let one = StratifiedElement::one(cat.geometry(), labels(&[7]));
        assert_eq!(t.part(&[Gen::w(1, 2)], &zero), one, "g={g}");
        assert_eq!(t.parts.len(), 2);
    }
}

#[test]
fn a_classes_have_no_framing_part() {
    let cat = build_catalog(3).unwrap();
    for k in 1..=3 {
        let t = total_coaction(cat.a(k), &labels(&[1]), 5).unwrap();
        assert!(!t.parts.contains_key(&vec![Gen::T(1)]));
    }
}

#[test]
fn extending_then_collapsing_is_the_identity() {
    for g in 0..=2 {
        let cat = build_catalog(g).unwrap();
        let ext = cat.nu().extend_points(&labels(&[2])).unwrap();
        let t = total_coaction(&ext, &labels(&[1, 2]), 1).unwrap();
        assert_eq!(&counit_part(&t, &ext), cat.nu(), "g={g}");
    }
}

#[test]
fn coaction_rejects_bad_collapse_sets() {
    let cat = build_catalog(1).unwrap();
    assert!(total_coaction(cat.omega(), &labels(&[3]), 7).is_err());
    assert!(total_coaction(cat.omega(), &labels(&[]), 7).is_err());
    assert!(total_coaction(cat.omega(), &labels(&[1]), 2).is_err());
}

// ==== boundary operators ====

#[test]
fn boundary_of_the_propagator_is_one() {
    for g in 0..=3 {
        let cat = build_catalog(g).unwrap();
        let one = StratifiedElement::one(cat.geometry(), labels(&[2]));
        assert_eq!(total_boundary(cat.omega(), 1, 2).unwrap(), one, "g={g}");
        let one1 = StratifiedElement::one(cat.geometry(), labels(&[1]));
        assert_eq!(total_boundary(cat.omega(), 2, 1).unwrap(), one1, "g={g}");
    }
}

#[test]
fn boundary_of_a_decomposable_element_vanishes() {
    let cat = build_catalog(2).unwrap();
    let x = pull(cat.a(2), &[1], &[1, 2]).wedge(&pull(cat.b(1), &[2], &[1, 2])).unwrap();
    assert!(total_boundary(&x, 1, 2).unwrap().is_zero());
    assert!(total_boundary(&x, 2, 1).unwrap().is_zero());
}

#[test]
fn boundary_rejects_invalid_pairs() {
    let cat = build_catalog(1).unwrap();
    assert!(total_boundary(cat.omega(), 1, 1).is_err());
    assert!(total_boundary(cat.omega(), 1, 3).is_err());
}

// ==== fiber integration ====

#[test]
fn integrating_nothing_is_the_identity() {
    let cat = build_catalog(2).unwrap();
    assert_eq!(&total_fiber_integrate(cat.omega(), &labels(&[])).unwrap(), cat.omega());
}

#[test]
fn volume_form_integrates_to_one() {
    for g in 0..=3 {
        let cat = build_catalog(g).unwrap();
        let z = total_fiber_integrate(cat.nu(), &labels(&[1])).unwrap();
        let one = StratifiedElement::one(cat.geometry(), labels(&[]));
        assert_eq!(z, one, "g={g}");
    }
}

#[test]
fn integrating_one_point_classes_pairs_a_with_b() {
    let cat = build_catalog(2).unwrap();
    let all = [1];
    let one = StratifiedElement::one(cat.geometry(), labels(&[]));
    for j in 1..=2 {
        for k in 1..=2 {
            let ab = pull(cat.a(j), &[1], &all).wedge(&pull(cat.b(k), &[1], &all)).unwrap();
            let z = total_fiber_integrate(&ab, &labels(&[1])).unwrap();
            if j == k {
                assert_eq!(z, one);
            } else {
                assert!(z.is_zero());
            }
        }
    }
}

#[test]
fn fiber_integration_rejects_unknown_points() {
    let cat = build_catalog(1).unwrap();
    assert!(total_fiber_integrate(cat.omega(), &labels(&[3])).is_err());
}

/// A product of pulled-back model forms on the points `all`, chosen by `picks`.
fn random_product(cat: &ModelFormCatalog, all: &[u32], picks: &[(usize, usize, usize)]) -> StratifiedElement {
    let ones: Vec<StratifiedElement> = {
        let mut v = vec![cat.nu().clone(), cat.eta().clone()];
        for k in 1..=cat.genus() as usize {
            v.push(cat.a(k).clone());
            v.push(cat.b(k).clone());
        }
        v
    };
    let mut factors = vec![StratifiedElement::one(cat.geometry(), labels(all))];
    for &(kind, i, j) in picks {
        let (p, q) = (all[i % all.len()], all[j % all.len()]);
        if kind % 3 == 0 && p != q {
            factors.push(pull(cat.omega(), &[p, q], all));
        } else {
            factors.push(pull(&ones[kind % ones.len()], &[p], all));
        }
    }
    wedge_all(&factors)
}

/// Factor choices `(kind, first point, second point)` for [`random_product`].
fn picks() -> impl Strategy<Value = Vec<(usize, usize, usize)>> {
    proptest::collection::vec((0usize..60, 0usize..3, 0usize..3), 1..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fubini_for_two_points(g in 0u32..3, pk in picks()) {
        let cat = build_catalog(g).unwrap();
        let a = random_product(&cat, &[1, 2, 3], &pk);
        let both = total_fiber_integrate(&a, &labels(&[2, 3])).unwrap();
        let inner3 = total_fiber_integrate(&total_fiber_integrate(&a, &labels(&[3])).unwrap(), &labels(&[2])).unwrap();
        let inner2 = total_fiber_integrate(&total_fiber_integrate(&a, &labels(&[2])).unwrap(), &labels(&[3])).unwrap();
        prop_assert_eq!(&both, &inner3);
        prop_assert_eq!(&both, &inner2);
    }

    #[test]
    fn differential_squares_to_zero_on_products(g in 0u32..3, pk in picks()) {
        let cat = build_catalog(g).unwrap();
        let a = random_product(&cat, &[1, 2], &pk);
        prop_assert!(total_d(&total_d(&a)).is_zero());
        prop_assert!(check_continuity(&a).passed());
    }

    #[test]
    fn stokes_for_one_integrated_point(g in 0u32..3, pk in picks()) {
        let cat = build_catalog(g).unwrap();
        let a = random_product(&cat, &[1, 2], &pk);
        // framing classes at the integrated point are outside the formula
        let has_theta_at_2 = a.values().values().any(|v| v.terms().any(|(m, _)| m.contains(&Gen::T(2))));
        prop_assume!(!has_theta_at_2);
        prop_assert!(stokes_defect(&a, &labels(&[2])).unwrap().is_zero());
    }
}

// ==== Stokes formula ====

#[test]
fn stokes_on_a_single_propagator() {
    for g in 0..=3 {
        let cat = build_catalog(g).unwrap();
        assert!(stokes_defect(cat.omega(), &labels(&[2])).unwrap().is_zero(), "g={g}");
        assert!(stokes_defect(cat.omega(), &labels(&[1, 2])).unwrap().is_zero(), "g={g}");
    }
}

#[test]
fn stokes_with_nothing_integrated_is_trivial() {
    let cat = build_catalog(2).unwrap();
    assert!(stokes_defect(cat.omega(), &labels(&[])).unwrap().is_zero());
}

#[test]
fn stokes_on_a_decorated_leaf() {
    // A(Γ) for one external vertex joined to an internal vertex carrying a^1.
    for g in 1..=2 {
        let cat = build_catalog(g).unwrap();
        let gr = DecoratedGraph::parse(&format!("genus={g}; ext=[1]; int=1; edges=[(1,2)]; deco={{2:[a1]}}")).unwrap();
        let a = map_a(&gr, &cat).unwrap();
        assert!(stokes_defect(&a, &labels(&[2])).unwrap().is_zero());
    }
}

#[test]
fn stokes_sign_is_not_arbitrary() {
    // Flipping the boundary contribution breaks the identity on ω with one
    // point integrated out: d∫ω = 0, ∫dω = 1 and ∫∂ω = 1.
    let cat = build_catalog(1).unwrap();
    let k = labels(&[2]);
    let int_d = total_fiber_integrate(&total_d(cat.omega()), &k).unwrap();
    let bdry = total_boundary(cat.omega(), 2, 1).unwrap();
    let one = StratifiedElement::one(cat.geometry(), labels(&[1]));
    assert!(total_fiber_integrate(cat.omega(), &k).unwrap().is_zero());
    assert_eq!(int_d, one);
    assert_eq!(bdry, one);
}

// ==== dump format ====

#[test]
fn dump_round_trip() {
    for g in [0, 1, 2] {
        let cat = build_catalog(g).unwrap();
        for (name, x) in catalog_forms(&cat) {
            let text = x.dump();
            assert_eq!(StratifiedElement::parse_dump(&text).unwrap(), x, "g={g} {name}");
        }
    }
}

#[test]
fn dump_lists_the_header_and_one_line_per_nonzero_stratum() {
    let cat = build_catalog(2).unwrap();
    let text = cat.b(2).dump();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "geometry=handles(2); labels=[1]");
    let body: Vec<&str> = lines.filter(|l| !l.is_empty()).collect();
    assert_eq!(body.len(), cat.b(2).values().len());
    assert!(body.iter().all(|l| l.contains(" : ")));
}

#[test]
fn malformed_dumps_are_rejected() {
    assert!(StratifiedElement::parse_dump("").is_err());
    assert!(StratifiedElement::parse_dump("geometry=handles(1); labels=[1]\n(2 | 1->1.1) : 1 * (1)").is_err());
    assert!(StratifiedElement::parse_dump("geometry=handles(1); labels=[1]\n(1 | 1->1.1) : w(1,2) * (1)").is_err());
}

#[test]
fn constant_elements_scale() {
    let cat = build_catalog(1).unwrap();
    let c = StratifiedElement::constant(cat.geometry(), labels(&[1]), q(3, 2));
    let one = StratifiedElement::one(cat.geometry(), labels(&[1]));
    assert_eq!(c, one.scale(&q(3, 2)));
    assert_eq!(c.scale(&ExactScalar::one()), c);
}
