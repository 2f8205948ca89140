//! Tests for the decorated graph complex.

use framedconf::bvalgebra::Gen;
use framedconf::exactpoly::{qi, ExactScalar};
use framedconf::graphkernel::{
    canonicalize, coaction, differential, differential_contract, project_to_mog, DecoratedGraph, GraphSum, Item, ZTriv,
};
use framedconf::mogmodel::{mog_coaction, mog_differential, HClass, MogElement};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn gr(text: &str) -> DecoratedGraph {
    DecoratedGraph::parse(text).unwrap()
}

fn sum(text: &str) -> GraphSum {
    GraphSum::graph(&gr(text))
}

fn d(a: &GraphSum) -> GraphSum {
    differential(a, &ZTriv)
}

/// A random graph with every component attached to an external vertex.
fn random_graph(rng: &mut ChaCha8Rng, genus: u32, max_ext: usize, max_int: usize, max_edges: usize) -> DecoratedGraph {
    loop {
        let n_ext = rng.gen_range(1..=max_ext);
        let k = rng.gen_range(0..=max_int);
        let n = n_ext + k;
        let ext: Vec<u32> = (1..=n_ext as u32).collect();
        let mut items = Vec::new();
        for _ in 0..rng.gen_range(0..=max_edges) {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u == v && u >= n_ext {
                continue;
            }
            items.push(Item::Edge(u, v));
        }
        let mut classes = vec![HClass::Nu];
        for j in 1..=genus as u8 {
            classes.push(HClass::A(j));
            classes.push(HClass::B(j));
        }
        for v in 0..n {
            for _ in 0..rng.gen_range(0..=1) {
                items.push(Item::Deco(v, classes[rng.gen_range(0..classes.len())]));
            }
        }
        let (_, g) = DecoratedGraph::from_items(genus, &ext, k, &items).unwrap();
        if g.is_connected_to_external() {
            return g;
        }
    }
}

// ==== canonical forms ====

#[test]
fn parallel_edges_vanish() {
    assert!(canonicalize(&gr("genus=1; ext=[1,2]; int=0; edges=[(1,2),(1,2)]; deco={}")).is_none());
    assert!(sum("genus=1; ext=[1,2]; int=0; edges=[(1,2)]; deco={}")
        .multiply(&sum("genus=1; ext=[1,2]; int=0; edges=[(2,1)]; deco={}"))
        .unwrap()
        .is_zero());
}

#[test]
fn relabelling_internal_vertices_of_a_tree_is_invisible() {
    let a = gr("genus=0; ext=[1,2]; int=2; edges=[(1,3),(3,4),(4,2)]; deco={}");
    let b = gr("genus=0; ext=[1,2]; int=2; edges=[(1,4),(4,3),(3,2)]; deco={}");
    assert_eq!(canonicalize(&a), canonicalize(&b));
}

#[test]
fn swapping_two_edges_flips_the_sign() {
    let a = gr("genus=0; ext=[1,2,3]; int=0; edges=[(1,2),(2,3)]; deco={}");
    let b = gr("genus=0; ext=[1,2,3]; int=0; edges=[(2,3),(1,2)]; deco={}");
    let (sa, ca) = canonicalize(&a).unwrap();
    let (sb, cb) = canonicalize(&b).unwrap();
    assert_eq!(ca, cb);
    assert_ne!(sa, sb);
}

#[test]
fn odd_automorphisms_kill_graphs() {
    // Two internal vertices hanging off vertex 1, each with one edge:
    // swapping them swaps two odd edges.
    assert!(canonicalize(&gr("genus=0; ext=[1]; int=2; edges=[(1,2),(1,3)]; deco={}")).is_none());
    // The same with decorations a1 on each swaps two more odd items: even.
    assert!(canonicalize(&gr("genus=1; ext=[1]; int=2; edges=[(1,2),(1,3)]; deco={2:[a1],3:[a1]}")).is_some());
}

#[test]
fn canonical_form_is_idempotent_and_invariant_under_relabelling() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..300 {
        let g = random_graph(&mut rng, 2, 3, 3, 5);
        let Some((s, c)) = canonicalize(&g) else { continue };
        assert_eq!(canonicalize(&c), Some((false, c.clone())));
        // random permutation of internal vertices and of the orientation data
        let n_ext = g.ext().len();
        let mut perm: Vec<usize> = (0..g.internal()).collect();
        for i in (1..perm.len()).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let map = |v: usize| if v < n_ext { v } else { n_ext + perm[v - n_ext] };
        let mut items: Vec<Item> = g
            .items()
            .into_iter()
            .map(|it| match it {
                Item::Edge(u, v) => Item::Edge(map(v), map(u)),
                Item::Deco(v, c) => Item::Deco(map(v), c),
            })
            .collect();
        // one transposition of adjacent odd items (if any) flips the sign
        let odd_pos: Vec<usize> = (0..items.len()).filter(|&i| items[i].is_odd()).collect();
        let mut flip = false;
        if odd_pos.len() >= 2 {
            items.swap(odd_pos[0], odd_pos[1]);
            flip = true;
        }
        let (t, h) = DecoratedGraph::from_items(g.genus(), g.ext(), g.internal(), &items).unwrap();
        let (s2, c2) = canonicalize(&h).unwrap();
        assert_eq!(c2, c);
        assert_eq!(s ^ flip, s2 ^ t);
    }
}

#[test]
fn text_format_round_trips() {
    for t in [
        "genus=2; ext=[1,2]; int=1; edges=[(1,3),(2,3),(1,1)]; deco={3:[a1,b2],1:[nu]}",
        "genus=0; ext=[]; int=1; edges=[]; deco={1:[nu]}",
        "genus=1; ext=[2,5]; int=2; edges=[(2,6),(6,7),(7,5)]; deco={}",
    ] {
        assert_eq!(gr(t).to_text(), t);
    }
    assert!(DecoratedGraph::parse("genus=1; ext=[1]; int=1; edges=[(2,2)]; deco={}").is_err());
    assert!(DecoratedGraph::parse("genus=1; ext=[1]; int=0; edges=[]; deco={1:[a2]}").is_err());
    assert!(DecoratedGraph::parse("genus=1; ext=[1]; int=0; edges=[(1,4)]; deco={}").is_err());
}

// ==== product ====

#[test]
fn product_superposes_at_external_vertices() {
    let e12 = sum("genus=0; ext=[1,2,3,4]; int=0; edges=[(1,2)]; deco={}");
    let e34 = sum("genus=0; ext=[1,2,3,4]; int=0; edges=[(3,4)]; deco={}");
    assert_eq!(e12.multiply(&e34).unwrap(), sum("genus=0; ext=[1,2,3,4]; int=0; edges=[(1,2),(3,4)]; deco={}"));
    assert_eq!(e12.multiply(&e34).unwrap(), e34.multiply(&e12).unwrap().scale(&qi(-1)));
    let one = GraphSum::one(0, &[1, 2, 3, 4]);
    assert_eq!(e12.multiply(&one).unwrap(), e12);
    assert!(e12.multiply(&GraphSum::one(0, &[1, 2])).is_err());
}

#[test]
fn product_is_graded_commutative() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let a = random_graph(&mut rng, 1, 2, 2, 3);
        let b = random_graph(&mut rng, 1, 2, 2, 3);
        if a.ext() != b.ext() {
            continue;
        }
        let (sa, sb) = (GraphSum::graph(&a), GraphSum::graph(&b));
        let sign = if a.is_odd() && b.is_odd() { qi(-1) } else { qi(1) };
        assert_eq!(sa.multiply(&sb).unwrap(), sb.multiply(&sa).unwrap().scale(&sign));
    }
}

// ==== differential ====

#[test]
fn differential_of_an_edge_is_the_diagonal() {
    let got = d(&sum("genus=1; ext=[1,2]; int=0; edges=[(1,2)]; deco={}"));
    let mut expect = GraphSum::zero(1, &[1, 2]);
    for (t, c) in [
        ("genus=1; ext=[1,2]; int=0; edges=[]; deco={1:[nu]}", 1),
        ("genus=1; ext=[1,2]; int=0; edges=[]; deco={2:[nu]}", 1),
        ("genus=1; ext=[1,2]; int=0; edges=[]; deco={1:[a1],2:[b1]}", -1),
        ("genus=1; ext=[1,2]; int=0; edges=[]; deco={1:[b1],2:[a1]}", 1),
    ] {
        expect.add_graph(&gr(t), qi(c));
    }
    assert_eq!(got, expect);
}

#[test]
fn differential_of_a_tadpole_is_the_euler_class() {
    for g in 0..=3u32 {
        let got = d(&sum(&format!("genus={g}; ext=[1]; int=0; edges=[(1,1)]; deco={{}}")));
        // Decorations are free: a·b and ν are different graphs ...
        let mut expect = sum(&format!("genus={g}; ext=[1]; int=0; edges=[]; deco={{1:[nu]}}")).scale(&qi(2));
        for k in 1..=g {
            expect.add_graph(&gr(&format!("genus={g}; ext=[1]; int=0; edges=[]; deco={{1:[a{k},b{k}]}}")), qi(-2));
        }
        assert_eq!(got, expect, "g={g}");
        // ... which agree in the small model, where dθ = (2−2g)ν.
        assert_eq!(project_to_mog(&got), MogElement::parse(g, [1], "nu(1)").unwrap().scale(&qi(2 - 2 * g as i64)));
    }
}

#[test]
fn differential_of_the_hair_with_a_volume_pair() {
    for j in 1..=2u8 {
        let gamma = sum(&format!("genus=2; ext=[1]; int=1; edges=[(1,2)]; deco={{2:[a{j},b{j}]}}"));
        let mut expect = GraphSum::zero(2, &[1]);
        expect.add_graph(&gr("genus=2; ext=[1]; int=0; edges=[]; deco={1:[nu]}"), qi(1));
        expect.add_graph(&gr(&format!("genus=2; ext=[1]; int=0; edges=[]; deco={{1:[a{j},b{j}]}}")), qi(-1));
        assert_eq!(d(&gamma), expect);
        assert!(project_to_mog(&d(&gamma)).is_zero());
    }
}

#[test]
fn d_squared_vanishes_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..400 {
        let g = rng.gen_range(0..=2);
        let x = GraphSum::graph(&random_graph(&mut rng, g, 3, 3, 4));
        assert!(d(&d(&x)).is_zero(), "{x}");
    }
}

#[test]
fn contraction_moves_decorations_onto_the_surviving_vertex() {
    let x = sum("genus=1; ext=[1,2]; int=1; edges=[(1,3),(3,2)]; deco={3:[nu]}");
    let mut expect = GraphSum::zero(1, &[1, 2]);
    expect.add_graph(&gr("genus=1; ext=[1,2]; int=0; edges=[(2,1)]; deco={1:[nu]}"), qi(-1));
    expect.add_graph(&gr("genus=1; ext=[1,2]; int=0; edges=[(1,2)]; deco={2:[nu]}"), qi(1));
    assert_eq!(differential_contract(&x), expect);
}

// ==== coaction and projection ====

#[test]
fn coaction_of_an_edge() {
    let t = coaction(&sum("genus=1; ext=[1,2]; int=0; edges=[(1,2)]; deco={}"), &[1, 2], 1).unwrap();
    assert_eq!(t.left_part(&[Gen::w(1, 2)]), GraphSum::one(1, &[1]));
    assert_eq!(t.left_part(&[]), sum("genus=1; ext=[1]; int=0; edges=[(1,1)]; deco={}"));
    assert_eq!(t.terms().count(), 2);
}

#[test]
fn coaction_of_the_empty_graph() {
    let t = coaction(&GraphSum::one(2, &[1, 2, 3]), &[2, 3], 2).unwrap();
    assert_eq!(t.terms().count(), 1);
    assert_eq!(t.left_part(&[]), GraphSum::one(2, &[1, 2]));
    assert!(coaction(&GraphSum::one(2, &[1, 2]), &[3], 4).is_err());
}

#[test]
fn projection_examples() {
    assert!(project_to_mog(&sum("genus=2; ext=[1]; int=1; edges=[(1,2)]; deco={2:[a1,b1]}")).is_zero());
    assert_eq!(
        project_to_mog(&sum("genus=2; ext=[1,2]; int=0; edges=[(1,2)]; deco={}")),
        MogElement::parse(2, 1..=2, "w(1,2)").unwrap()
    );
    assert_eq!(
        project_to_mog(&sum("genus=2; ext=[1,2]; int=0; edges=[(1,1),(1,2)]; deco={2:[a1]}")),
        MogElement::parse(2, 1..=2, "t(1)*w(1,2)*a1(2)").unwrap()
    );
}

#[test]
fn projection_is_a_chain_map() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..400 {
        let g = rng.gen_range(0..=2);
        let x = GraphSum::graph(&random_graph(&mut rng, g, 3, 2, 4));
        assert_eq!(project_to_mog(&d(&x)), mog_differential(&project_to_mog(&x)), "{x}");
    }
}

#[test]
fn projection_intertwines_coactions() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let g = rng.gen_range(0..=2);
        let graph = random_graph(&mut rng, g, 3, 1, 4);
        if graph.ext().len() < 2 {
            continue;
        }
        let x = GraphSum::graph(&graph);
        let group = [1, graph.ext().len() as u32];
        let lhs = coaction(&x, &group, 9).unwrap().project_left();
        let rhs: BTreeMap<_, _> = mog_coaction(&project_to_mog(&x), &group, 9)
            .unwrap()
            .terms()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        assert_eq!(lhs, rhs, "{x}");
    }
}

#[test]
fn coaction_is_counital() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let graph = random_graph(&mut rng, 1, 3, 2, 4);
        let x = GraphSum::graph(&graph);
        let j = graph.ext()[rng.gen_range(0..graph.ext().len())];
        assert_eq!(coaction(&x, &[j], j).unwrap().left_part(&[]), x);
    }
}

#[test]
fn coaction_is_coassociative() {
    use framedconf::bvalgebra::{cocompose, AlgElement, AlgSum, Presentation};
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..150 {
        let mut graph = random_graph(&mut rng, 1, 4, 1, 5);
        while graph.ext().len() < 3 {
            graph = random_graph(&mut rng, 1, 4, 1, 5);
        }
        let r = graph.ext().len() as u32;
        let x = GraphSum::graph(&graph);
        let mut a: BTreeMap<(DecoratedGraph, Vec<Gen>, Vec<Gen>), ExactScalar> = BTreeMap::new();
        for ((o1, i1), c1) in coaction(&x, &[1, 2], 8).unwrap().terms() {
            for ((o2, i2), c2) in coaction(&GraphSum::graph(o1), &[3, 8], 9).unwrap().terms() {
                *a.entry((o2.clone(), i2.clone(), i1.clone())).or_insert_with(ExactScalar::zero) += c1 * c2;
            }
        }
        let mut b: BTreeMap<(DecoratedGraph, Vec<Gen>, Vec<Gen>), ExactScalar> = BTreeMap::new();
        for ((o, j), c) in coaction(&x, &[1, 2, 3], 9).unwrap().terms() {
            let inner = AlgElement::new(Presentation::bv([1, 2, 3]), AlgSum::word(j)).unwrap();
            for ((jo, ji), cj) in cocompose(&inner, &[1, 2], 8).unwrap().terms() {
                *b.entry((o.clone(), jo.clone(), ji.clone())).or_insert_with(ExactScalar::zero) += c * cj;
            }
        }
        a.retain(|_, c| !c.is_zero());
        b.retain(|_, c| !c.is_zero());
        assert_eq!(a, b, "{x} r={r}");
    }
}

#[test]
fn coaction_is_a_chain_map() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let graph = random_graph(&mut rng, 1, 3, 2, 4);
        if graph.ext().len() < 2 {
            continue;
        }
        let x = GraphSum::graph(&graph);
        let lhs = coaction(&d(&x), &[1, 2], 9).unwrap();
        let t = coaction(&x, &[1, 2], 9).unwrap();
        let outer: Vec<u32> = graph.ext().iter().copied().filter(|&l| l > 2).chain([9]).collect();
        let mut rhs = framedconf::graphkernel::GraphTensor::zero(1, &outer, t.inner().clone());
        for ((g, m), c) in t.terms() {
            rhs.add_left(&d(&GraphSum::graph(g)), m, c);
        }
        assert_eq!(lhs, rhs, "{x}");
    }
}
