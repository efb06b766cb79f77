use bfv_core::algebra::{parse_element, q, Element, Family, Gen, Roster};
use bfv_core::bracket::{bracket, pairing_g};
use bfv_core::connection::Connection;
use bfv_core::linfty::{
    ev, inv_factorial, jacobiator, mc_split_check, morphism_defect, push_mc, Carrier, DgLa, LInfty, LInftyMorphism,
};
use bfv_core::sampling::{Sampler, Shape};
use bfv_core::transfer::{
    certify, Contraction, DecoratedTree, HomotopyTransfer, IntervalTransfer, KoszulDelta, KoszulG, LiftedKoszulG, Root,
};

fn shape() -> Shape {
    Shape {
        max_factors: 3,
        max_poly_degree: 2,
        max_terms: 2,
    }
}

fn multivector_gens(r: Roster) -> Vec<Gen> {
    r.generators()
        .into_iter()
        .filter(|g| matches!(g.family, Family::X | Family::Y | Family::XDag | Family::YDag))
        .collect()
}

fn rank_one() -> (Roster, Connection) {
    let r = Roster::new(1, 1);
    let gamma = Connection::new(r, [((1, 1, 1), parse_element(r, "x1").unwrap())]).unwrap();
    (r, gamma)
}

/// `Γ¹_{11} = x₂` on a two-dimensional base: curvature `∂₂Γ₁ = 1`.
fn curved() -> (Roster, Connection) {
    let r = Roster::new(2, 1);
    let gamma = Connection::new(r, [((1, 1, 1), parse_element(r, "x2").unwrap())]).unwrap();
    (r, gamma)
}

#[test]
fn contractions_certify_on_random_monomials() {
    for (n, k) in [(1, 1), (1, 2), (2, 2), (0, 3)] {
        let r = Roster::new(n, k);
        certify(&KoszulG::new(r), 250, 11).unwrap();
        certify(&KoszulDelta::new(r), 250, 12).unwrap();
    }
    let r = Roster::new(2, 2);
    let gamma = Connection::new(
        r,
        [
            ((1, 1, 2), parse_element(r, "x1 x2").unwrap()),
            ((2, 2, 1), parse_element(r, "3 - x1").unwrap()),
        ],
    )
    .unwrap();
    certify(&LiftedKoszulG::new(&gamma), 250, 13).unwrap();
}

#[test]
fn induced_structure_is_schouten_bracket() {
    let (r, gamma) = rank_one();
    for conn in [Connection::flat(r), gamma] {
        let t = HomotopyTransfer::for_connection(&conn).unwrap();
        let x1 = parse_element(r, "x1").unwrap();
        let xd1 = parse_element(r, "xd1").unwrap();
        // μ² carries the sign (−1)^{|xd1|'} = −1 in front of [xd1, x1] = 1
        assert_eq!(t.transferred_map(&[xd1.clone(), x1.clone()]).unwrap(), -Element::one(r));
        assert!(t.transferred_map(&[xd1]).unwrap().is_zero());
        let gens = multivector_gens(r);
        let mut s = Sampler::new(21);
        for _ in 0..20 {
            let a = s.any_homogeneous(r, &gens, 0..=3, shape());
            let b = s.any_homogeneous(r, &gens, 0..=3, shape());
            let expect = t.dgla().l2(&a, &b).unwrap();
            assert_eq!(t.transferred_map(&[a, b]).unwrap(), expect);
        }
    }
}

#[test]
fn flat_higher_components_vanish() {
    let r = Roster::new(1, 2);
    let t = HomotopyTransfer::for_connection(&Connection::flat(r)).unwrap();
    let gens = multivector_gens(r);
    let mut s = Sampler::new(22);
    for _ in 0..10 {
        let args: Vec<Element> = (0..3).map(|_| s.any_homogeneous(r, &gens, 0..=3, shape())).collect();
        assert!(t.transferred_map(&args).unwrap().is_zero());
        assert!(t.quasi_iso_component(&args[..2]).unwrap().is_zero());
        assert!(t.quasi_iso_component(&args).unwrap().is_zero());
    }
}

#[test]
fn induced_jacobiators_vanish() {
    let (r, gamma) = rank_one();
    let t = HomotopyTransfer::for_connection(&gamma).unwrap();
    let induced = t.induced();
    let gens = multivector_gens(r);
    let mut s = Sampler::new(23);
    for n in 1..=4 {
        for _ in 0..5 {
            let args: Vec<Element> = (0..n).map(|_| s.any_homogeneous(r, &gens, 0..=3, shape())).collect();
            assert!(jacobiator(&induced, &args).unwrap().is_zero(), "J^{n} on {args:?}");
        }
    }
}

#[test]
fn quasi_iso_satisfies_morphism_equations() {
    let (r, gamma) = rank_one();
    let t = HomotopyTransfer::for_connection(&gamma).unwrap();
    let gens = multivector_gens(r);
    let mut s = Sampler::new(24);
    for n in 1..=3 {
        for _ in 0..6 {
            let args: Vec<Element> = (0..n).map(|_| s.any_homogeneous(r, &gens, 0..=3, shape())).collect();
            let d = morphism_defect(&t.quasi_iso(), &t.induced(), t.dgla(), &args).unwrap();
            assert!(d.is_zero(), "defect at arity {n} on {args:?}: {d}");
        }
    }
}

#[test]
fn quasi_iso_second_component_is_filtered() {
    // a connection over a one-dimensional base is flat: F₂ vanishes
    let (r, gamma) = rank_one();
    let t = HomotopyTransfer::for_connection(&gamma).unwrap();
    let pi = parse_element(r, "y1 yd1 xd1").unwrap();
    assert!(t.quasi_iso_component(&[pi.clone(), pi.clone()]).unwrap().is_zero());

    let (r, gamma) = curved();
    let t = HomotopyTransfer::for_connection(&gamma).unwrap();
    let pi = parse_element(r, "xd1 xd2").unwrap();
    let f2 = t.quasi_iso_component(&[pi.clone(), pi.clone()]).unwrap();
    assert!(!f2.is_zero());
    assert!(f2.filtration_index().at_least(1, 1));
    // the recursion used for MC elements matches the tree sums
    let diag = t.diagonal_terms(&pi).unwrap();
    assert_eq!(diag[1], f2.scale(&inv_factorial(2)));
    assert_eq!(diag[0], t.contraction().i(&pi));
}

#[test]
fn pushed_poisson_structure_is_corrected() {
    for (r, gamma, pi, curved) in [
        (rank_one().0, rank_one().1, "y1 yd1 xd1", false),
        (curved().0, curved().1, "xd1 xd2", true),
        (curved().0, curved().1, "y1 yd1 xd1 + xd1 xd2", true),
    ] {
        let t = HomotopyTransfer::for_connection(&gamma).unwrap();
        let pi = parse_element(r, pi).unwrap();
        let w = push_mc(&t.quasi_iso(), &t.induced(), t.dgla(), &pi).unwrap();
        let g = pairing_g(r);
        let p_hat = &g + &w;
        assert!(bracket(&p_hat, &p_hat).is_zero());
        let delta = &w - &t.contraction().i(&pi);
        assert_eq!(delta.is_zero(), !curved, "{pi}: Δ = {delta}");
        assert!(delta.filtration_index().at_least(1, 1));
    }
}

#[test]
fn trees_with_two_bivalent_vertices_vanish() {
    let r = Roster::new(1, 1);
    let g1 = Connection::new(r, [((1, 1, 1), parse_element(r, "x1").unwrap())]).unwrap();
    let it = IntervalTransfer::new(&Connection::flat(r), &g1).unwrap();
    let pi = parse_element(r, "y1 yd1 xd1").unwrap();
    let args = vec![pi.clone(), pi];
    let leaf = |i| DecoratedTree::leaf(i).with_bivalent();
    for t in [
        DecoratedTree::join(leaf(0), leaf(1)),
        DecoratedTree::join(leaf(0), DecoratedTree::leaf(1)).with_bivalent(),
    ] {
        assert_eq!(t.bivalent_count(), 2);
        assert!(t.evaluate(&it, &args, Root::Homotopy).unwrap().is_zero(), "{t}");
    }
}

#[test]
fn interval_transfer_constant_family() {
    let (r, gamma) = rank_one();
    let it = IntervalTransfer::new(&gamma, &gamma).unwrap();
    let pi = parse_element(r, "y1 yd1 xd1").unwrap();
    for n in 1..=2 {
        let v = it.component(&vec![pi.clone(); n]).unwrap();
        assert!(v.q.is_zero());
        assert_eq!(v.p.t_degree().unwrap_or(0), 0);
    }
}

#[test]
fn interval_transfer_endpoints_and_flow() {
    let (r, gamma) = rank_one();
    let it = IntervalTransfer::new(&Connection::flat(r), &gamma).unwrap();
    let pi = parse_element(r, "y1 yd1 xd1").unwrap();
    it.certify_endpoints(std::slice::from_ref(&pi)).unwrap();
    it.certify_endpoints(&[pi.clone(), pi.clone()]).unwrap();
    let gens = multivector_gens(r);
    let mut s = Sampler::new(25);
    for n in 1..=2 {
        for _ in 0..4 {
            let args: Vec<Element> = (0..n).map(|_| s.any_homogeneous(r, &gens, 0..=3, shape())).collect();
            it.certify_endpoints(&args).unwrap();
        }
    }

    let source = DgLa::big(r, None);
    let m = push_mc(&it, &source, it.target(), &pi).unwrap();
    assert!(mc_split_check(&pairing_g(r), &m).holds());
    assert!(m.q.coeffs().iter().all(|c| c.filtration_index().at_least(1, 1)));
    assert!(!m.q.is_zero());
    // endpoints agree with the pushes for each connection
    for (s, end) in [(q(0, 1), 0), (q(1, 1), 1)] {
        let e = it.endpoint(end);
        let w = push_mc(&e.quasi_iso(), &e.induced(), e.dgla(), &pi).unwrap();
        assert_eq!(ev(&s, &m), w);
    }
    // dt-part is the first interval component's correction
    let f1 = it.component(std::slice::from_ref(&pi)).unwrap();
    assert!(f1.q.coeffs().iter().all(|c| c.filtration_index().at_least(1, 1)));
    assert_eq!(it.diagonal(&pi).unwrap()[0], f1);
}

#[test]
fn interval_morphism_equations() {
    let (r, gamma) = rank_one();
    let it = IntervalTransfer::new(&Connection::flat(r), &gamma).unwrap();
    let source = DgLa::big(r, None);
    let gens = multivector_gens(r);
    let mut s = Sampler::new(26);
    for n in 1..=2 {
        for _ in 0..4 {
            let args: Vec<Element> = (0..n).map(|_| s.any_homogeneous(r, &gens, 0..=3, shape())).collect();
            let d = morphism_defect(&it, &source, it.target(), &args).unwrap();
            assert!(d.is_zero(), "defect at arity {n} on {args:?}: {d}");
        }
    }
    assert!(source.top_arity() == 2);
}
