use std::path::PathBuf;

use bfv_core::algebra::{parse_element, q, Element, Gen, Roster, TPoly};
use bfv_core::bfv::{build_charge, build_charge_with, build_poisson, Charge, Instance};
use bfv_core::bracket::{bracket, omega0};
use bfv_core::connection::Connection;
use bfv_core::invariance::{
    bracket_defect, compare_connections, exp_ad, gauge_charges, gauge_tautological, generator_bracket_defect,
    hamiltonian_automorphism, integrate_flow, lift_matrix, linear_automorphism, moved_body_coordinate, Domain,
};
use bfv_core::linalg::PolyMatrix;
use bfv_core::Error;

fn fixture(name: &str) -> Instance {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.json"));
    Instance::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn el(r: Roster, s: &str) -> Element {
    parse_element(r, s).unwrap()
}

fn matrix(r: Roster, rows: &[&[&str]]) -> PolyMatrix {
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|row| row.iter().map(|s| s.to_string()).collect())
        .collect();
    PolyMatrix::parse(r, &rows).unwrap()
}

#[test]
fn zero_flow_is_identity() {
    let r = Roster::new(1, 1);
    let x0 = el(r, "y1 yd1 xd1 + c1 b1");
    let (x1, u) = integrate_flow(&TPoly::zero(r), &x0).unwrap();
    assert_eq!(x1, x0);
    assert!(u.is_identity());
}

#[test]
fn constant_flow_is_exponential() {
    let r = Roster::new(1, 2);
    let xi = el(r, "x1 c1 c2 cd1 b1");
    assert!(xi.filtration_index().at_least(1, 1));
    assert_eq!(xi.total_degree(), Some(1));
    for g in ["c1", "b2", "xd1", "cd2", "y1 yd2 xd1"] {
        let x0 = el(r, g);
        let (x1, aut) = integrate_flow(&TPoly::constant(xi.clone()), &x0).unwrap();
        // exp(ad ξ)(X₀) by direct series
        let mut term = x0.clone();
        let mut series = x0.clone();
        for n in 1..8 {
            term = bracket(&xi, &term).scale(&q(1, n));
            series.add_assign_ref(&term);
        }
        assert_eq!(x1, series, "{g}");
        assert_eq!(aut.apply(&x0).unwrap(), series);
    }
    let bad = TPoly::constant(el(r, "c1 cd1"));
    assert!(matches!(integrate_flow(&bad, &el(r, "c1")), Err(Error::Nilpotency(_))));
}

#[test]
fn connection_change_rank_one() {
    let inst = fixture("rank_one");
    let r = inst.roster();
    let flat = Connection::flat(r);
    let same = compare_connections(&inst, inst.connection(), inst.connection()).unwrap();
    assert!(same.automorphism.is_identity());

    let cmp = compare_connections(&inst, &flat, inst.connection()).unwrap();
    assert_eq!(cmp.automorphism.apply(cmp.source.p_hat()).unwrap(), *cmp.target.p_hat());
    assert!(!cmp.automorphism.is_identity());
    // the identity on the body, but not on the nose
    assert!(moved_body_coordinate(&cmp.automorphism).is_none());
    assert_eq!(cmp.automorphism.forward().image(Gen::x(1)), Element::gen(r, Gen::x(1)));
    assert_eq!(cmp.automorphism.forward().image(Gen::y(1)), el(r, "y1 - x1 y1 c1 b1"));
    assert!(cmp.flow().coeffs().iter().all(|c| c.filtration_index().at_least(1, 1)));
}

/// The full isomorphism: flow between connections, then gauge the charges.
fn isomorphism_maps_charges(name: &str, g0: &Connection, g1: &Connection) {
    let inst = fixture(name);
    let cmp = compare_connections(&inst, g0, g1).unwrap();
    let u = cmp.automorphism.restrict_to_functions().unwrap();
    let omega0 = build_charge(&cmp.source).unwrap().charge().unwrap();
    let omega1 = build_charge(&cmp.target).unwrap().charge().unwrap();
    let carried = Charge::certified(&cmp.target, u.apply(omega0.omega()).unwrap()).unwrap();
    let v = gauge_charges(&cmp.target, &carried, &omega1).unwrap();
    let full = u.then(&v).unwrap();
    assert_eq!(full.apply(omega0.omega()).unwrap(), *omega1.omega());
    assert!(bracket_defect(&cmp.source, &cmp.target, &full, 20, 41)
        .unwrap()
        .is_zero());
}

#[test]
fn connection_change_maps_charges() {
    let inst = fixture("rank_one");
    isomorphism_maps_charges("rank_one", &Connection::flat(inst.roster()), inst.connection());
    let inst = fixture("euler12");
    isomorphism_maps_charges("euler12", &Connection::flat(inst.roster()), inst.connection());
}

#[test]
fn curved_connection_change() {
    let inst = fixture("curved21");
    let cmp = compare_connections(&inst, &Connection::flat(inst.roster()), inst.connection()).unwrap();
    assert_ne!(cmp.source.delta(), cmp.target.delta());
    assert_eq!(cmp.automorphism.apply(cmp.source.p_hat()).unwrap(), *cmp.target.p_hat());
}

#[test]
fn gauge_identity_and_round_trip() {
    let s = build_poisson(&fixture("so3")).unwrap();
    let r = s.roster();
    let omega = build_charge(&s).unwrap().charge().unwrap();
    assert!(gauge_charges(&s, &omega, &omega).unwrap().is_identity());

    let xi = el(r, "y1 c1 c2 b1 b2 + 2 y3 c2 c3 b2 b3 - c1 c2 c3 b1 b2 b3");
    let moved = Charge::certified(&s, exp_ad(&s, &xi, omega.omega()).unwrap()).unwrap();
    assert_ne!(moved, omega);
    let g = gauge_charges(&s, &omega, &moved).unwrap();
    assert_eq!(g.apply(omega.omega()).unwrap(), *moved.omega());
    assert!(bracket_defect(&s, &s, &g, 30, 42).unwrap().is_zero());
    assert_eq!(g.domain(), Domain::Functions);

    let alt = build_charge_with(&s, &[el(r, "y1 c1 c2 b1 b2")])
        .unwrap()
        .charge()
        .unwrap();
    let g = gauge_charges(&s, &omega, &alt).unwrap();
    assert_eq!(g.apply(omega.omega()).unwrap(), *alt.omega());
    assert!(bracket_defect(&s, &s, &g, 30, 43).unwrap().is_zero());
}

#[test]
fn gauge_rejects_foreign_charges() {
    let s = build_poisson(&fixture("so3")).unwrap();
    let zero = build_poisson(&fixture("zero_line")).unwrap();
    let omega = build_charge(&s).unwrap().charge().unwrap();
    let other = build_charge(&zero).unwrap().charge().unwrap();
    assert!(matches!(
        gauge_charges(&s, &omega, &other),
        Err(Error::ChargeMismatch(_))
    ));
}

#[test]
fn hamiltonian_automorphisms_preserve_the_bracket() {
    let s = build_poisson(&fixture("euler12")).unwrap();
    let r = s.roster();
    let u = hamiltonian_automorphism(&s, &el(r, "x1 c1 c2 b1 b2 + y2 c1 c2 b1 b2")).unwrap();
    assert!(bracket_defect(&s, &s, &u, 30, 44).unwrap().is_zero());
}

#[test]
fn scalar_automorphisms() {
    for name in ["so3", "euler12", "zero_line"] {
        let inst = fixture(name);
        let r = inst.roster();
        let k = r.k_fiber();
        let rows: Vec<Vec<String>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| if i == j { "-3/2".into() } else { "0".into() })
                    .collect()
            })
            .collect();
        let g = PolyMatrix::parse(r, &rows).unwrap();
        let lin = linear_automorphism(&inst, &g).unwrap();
        assert_eq!(lin.hat.apply(&omega0(r)).unwrap(), omega0(r));
        assert_eq!(lin.hat.apply(lin.source.p_hat()).unwrap(), *lin.target.p_hat());
        assert!(lin.charges.is_some(), "{name}");
    }
}

#[test]
fn unipotent_automorphism() {
    let inst = fixture("euler12");
    let r = inst.roster();
    let g = matrix(r, &[&["1", "x1"], &["0", "1"]]);
    let lin = linear_automorphism(&inst, &g).unwrap();
    assert_eq!(lin.hat.apply(&omega0(r)).unwrap(), omega0(r));
    assert_eq!(lin.hat.apply(lin.source.p_hat()).unwrap(), *lin.target.p_hat());
    let (omega, image) = lin.charges.clone().unwrap();
    assert_eq!(lin.hat.apply(omega.omega()).unwrap(), *image.omega());
    assert_ne!(lin.instance.connection(), inst.connection());
    assert!(generator_bracket_defect(&lin.hat, &r.generators()).is_none());

    let zero = fixture("zero_line");
    linear_automorphism(&zero, &g).unwrap();
}

#[test]
fn singular_matrix_is_rejected() {
    let inst = fixture("euler12");
    let r = inst.roster();
    let g = matrix(r, &[&["x1", "0"], &["0", "1"]]);
    assert!(matches!(lift_matrix(r, &g), Err(Error::InvalidAutomorphism(_))));
    let g = matrix(r, &[&["1", "y1"], &["0", "1"]]);
    assert!(matches!(lift_matrix(r, &g), Err(Error::InvalidAutomorphism(_))));
}

#[test]
fn tautological_gauging() {
    let s = build_poisson(&fixture("euler12")).unwrap();
    let r = s.roster();
    let constant = gauge_tautological(&s, &[PolyMatrix::identity(r, 2)]).unwrap();
    assert!(constant.automorphism.is_identity());

    let family = [PolyMatrix::identity(r, 2), matrix(r, &[&["0", "x1"], &["0", "0"]])];
    let gauge = gauge_tautological(&s, &family).unwrap();
    assert_eq!(gauge.checked_at, vec![q(0, 1), q(1, 2), q(1, 1)]);
    let end = gauge.section.eval(&q(1, 1));
    assert_eq!(end, el(r, "y1 c1 + x1 y2 c1 + y2 c2"));
    assert_eq!(gauge.automorphism.apply(&end).unwrap(), omega0(r));
    assert!(!gauge.automorphism.is_identity());

    let singular = [PolyMatrix::identity(r, 2), matrix(r, &[&["x1", "0"], &["0", "0"]])];
    assert!(matches!(gauge_tautological(&s, &singular), Err(Error::OutOfSlice(_))));
}
