use std::path::PathBuf;

use bfv_core::algebra::{Element, Roster};
use bfv_core::bfv::{build_charge, build_poisson, BfvStructure, Instance};
use bfv_core::invariance::{lift_matrix, Automorphism};
use bfv_core::linalg::PolyMatrix;
use bfv_core::serial::{deserialize, deserialize_charge, serialize, serialize_charge, Document};
use bfv_core::Error;

fn fixture(name: &str) -> Instance {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.json"));
    Instance::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn structures_round_trip() {
    for name in ["so3", "euler12", "curved21", "symplectic_point"] {
        let inst = fixture(name);
        let text = serialize(&inst);
        assert_eq!(deserialize::<Instance>(&text).unwrap(), inst);
        let s = build_poisson(&inst).unwrap();
        let text = serialize(&s);
        assert_eq!(
            text,
            serialize(&build_poisson(&inst).unwrap()),
            "{name}: not deterministic"
        );
        let back: BfvStructure = deserialize(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(deserialize::<Element>(&serialize(s.p_hat())).unwrap(), *s.p_hat());
    }
    let zero = Element::zero(Roster::new(0, 3));
    assert_eq!(deserialize::<Element>(&serialize(&zero)).unwrap(), zero);
}

#[test]
fn charges_round_trip() {
    let s = build_poisson(&fixture("so3")).unwrap();
    let c = build_charge(&s).unwrap().charge().unwrap();
    let text = serialize_charge(&c, &s).unwrap();
    assert_eq!(deserialize_charge(&text, &s).unwrap(), c);
    let other = build_poisson(&fixture("zero_point")).unwrap();
    assert!(matches!(
        deserialize_charge(&text, &other),
        Err(Error::ChargeMismatch(_))
    ));
}

#[test]
fn automorphisms_round_trip() {
    let r = Roster::new(1, 2);
    let rows = vec![
        vec!["1".to_string(), "x1".to_string()],
        vec!["0".to_string(), "1".to_string()],
    ];
    let (hat, _) = lift_matrix(r, &PolyMatrix::parse(r, &rows).unwrap()).unwrap();
    let text = serialize(&hat);
    assert_eq!(deserialize::<Automorphism>(&text).unwrap(), hat);
    let doc = Document::parse(&text).unwrap();
    assert_eq!(doc.kind, "automorphism");
}

#[test]
fn corrupted_structures_are_rejected() {
    let s = build_poisson(&fixture("so3")).unwrap();
    let text = serialize(&s);
    let lines: Vec<&str> = text.lines().collect();
    let truncated = lines[..lines.len() - 1].join("\n");
    assert!(matches!(
        deserialize::<BfvStructure>(&truncated),
        Err(Error::Serialization(_))
    ));
    let flipped = text.replacen("y3", "y2", 1);
    assert!(matches!(
        deserialize::<BfvStructure>(&flipped),
        Err(Error::Serialization(_))
    ));
}
