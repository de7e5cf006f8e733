//! Documents produced by an independent Cayley-Dickson implementation
//! (`tools/oracle.py`) compared against the library.

mod common;

use vecprod::hurwitz::hurwitz;
use vecprod::io::{emit_algebra, parse_algebra, Algebra};
use vecprod::FieldSpec;

use common::*;

const VECTOR_GOLDENS: [(&str, &[i64]); 3] = [
    ("cross_q.json", &[1, 1]),
    ("octonion_q.json", &[1, 1, 1]),
    ("split_q.json", &[1, 2, 3]),
];

#[test]
fn constructed_algebras_match_oracle_documents() {
    for (name, norms) in VECTOR_GOLDENS {
        let (v, _) = standard(FieldSpec::Rationals, norms);
        assert_eq!(emit_algebra(&v.into()), read_golden(name), "{name}");
    }
}

#[test]
fn golden_documents_round_trip() {
    for name in [
        "cross_q.json",
        "octonion_q.json",
        "split_q.json",
        "octonion_unital_q.json",
    ] {
        let text = read_golden(name);
        let parsed = parse_algebra(&text).unwrap();
        assert_eq!(emit_algebra(&parsed), text, "{name}");
    }
}

#[test]
fn golden_algebras_satisfy_their_laws() {
    for (name, _) in VECTOR_GOLDENS {
        let Algebra::Vector(v) = parse_algebra(&read_golden(name)).unwrap() else {
            panic!("{name} is not a vector product algebra");
        };
        assert!(v.check_axioms().passed(), "{name}");
    }
    let Algebra::Unital(u) = parse_algebra(&read_golden("octonion_unital_q.json")).unwrap() else {
        panic!("expected a unital document");
    };
    assert_eq!(u.identity_index(), 0);
    assert!(u.check_composition(100, 1).passed());
}

#[test]
fn hurwitz_matches_oracle_composition_algebra() {
    let (v, _) = standard(FieldSpec::Rationals, &[1, 1, 1]);
    let h = hurwitz(&v).unwrap();
    assert_eq!(
        emit_algebra(&h.into()),
        read_golden("octonion_unital_q.json")
    );
}
