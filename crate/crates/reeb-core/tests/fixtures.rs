mod common;

use common::{diagram, trefoil, w, STABILIZED, TREFOIL, UNKNOT};
use reeb_core::chain_report::differential_candidates;
use reeb_core::diagram_core::parse_front;
use reeb_core::dynamics::{embed_orbit, is_bad};
use reeb_core::rat::{q, qr};
use reeb_core::reeb_words::parse_word;
use reeb_core::Error;

#[test]
fn split_fronts_resolve() {
    for f in ["L1,R1,L1,R1", "L1,R1,L1,X1,R1", "L1,R1,L1,R1,L1,R1"] {
        let d = diagram(f, 0);
        assert!(d.components.iter().all(|c| c.tb <= -1), "{f}");
        assert!(d.linking[0][1] == 0, "{f}");
    }
}

#[test]
fn text_form_round_trips() {
    for f in [TREFOIL, "L1,L3,X2,X2,R1,R1 / labels [2,3,1,4] / surgery {0:+1,1:-1}", "L1,L2,R1,R1 / surgery {0:0}"] {
        let a = parse_front(f).unwrap();
        assert_eq!(parse_front(&a.to_string()).unwrap(), a);
    }
}

#[test]
fn malformed_fronts_are_rejected() {
    assert!(matches!(parse_front("L1,Q2"), Err(Error::Syntax(_))));
    assert!(matches!(parse_front("L1,X3,R1"), Err(Error::Input(_))));
    assert!(matches!(parse_front("L1,L1"), Err(Error::Input(_))));
    assert!(parse_word("r1x").is_err());
}

#[test]
fn chord_actions_are_positive_and_faces_cover_them() {
    let d = trefoil(1);
    assert!(d.chords.iter().all(|c| c.action > q(0)));
    // every chord of a single-corner face has that face's area as its action
    for f in d.faces.iter().filter(|f| f.corners.len() == 1) {
        assert_eq!(f.area, d.chords[f.corners[0].chord].action);
    }
}

#[test]
fn stabilized_unknot_r1_bounds_its_teardrop() {
    let d = diagram(STABILIZED, 1);
    let rep = differential_candidates(&d, &w(&d, "r1"), qr(1, 100)).unwrap();
    assert_eq!(rep.survivors.len(), 1);
    let s = &rep.survivors[0];
    assert!(s.monomial.is_empty());
    assert_eq!(s.bubbling.iter().map(|b| b.face).collect::<Vec<_>>(), vec![2]);
    assert!(!s.ambiguous);
}

#[test]
fn unknot_planes_are_ambiguous_after_plus_surgery() {
    let d = diagram(UNKNOT, 1);
    let rep = differential_candidates(&d, &w(&d, "r1"), qr(1, 100)).unwrap();
    let s = &rep.survivors[0];
    assert!(s.monomial.is_empty());
    assert_eq!(s.bubbling.len(), 2);
    assert!(s.ambiguous);
}

#[test]
fn double_covers_of_negative_orbits_are_bad() {
    let d = trefoil(1);
    for x in ["r1r1", "r2r2", "r3r3"] {
        assert!(is_bad(&d, &w(&d, x)).unwrap(), "{x}");
    }
    for x in ["r4r4", "r1r2", "r4"] {
        assert!(!is_bad(&d, &w(&d, x)).unwrap(), "{x}");
    }
}

#[test]
fn large_epsilon_is_an_input_error() {
    let d = trefoil(1);
    assert!(matches!(embed_orbit(&d, &w(&d, "r1"), q(1)), Err(Error::Input(_))));
    assert!(matches!(differential_candidates(&d, &w(&d, "r4"), q(10)), Err(Error::Input(_))));
}
