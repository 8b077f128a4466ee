use super::*;
use crate::dimer::{consistency_check, decorated_permutation, validate_model, Topology};
use crate::perm::{connected_permutations, parse_permutation, Decoration};

fn perm(s: &str) -> DecoratedPermutation {
    parse_permutation(s).unwrap()
}

#[test]
fn affine_permutation_of_uniform() {
    let f = AffinePermutation::from_decorated(&DecoratedPermutation::uniform(2, 5).unwrap());
    assert_eq!((1..=5).map(|i| f.at(i)).collect::<Vec<_>>(), vec![3, 4, 5, 6, 7]);
    assert_eq!(f.at(-1), 1);
    assert_eq!((f.k(), f.length(), f.dimension()), (2, 0, 6));
    let g = AffinePermutation::from_decorated(&perm("2 5 6 1 3 4"));
    assert_eq!(g.k(), 3);
    assert_eq!(g.dimension(), 7);
}

#[test]
fn bridge_count_is_dimension() {
    for n in 3..=6 {
        for p in connected_permutations(n) {
            let d = bridge_decomposition(&p, BridgeOrder::Least).unwrap();
            assert_eq!(d.bridges.len(), d.start.dimension(), "{p}");
            for b in &d.bridges {
                assert_ne!(b.left, b.right);
            }
        }
    }
}

#[test]
fn golden_roundtrips() {
    for s in ["2 5 6 1 3 4", "4 5 8 2 9 1 6 7 3", "3 1 2", "2 3 1"] {
        let p = perm(s);
        let m = realize(&p).unwrap();
        assert_eq!(decorated_permutation(&m).unwrap(), p);
        assert_eq!(m.n(), p.n());
    }
    let u = DecoratedPermutation::uniform(2, 4).unwrap();
    let m = realize(&u).unwrap();
    consistency_check(&m).unwrap();
    assert_eq!(decorated_permutation(&m).unwrap().images(), &[3, 4, 1, 2]);
}

#[test]
fn disconnected_is_rejected() {
    assert_eq!(realize(&perm("2 1 4 3")), Err(PlabicError::NotConnected));
}

#[test]
fn sweep_up_to_six() {
    for n in 3..=6 {
        for p in connected_permutations(n) {
            for order in [BridgeOrder::Least, BridgeOrder::Greatest, BridgeOrder::Seeded(n as u64)] {
                let g = plabic_with_order(&p, order).unwrap();
                assert_eq!(g.trip_permutation().unwrap(), p, "{p} {order:?}");
                let dim = AffinePermutation::from_decorated(&p).dimension();
                assert_eq!(g.face_count(), dim + 1, "{p} {order:?}");
                let m = realize_with(&p, order).unwrap_or_else(|e| panic!("{p} {order:?}: {e}"));
                validate_model(&m).unwrap();
                assert_eq!(m.vertices.len(), dim + 1);
            }
        }
    }
}

#[test]
fn spot_checks_at_seven_and_eight() {
    for s in ["3 5 7 1 2 4 6", "4 6 1 7 2 3 5", "5 7 8 1 2 3 4 6", "3 6 8 1 7 2 4 5"] {
        let p = perm(s);
        let m = realize(&p).unwrap();
        assert_eq!(decorated_permutation(&m).unwrap(), p);
    }
}

#[test]
fn face_type_count() {
    // #cc faces - #cl faces + #boundary arrows in cl faces is k
    for n in 3..=6 {
        for p in connected_permutations(n) {
            let m = realize(&p).unwrap();
            let t = Topology::new(&m).unwrap();
            let in_cl = t.boundary_arrow.iter().filter(|&&a| t.boundary_phase(a) == crate::dimer::Phase::Cl).count();
            let value = m.faces_cc.len() as i64 - m.faces_cl.len() as i64 + in_cl as i64;
            assert_eq!(value, p.noninversion_count() as i64, "{p}");
        }
    }
}

#[test]
fn lollipops_carry_decorations() {
    for s in ["1+ 3 2", "1- 3 2", "2 1 3+ 4-", "1+ 2- 3+"] {
        let p = perm(s);
        let g = plabic_from_permutation(&p).unwrap();
        assert_eq!(g.trip_permutation().unwrap(), p, "{s}");
    }
    let g = plabic_from_permutation(&perm("1+ 3 2")).unwrap();
    assert_eq!(g.trip_permutation().unwrap().decoration(1), Some(Decoration::Coloop));
}

#[test]
fn plabic_json_shape() {
    let g = plabic_from_permutation(&perm("3 1 2")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&g.to_json()).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(|s| s.as_str()).collect();
    assert_eq!(keys, ["black", "edges", "rotation", "white"]);
    assert_eq!(v["edges"].as_array().unwrap().len(), g.edges.len());
}

#[test]
fn model_json_roundtrip() {
    let m = realize(&perm("2 5 6 1 3 4")).unwrap();
    assert_eq!(crate::dimer::DimerModel::from_json(&m.to_json()).unwrap(), m);
}
