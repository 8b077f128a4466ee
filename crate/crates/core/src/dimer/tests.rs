use super::fixtures::*;
use super::strands::strands_of;
use super::*;
use crate::perm::{connected_permutations, parse_permutation};
use crate::presentation::relation_numbers;

fn perm(s: &str) -> DecoratedPermutation {
    parse_permutation(s).unwrap()
}

use crate::perm::DecoratedPermutation;

#[test]
fn triangles_are_uniform() {
    for (m, k) in [(triangle_cl(), 2), (triangle_cc(), 1)] {
        validate_model(&m).unwrap();
        let d = strands(&m).unwrap();
        assert_eq!(d.strands.len(), 3);
        assert!(d.cycles.is_empty());
        assert_eq!(decorated_permutation(&m).unwrap(), DecoratedPermutation::uniform(k, 3).unwrap());
        consistency_check(&m).unwrap();
    }
}

#[test]
fn square_with_diagonal_strands() {
    let m = square_with_diagonal();
    validate_model(&m).unwrap();
    assert_eq!(decorated_permutation(&m).unwrap(), perm("2 4 1 3"));
    consistency_check(&m).unwrap();
    let d = strands(&m).unwrap();
    assert_eq!(d.strands[0].steps, vec![(1, Phase::Cl), (2, Phase::Cl)]);
    assert_eq!(d.strands[2].steps, vec![(5, Phase::Cc), (3, Phase::Cl), (1, Phase::Cl)]);
}

#[test]
fn every_state_is_crossed_once() {
    for m in [square_with_diagonal(), two_squares_parallel_bigon(), interior_cycle(), triangle_cc()] {
        let t = Topology::new(&m).unwrap();
        let d = strands_of(&t).unwrap();
        let mut count: std::collections::HashMap<(ArrowId, Phase), usize> = Default::default();
        for s in d.strands.iter().chain(&d.cycles) {
            let inner = if s.start == StrandEnd::Interior { &s.steps[..] } else { &s.steps[1..s.steps.len() - 1] };
            for &st in inner {
                *count.entry(st).or_default() += 1;
            }
        }
        for a in 0..t.arrow_count() {
            if t.is_internal(a) {
                for ph in [Phase::Cc, Phase::Cl] {
                    assert_eq!(count.get(&(t.arrow_ids[a], ph)), Some(&1));
                }
            }
        }
        let ends: Vec<usize> = d.strands.iter().map(|s| s.steps.len()).collect();
        assert!(ends.iter().all(|&l| l >= 2));
    }
}

#[test]
fn arrow_in_two_cc_faces() {
    let m = two_cc_faces();
    let v = validate_model(&m).unwrap_err();
    assert!(v.contains(&Violation::InternalArrowFaceSides(3)), "{v:?}");
    assert!(matches!(strands(&m), Err(DimerError::Invalid(_))));
}

#[test]
fn annulus_is_not_a_disk() {
    let v = validate_model(&annulus()).unwrap_err();
    assert!(v.contains(&Violation::NotADisk { euler: 0 }), "{v:?}");
}

#[test]
fn structural_violations() {
    let mut m = square_with_diagonal();
    m.arrows[0].dst = 1;
    let v = validate_model(&m).unwrap_err();
    assert!(v.contains(&Violation::Loop(1)));
    assert!(v.contains(&Violation::FaceNotCycle { phase: Phase::Cl, face: 0 }));

    let mut m = square_with_diagonal();
    m.faces_cl[0].push(99);
    assert!(validate_model(&m).unwrap_err().contains(&Violation::UnknownArrow { phase: Phase::Cl, face: 0, arrow: 99 }));

    let mut m = square_with_diagonal();
    m.boundary.swap(0, 1);
    assert!(validate_model(&m).is_err());

    let mut m = triangle_cl();
    m.vertices.push(7);
    let v = validate_model(&m).unwrap_err();
    assert!(v.contains(&Violation::NotADisk { euler: 2 }));
}

#[test]
fn parallel_bigon_is_a_bad_lens() {
    let m = two_squares_parallel_bigon();
    validate_model(&m).unwrap();
    let Err(DimerError::Bad(bad)) = consistency_check(&m) else { panic!("expected a bad configuration") };
    assert!(bad.contains(&BadConfiguration::BadLens {
        strands: (StrandRef::Boundary(2), StrandRef::Boundary(3)),
        first: 3,
        second: 4,
    }));
}

#[test]
fn interior_cycle_is_reported() {
    let m = interior_cycle();
    validate_model(&m).unwrap();
    let d = strands(&m).unwrap();
    assert_eq!(d.cycles.len(), 1);
    assert_eq!(d.cycles[0].steps.len(), 4);
    assert_eq!(d.endpoints(), vec![2, 1]);
    let Err(DimerError::Bad(bad)) = consistency_check(&m) else { panic!("expected a closed cycle") };
    assert!(bad.iter().any(|b| matches!(b, BadConfiguration::ClosedCycle { .. })));
    assert_eq!(decorated_permutation(&m), Err(DimerError::InteriorCycles(1)));
}

#[test]
fn json_shape() {
    let m = triangle_cl();
    let text = m.to_json();
    assert_eq!(DimerModel::from_json(&text).unwrap(), m);
    let compact = serde_json::to_string(&m).unwrap();
    assert_eq!(
        compact,
        r#"{"boundary":[1,2,3],"vertices":[1,2,3],"arrows":[{"id":1,"src":1,"dst":2},{"id":2,"src":2,"dst":3},{"id":3,"src":3,"dst":1}],"faces_cc":[],"faces_cl":[[1,2,3]]}"#
    );
    assert!(DimerModel::from_json("{").is_err());
}

#[test]
fn strand_sets_examples() {
    let s = strand_sets(&perm("2 5 6 1 3 4"), 3, 1).unwrap();
    assert_eq!((s.cl_count(), s.cc_count()), (1, 2));
    let s = strand_sets(&perm("4 5 8 2 9 1 6 7 3"), 6, 9).unwrap();
    assert_eq!(s.cl_count(), 3);
    let p = perm("2 5 6 1 3 4");
    for v2 in 1..=6 {
        assert!(strand_sets(&p, crate::perm::cyc(v2 + 1, 6), v2).unwrap().clockwise.is_empty());
    }
    assert_eq!(strand_sets(&p, 2, 2), Err(DimerError::EqualVertices(2)));
    assert_eq!(strand_sets(&p, 7, 2), Err(DimerError::VertexOutOfRange(7)));
}

#[test]
fn strand_sets_match_relation_numbers() {
    for n in 2..=7 {
        for p in connected_permutations(n) {
            for v1 in 1..=n {
                for v2 in (1..=n).filter(|&v| v != v1) {
                    let s = strand_sets(&p, v1, v2).unwrap();
                    let r = relation_numbers(&p, v1, v2).unwrap();
                    assert_eq!((s.cc_count(), s.cl_count()), (r.x, r.y), "{p} ({v1},{v2})");
                }
            }
        }
    }
}

#[test]
fn grassmannian_strand_count_partition() {
    for n in 2..=7 {
        for p in connected_permutations(n) {
            let k = p.noninversion_count();
            let (v1, v2) = (1, k + 1);
            let right = |j: usize| j > k;
            let s_rl = (1..=n).filter(|&j| right(j) && !right(p.image(j))).count();
            let cl_k1 = strand_sets(&p, v1, v2).unwrap().cl_count();
            let cc_1k = strand_sets(&p, v2, v1).unwrap().cc_count();
            let cc_k1 = strand_sets(&p, v1, v2).unwrap().cc_count();
            assert_eq!(n - k, s_rl + cc_1k + cl_k1, "{p}");
            assert_eq!(n - k, s_rl + cc_1k + cc_k1, "{p}");
        }
    }
}

