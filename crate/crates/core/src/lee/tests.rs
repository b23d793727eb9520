use super::*;
use crate::khovanov::{build_cube_complex, FrobeniusSpec, CUBE_CAP};
use crate::linkdiag::catalog;

fn s(d: &LinkDiagram) -> i64 {
    s_invariant(d, None).unwrap()
}

/// `s` straight from the cube: the explicit cycles `x_o`, `x_ō` and the
/// levels of their span, with no scanning and no eigenvectors.
fn cube_s(d: &LinkDiagram) -> i64 {
    let c = build_cube_complex::<Rat>(d, &FrobeniusSpec::lee(), CUBE_CAP).unwrap();
    let o = vec![false; d.n_components()];
    let x = canonical_cycle(d, &o, CUBE_CAP).unwrap();
    let slice = Slice::new(&c, &[], x.h);
    // x_ō swaps a and b on every circle: one sign per X
    let xo: Vec<(usize, Rat)> = x.support.iter().map(|&(i, c)| (i, Rat::from_i64(c))).collect();
    let xb: Vec<(usize, Rat)> = x
        .support
        .iter()
        .enumerate()
        .map(|(lab, &(i, c))| (i, Rat::from_i64(if lab.count_ones() % 2 == 0 { c } else { -c })))
        .collect();
    let levels = slice.span_levels(&[slice.local(&xo), slice.local(&xb)]);
    assert_eq!(levels.len(), 2, "{}", d.source());
    assert_eq!(levels[1] - levels[0], 2, "{}", d.source());
    levels[0] as i64 + 1
}

#[test]
fn anchors() {
    assert_eq!(s(&LinkDiagram::empty()), 1);
    assert_eq!(s(&LinkDiagram::unknot(0)), 0);
    assert_eq!(s(&LinkDiagram::unknot(5)), 0);
    assert_eq!(s(&catalog::trefoil()), 2);
    assert_eq!(s(&catalog::trefoil().mirror()), -2);
    assert_eq!(s(&catalog::figure_eight()), 0);
    assert_eq!(s(&catalog::neg_five_two()), 2);
    assert_eq!(s(&catalog::torus(2, 5)), 4);
    assert_eq!(s(&catalog::torus(3, 4)), 6);
    assert_eq!(s(&LinkDiagram::unlink(&[0, 0])), -1);
    assert_eq!(s(&catalog::hopf(1)), 1);
}

#[test]
fn slice_knot_has_s_zero() {
    assert_eq!(s(&catalog::pretzel_3_m3_m8()), 0);
}

#[test]
fn scan_agrees_with_cube_cycles() {
    for d in catalog::corpus().iter().filter(|d| d.n_crossings() <= 6 && d.n_components() > 0) {
        assert_eq!(s(d), cube_s(d), "{}", d.source());
    }
}

#[test]
fn canonical_cycles_are_cycles() {
    for d in catalog::corpus().iter().filter(|d| d.n_crossings() <= 8) {
        for o in orientation_classes(d.n_components()) {
            let x = canonical_cycle(d, &o, CUBE_CAP).unwrap();
            assert!(x.is_cycle, "{} {:?}", d.source(), o);
            assert_eq!(x.h, canonical_h(d, &o));
        }
    }
}

#[test]
fn lee_rank_is_two_to_the_components() {
    for d in catalog::corpus() {
        let l = lee_homology(&d, None).unwrap();
        assert_eq!(l.total, 1 << d.n_components(), "{}", d.source());
        assert_eq!(l.pairs.len(), orientation_classes(d.n_components()).len());
        for p in &l.pairs {
            assert_eq!(p.class_levels[0], p.class_levels[1], "{} {:?}", d.source(), p.orientation);
        }
    }
}

#[test]
fn positive_diagrams() {
    for d in catalog::corpus().iter().filter(|d| d.is_positive() && d.n_crossings() > 0) {
        assert_eq!(Some(s(d)), d.positive_diagram_s(), "{}", d.source());
    }
}

#[test]
fn mirror_antisymmetry_for_knots() {
    for d in catalog::corpus().iter().filter(|d| d.n_components() == 1) {
        assert_eq!(s(&d.mirror()), -s(d), "{}", d.source());
    }
}

#[test]
fn split_union_is_additive() {
    let a = catalog::trefoil();
    let b = catalog::figure_eight();
    let c = catalog::hopf(1);
    assert_eq!(s(&a.disjoint_union(&b)), s(&a) + s(&b) - 1);
    assert_eq!(s(&a.disjoint_union(&c)), s(&a) + s(&c) - 1);
}

#[test]
fn hopf_orientations() {
    let l = lee_homology(&catalog::hopf(1), None).unwrap();
    let hs: Vec<i32> = l.pairs.iter().map(|p| p.h).collect();
    assert_eq!(hs, vec![0, 2]);
    assert_eq!(l.dims, BTreeMap::from([(0, 2), (2, 2)]));
}

#[test]
fn degree_identities() {
    for d in catalog::corpus().iter().filter(|d| d.n_crossings() <= 8) {
        for r in canonical_degree_report(d, None).unwrap() {
            assert!(r.h_identity && r.z4_identity && r.levels_gap, "{}: {r:?}", d.source());
        }
    }
    let u = canonical_degree_report(&LinkDiagram::unknot(0), None).unwrap();
    assert_eq!(u[0].z4_classical, vec![1, 3]);
    assert_eq!(u[0].z4_gl2, vec![1, 3]);
    let h = canonical_degree_report(&catalog::hopf(1), None).unwrap();
    assert_eq!((h[1].h_classical, h[1].h_gl2), (2, -2));
}

#[test]
fn gl2_values() {
    for n in [-3i64, 0, 2] {
        assert_eq!(s_gl2(&LinkDiagram::unknot(n), None).unwrap(), -n);
    }
    // for knots s(-K) = -s(K), so the two differ by the framing
    for d in [catalog::trefoil(), catalog::neg_five_two(), catalog::figure_eight()] {
        assert_eq!(s_gl2(&d, None).unwrap(), s(&d) - d.framed_writhe(), "{}", d.source());
    }
}

#[test]
fn record_json() {
    let r = s_record("-3_1", &catalog::trefoil(), None).unwrap();
    let j = serde_json::to_value(&r).unwrap();
    assert_eq!(j["s"], 2);
    assert_eq!(j["provenance"], "computed");
}
