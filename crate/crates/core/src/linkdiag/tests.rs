use proptest::prelude::*;

use super::catalog::*;
use super::*;

const TREFOIL_TABLE: &str = "PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]";
const FIVE_TWO_TABLE: &str = "PD[X[1,4,2,5], X[3,8,4,9], X[5,10,6,1], X[9,6,10,7], X[7,2,8,3]]";

fn signs(d: &LinkDiagram) -> Vec<i8> {
    d.crossings().iter().map(|x| x.sign).collect()
}

#[test]
fn parse_empty() {
    let d = LinkDiagram::parse_pd("PD[]").unwrap();
    assert_eq!(d.n_components(), 0);
    assert_eq!(d.n_crossings(), 0);
}

#[test]
fn parse_table_trefoil() {
    let d = LinkDiagram::parse_pd(TREFOIL_TABLE).unwrap();
    assert_eq!(d.n_components(), 1);
    assert_eq!(d.writhe().abs(), 3);
    assert!(signs(&d).iter().all(|&s| s == signs(&d)[0]));
    let rh = if d.is_positive() { d } else { d.mirror() };
    assert_eq!(rh.writhe(), 3);
    assert_eq!(rh.stats(), trefoil().stats());
}

#[test]
fn parse_table_five_two() {
    let d = LinkDiagram::parse_pd(FIVE_TWO_TABLE).unwrap();
    assert_eq!(d.n_components(), 1);
    assert_eq!(d.n_crossings(), 5);
    let pos = if d.is_positive() { d } else { d.mirror() };
    assert!(pos.is_positive());
    let s = pos.stats();
    assert_eq!(s.writhe, vec![5]);
    assert_eq!(s.crossing_matrix, vec![vec![5]]);
    assert_eq!(s.seifert_circles, 4);
    assert_eq!(neg_five_two().stats(), s);
}

#[test]
fn parse_options_and_errors() {
    let d = LinkDiagram::parse_pd("PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3); framings=(-1,2); loops=1]").unwrap();
    assert_eq!(d.n_components(), 2);
    assert_eq!(d.framings(), vec![-1, 2]);
    assert_eq!(d.n_loops(), 1);
    assert!(matches!(
        LinkDiagram::parse_pd("PD[X(1,2,3)]"),
        Err(DiagramError::Arity { .. })
    ));
    assert!(matches!(
        LinkDiagram::parse_pd("PD[X(1,1,2,3)]"),
        Err(DiagramError::LabelCount { .. })
    ));
    assert!(matches!(
        LinkDiagram::parse_pd("PD[X(1,4,2,5); framings=(0,0)]"),
        Err(DiagramError::LabelCount { .. })
    ));
    assert!(matches!(
        LinkDiagram::parse_pd("PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3); framings=(0,0)]"),
        Err(DiagramError::FramingCount { .. })
    ));
    // arc 1 would have to enter both crossings as an under-strand
    assert!(matches!(
        LinkDiagram::parse_pd("PD[X(1,3,2,4), X(1,4,2,3)]"),
        Err(DiagramError::Orientation(_))
    ));
    assert!(LinkDiagram::parse_pd("garbage").is_err());
}

#[test]
fn pd_round_trip() {
    for d in corpus() {
        let back = LinkDiagram::parse_pd(&d.to_pd_string()).unwrap();
        assert_eq!(back.stats(), d.stats(), "{}", d.source());
        assert_eq!(back.framings().len(), d.framings().len());
    }
}

#[test]
fn braid_examples() {
    let t = LinkDiagram::parse_braid("BR[2; 1,1,1]").unwrap();
    assert_eq!((t.n_components(), t.writhe()), (1, 3));
    assert!(t.is_positive());
    let t34 = LinkDiagram::from_braid(&[1, 2, 1, 2, 1, 2, 1, 2], 3).unwrap();
    assert_eq!(t34.n_crossings(), 8);
    assert_eq!(t34.n_components(), 1);
    let h = LinkDiagram::from_braid(&[1, 1], 2).unwrap();
    assert_eq!(h.n_components(), 2);
    assert_eq!(h.stats().linking[0][1], 1);
    assert!(matches!(
        LinkDiagram::from_braid(&[2], 2),
        Err(DiagramError::BraidLetter { .. })
    ));
    assert!(matches!(LinkDiagram::from_braid(&[], 0), Err(DiagramError::NoStrands)));
    // untouched strands become loops
    let u = LinkDiagram::parse_braid("BR[3; 1]").unwrap();
    assert_eq!((u.n_components(), u.n_loops()), (2, 1));
}

#[test]
fn mirror_examples() {
    let m = trefoil().mirror();
    assert_eq!(m.writhe(), -3);
    assert_eq!(LinkDiagram::empty().mirror().n_components(), 0);
    for d in corpus() {
        assert_eq!(d.mirror().mirror().stats(), d.stats());
        assert_eq!(d.mirror().writhe(), -d.writhe());
        assert_eq!(d.mirror().seifert_circles(), d.seifert_circles());
    }
    let mut f = LinkDiagram::unknot(3);
    f = f.mirror();
    assert_eq!(f.framings(), vec![-3]);
}

#[test]
fn reverse_examples() {
    let h = hopf(1);
    let r = h.reverse_components(&[1]).unwrap();
    assert_eq!(r.stats().linking[0][1], -1);
    assert_eq!(r.writhe(), h.writhe() - 4);
    assert_eq!(h.reverse_components(&[]).unwrap(), h);
    assert!(matches!(h.reverse_components(&[2]), Err(DiagramError::UnknownComponent(2))));
    let c = LinkDiagram::unknot(0).cable(&CableSpec::new(vec![(1, 1)], vec![0])).unwrap();
    assert_eq!(c.reverse_components(&[0, 1]).unwrap().stats(), c.stats());
    for d in corpus() {
        let all: Vec<usize> = (0..d.n_components()).collect();
        let r = d.reverse_components(&all).unwrap();
        assert_eq!(r.stats(), d.stats(), "{}", d.source());
    }
    // self-crossings keep their sign under reversal
    let t = trefoil().disjoint_union(&hopf(1));
    let r = t.reverse_components(&[1]).unwrap();
    assert_eq!(r.stats().writhe, t.stats().writhe);
    assert_eq!(r.stats().linking[1][2], -1);
}

#[test]
fn stats_examples() {
    let s = trefoil().stats();
    assert_eq!((s.writhe.clone(), s.crossing_matrix.clone(), s.seifert_circles), (vec![3], vec![vec![3]], 2));
    let s = hopf(1).stats();
    assert_eq!(s.writhe, vec![0, 0]);
    assert_eq!(s.crossing_matrix[0][1], 1);
    assert_eq!(s.seifert_circles, 2);
    assert_eq!(s.positive[0][1], 2);
    assert_eq!(s.writhe_matrix(), vec![vec![0, 0], vec![0, 0]]);
}

#[test]
fn positive_diagram_law_values() {
    assert_eq!(trefoil().positive_diagram_s(), Some(2));
    assert_eq!(LinkDiagram::unknot(0).positive_diagram_s(), Some(0));
    assert_eq!(LinkDiagram::unlink(&[0, 0]).positive_diagram_s(), Some(-1));
    assert_eq!(neg_five_two().positive_diagram_s(), Some(2));
    assert_eq!(figure_eight().positive_diagram_s(), None);
}

#[test]
fn cable_examples() {
    let c = LinkDiagram::unknot(0).cable(&CableSpec::new(vec![(1, 1)], vec![0])).unwrap();
    assert_eq!((c.n_components(), c.n_crossings(), c.n_loops()), (2, 0, 2));
    assert_eq!(c.components()[1].reversed, true);

    let c = LinkDiagram::unknot(0).cable(&CableSpec::new(vec![(1, 0)], vec![-1])).unwrap();
    assert_eq!(c.framed_writhe(), -1);
    let k = c.normalize_framing();
    assert_eq!((k.n_crossings(), k.writhe()), (1, -1));
    assert_eq!(k.n_negative(), 1);

    let c = trefoil().cable(&CableSpec::new(vec![(2, 0)], vec![3])).unwrap();
    assert_eq!(c.n_crossings(), 12);
    assert_eq!(c.writhe(), 12);
    assert_eq!(c.n_components(), 2);

    // cabling the unknot with framing -1 into three strands gives T(3,-3)
    let c = LinkDiagram::unknot(-1).cable(&CableSpec::new(vec![(3, 0)], vec![-1])).unwrap();
    assert_eq!(c.n_crossings(), 6);
    assert_eq!(c.n_components(), 3);
    assert!(c.stats().linking.iter().enumerate().all(|(i, r)| r
        .iter()
        .enumerate()
        .all(|(j, &v)| v == if i == j { 0 } else { -1 })));

    // deleting a component
    let c = hopf(1).cable(&CableSpec::new(vec![(1, 0), (0, 0)], vec![0, 0])).unwrap();
    assert_eq!((c.n_components(), c.n_crossings()), (1, 0));
}

#[test]
fn cable_writhe_matches_quadratic_form() {
    let ds = [trefoil(), hopf(1), hopf(-1), figure_eight(), neg_five_two(), torus(2, 4)];
    for d in &ds {
        let m = d.n_components();
        let st = d.stats();
        for fr in [-2i64, 0, 3] {
            let f: Vec<i64> = (0..m).map(|i| fr + i as i64).collect();
            for alpha in [vec![1i64, -2], vec![-1, 1], vec![2, 0], vec![0, 1]] {
                let alpha = &alpha[..m];
                let spec = CableSpec::signed(alpha, 0, &f);
                let c = d.cable(&spec).unwrap();
                let mut q = 0;
                for i in 0..m {
                    for j in 0..m {
                        let p = if i == j { f[i] } else { st.linking[i][j] };
                        q += alpha[i] * alpha[j] * p;
                    }
                }
                assert_eq!(c.framed_writhe(), q, "{} {:?}", d.source(), alpha);
                assert_eq!(c.n_crossings(), d.cable_crossings(&spec));
                assert_eq!(c.n_components() as i64, alpha.iter().map(|a| a.abs()).sum::<i64>());
            }
        }
    }
}

#[test]
fn cable_crossing_matrix_scales() {
    for d in corpus().into_iter().filter(|d| d.n_crossings() <= 7) {
        let m = d.n_components();
        let st = d.stats();
        for n in 1..=3usize {
            let spec = CableSpec::new(vec![(n, 0); m], st.writhe.clone());
            let c = d.cable(&spec).unwrap();
            assert_eq!(c.n_crossings(), n * n * d.n_crossings());
            let cs = c.stats();
            let owner: Vec<usize> = (0..m).flat_map(|i| std::iter::repeat(i).take(n)).collect();
            for a in 0..owner.len() {
                for b in 0..owner.len() {
                    let expect = st.crossing_matrix[owner[a]][owner[b]];
                    assert_eq!(cs.crossing_matrix[a][b], expect, "{} n={n}", d.source());
                }
            }
        }
    }
}

#[test]
fn normalize_framing_matches() {
    let d = trefoil();
    let mut f = d.clone();
    f.set_framings(&[-1]).unwrap();
    let k = f.normalize_framing();
    assert_eq!(k.self_writhes(), vec![-1]);
    assert_eq!(k.n_crossings(), 7);
    assert_eq!(k.framings(), vec![-1]);
    let u = LinkDiagram::unknot(2).normalize_framing();
    assert_eq!((u.n_crossings(), u.writhe()), (2, 2));
    assert_eq!(u.seifert_circles(), 3);
}

#[test]
fn disjoint_union_counts() {
    let u = trefoil().disjoint_union(&hopf(-1));
    assert_eq!(u.n_components(), 3);
    assert_eq!(u.writhe(), 1);
    assert_eq!(u.seifert_circles(), 4);
}

#[test]
fn pretzel_and_named() {
    let p = pretzel_3_m3_m8();
    assert_eq!((p.n_crossings(), p.n_components()), (14, 1));
    assert_eq!(pretzel(&[-1, -1, -1]).unwrap().stats(), trefoil().stats());
    assert!(pretzel(&[-2, -1, -1]).unwrap().n_components() == 1);
    assert_eq!(by_name("T(2,5)").unwrap().writhe(), 5);
    assert_eq!(by_name("-T(2,3)").unwrap().writhe(), -3);
    assert_eq!(by_name("D(3,2,1)").unwrap().n_crossings(), 5);
    assert_eq!(by_name("unlink3").unwrap().n_components(), 3);
    assert!(by_name("nonsense").is_none());
}

fn arb_braid() -> impl Strategy<Value = (Vec<i64>, usize)> {
    (2usize..5).prop_flat_map(|n| {
        let letter = (1i64..n as i64, any::<bool>()).prop_map(|(j, s)| if s { j } else { -j });
        (proptest::collection::vec(letter, 0..12), Just(n))
    })
}

proptest! {
    #[test]
    fn writhe_decomposition((word, n) in arb_braid()) {
        let d = LinkDiagram::from_braid(&word, n).unwrap();
        let s = d.stats();
        prop_assert_eq!(s.total_signed(), d.writhe());
        prop_assert_eq!(d.n_crossings(), word.len());
        for i in 0..s.writhe.len() {
            for j in 0..s.writhe.len() {
                prop_assert_eq!(s.crossing_matrix[i][j], s.crossing_matrix[j][i]);
                prop_assert!(s.crossing_matrix[i][j] >= s.linking[i][j].abs());
            }
        }
    }

    #[test]
    fn mirror_and_reverse_involutions((word, n) in arb_braid(), pick in any::<u8>()) {
        let d = LinkDiagram::from_braid(&word, n).unwrap();
        prop_assert_eq!(d.mirror().mirror().stats(), d.stats());
        let subset: Vec<usize> = (0..d.n_components()).filter(|i| pick >> i & 1 == 1).collect();
        let r = d.reverse_components(&subset).unwrap();
        prop_assert_eq!(r.reverse_components(&subset).unwrap().stats(), d.stats());
        let s0 = d.stats();
        let s1 = r.stats();
        prop_assert_eq!(&s1.writhe, &s0.writhe);
        for i in 0..s0.writhe.len() {
            for j in 0..s0.writhe.len() {
                let flip = subset.contains(&i) != subset.contains(&j);
                let e = if flip { -s0.linking[i][j] } else { s0.linking[i][j] };
                prop_assert_eq!(s1.linking[i][j], e);
            }
        }
    }

    #[test]
    fn pd_round_trip_braids((word, n) in arb_braid()) {
        let d = LinkDiagram::from_braid(&word, n).unwrap();
        // loops are listed last by the text format
        prop_assume!(d.components().iter().skip_while(|c| !c.is_loop()).all(|c| c.is_loop()));
        let back = LinkDiagram::parse_pd(&d.to_pd_string()).unwrap();
        prop_assert_eq!(back.stats(), d.stats());
    }
}
