use itertools::Itertools;
use proptest::prelude::*;

use super::quadratic::quad;
use super::*;
use crate::lee::s_invariant;
use crate::linkdiag::{catalog, CableSpec, LinkDiagram};

fn budget() -> Budget {
    Budget::default()
}

fn trace(knot: &LinkDiagram, n: i64) -> Handlebody {
    Handlebody::knot_trace(format!("X_{n}({})", knot.source()), knot, n).unwrap()
}

fn s_exact(x: &Handlebody, alpha: &[i64]) -> i64 {
    let e = diagrammatic_s(x, alpha, &budget()).unwrap();
    assert_eq!(e.status, Status::Exact, "{:?}", e.chain);
    e.value.exact().unwrap()
}

/// Every `x ≡ α (mod 2)` with `|x_i| ≤ r`.
fn coset_box(alpha: &[i64], r: i64) -> Vec<Vec<i64>> {
    alpha
        .iter()
        .map(|&a| (-r..=r).filter(move |b| (b - a).rem_euclid(2) == 0))
        .multi_cartesian_product()
        .collect()
}

fn in_kernel_lattice(m: &[Vec<i64>], v: &[i64]) -> bool {
    v.iter().all(|x| x % 2 == 0) && m.iter().all(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() == 0)
}

#[test]
fn maximizer_examples() {
    assert_eq!(
        maximize_quadratic_coset(&[vec![-1]], &[1]),
        CosetMaximum::Finite { h: -1, maximizers: vec![vec![-1], vec![1]] }
    );
    assert_eq!(maximize_quadratic_coset(&[vec![-1]], &[0]), CosetMaximum::Finite { h: 0, maximizers: vec![vec![0]] });
    assert_eq!(
        maximize_quadratic_coset(&[vec![0]], &[0]),
        CosetMaximum::InfiniteCoset { h: 0, representatives: vec![vec![0]], kernel: vec![vec![1]] }
    );
    assert_eq!(
        maximize_quadratic_coset(&[vec![-1, 0], vec![0, -2]], &[1, 0]),
        CosetMaximum::Finite { h: -1, maximizers: vec![vec![-1, 0], vec![1, 0]] }
    );
    assert_eq!(maximize_quadratic_coset(&[vec![1]], &[0]), CosetMaximum::Unbounded);
    assert_eq!(maximize_quadratic_coset(&[vec![-1, 0], vec![0, 1]], &[0, 0]), CosetMaximum::Unbounded);
}

fn neg_semidefinite(rows: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    // M = -BᵀB
    let m = rows[0].len();
    (0..m)
        .map(|i| (0..m).map(|j| -rows.iter().map(|r| r[i] * r[j]).sum::<i64>()).collect())
        .collect()
}

proptest! {
    #[test]
    fn maximizer_matches_brute_force(
        rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 1..=3),
        alpha in prop::collection::vec(-3i64..=3, 2),
    ) {
        let m = neg_semidefinite(rows);
        let brute: Vec<(i64, Vec<i64>)> = coset_box(&alpha, 9).into_iter().map(|x| (quad(&m, &x), x)).collect();
        let best = brute.iter().map(|(h, _)| *h).max().unwrap();
        let in_box: Vec<Vec<i64>> = brute.iter().filter(|(h, _)| *h == best).map(|(_, x)| x.clone()).collect();
        match maximize_quadratic_coset(&m, &alpha) {
            CosetMaximum::Finite { h, maximizers } => {
                prop_assert_eq!(h, best);
                prop_assert_eq!(maximizers, in_box);
            }
            CosetMaximum::InfiniteCoset { h, representatives, .. } => {
                prop_assert_eq!(h, best);
                for r in &representatives {
                    prop_assert_eq!(quad(&m, r), best);
                }
                // every maximizer in the box is a representative plus a kernel vector
                for x in &in_box {
                    let hit = representatives.iter().any(|r| {
                        let d: Vec<i64> = x.iter().zip(r).map(|(a, b)| a - b).collect();
                        in_kernel_lattice(&m, &d)
                    });
                    prop_assert!(hit, "{:?} not covered by {:?}", x, representatives);
                }
                // representatives are pairwise inequivalent
                for [a, b] in representatives.iter().array_combinations::<2>() {
                    let d: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                    prop_assert!(!in_kernel_lattice(&m, &d));
                }
            }
            CosetMaximum::Unbounded => prop_assert!(false, "semidefinite form reported unbounded"),
        }
    }

    #[test]
    fn indefinite_forms_are_unbounded(a in 1i64..4, b in 1i64..4, c in -3i64..=3) {
        // the diagonal entry a > 0 makes h grow along the first axis
        let m = vec![vec![a, c], vec![c, -b]];
        prop_assert_eq!(maximize_quadratic_coset(&m, &[0, 0]), CosetMaximum::Unbounded);
    }

    #[test]
    fn negativity_methods_agree(idx in 0usize..12, seed in prop::collection::vec(-2i64..=2, 3)) {
        let corpus: Vec<LinkDiagram> =
            catalog::corpus().into_iter().filter(|d| d.n_crossings() <= 8 && d.n_components() <= 3).collect();
        let d = &corpus[idx % corpus.len()];
        let alpha: Vec<i64> = (0..d.n_components()).map(|i| seed[i]).collect();
        prop_assert_eq!(negativity_closed_form(d, &alpha), negativity_by_cable(d, &alpha).unwrap());
    }

    #[test]
    fn unknot_trace_symmetry_and_parity(n in -3i64..=0, a in -2i64..=2) {
        let x = Handlebody::unknot_trace(n);
        let e = evaluate_class(&x, &[a], 1, &budget()).unwrap();
        let f = evaluate_class(&x, &[-a], 1, &budget()).unwrap();
        prop_assert_eq!(&e.value, &f.value);
        e.check_invariants().unwrap();
        if n < 0 {
            // s(X_{-k}(U); α) = k|α|
            prop_assert_eq!(e.value, SValue::Exact(-n * a.abs()));
        } else {
            prop_assert_eq!(e.value, SValue::Exact(0));
        }
    }
}

#[test]
fn negativity_examples() {
    assert!(cable_negativity_check(&catalog::trefoil(), &[2]).unwrap());
    assert!(cable_negativity_check(&catalog::trefoil(), &[-1]).unwrap());
    let hopf = LinkDiagram::from_braid(&[1, 1], 2).unwrap();
    assert!(cable_negativity_check(&hopf, &[1, 1]).unwrap());
    assert!(!cable_negativity_check(&hopf, &[1, -1]).unwrap());
    assert!(cable_negativity_check(&hopf, &[1, 0]).unwrap());
}

#[test]
fn framing_forms() {
    for n in [-3, 0, 2] {
        let f = Handlebody::unknot_trace(n).framing_form();
        assert_eq!((f.m, f.q), (vec![vec![n]], vec![vec![n]]));
    }
    let f = trace(&catalog::neg_five_two(), -1).framing_form();
    assert_eq!(f.m, vec![vec![-1]]);
    let lh = LinkDiagram::from_braid(&[-1, -1, -1], 2).unwrap();
    assert_eq!(trace(&lh, -6).framing_form().m, vec![vec![0]]);
    // Hopf link with framings (a, b): Q has linking 1 off the diagonal
    let mut hopf = catalog::hopf(1);
    hopf.set_framings(&[-2, -3]).unwrap();
    let f = Handlebody::new("hopf", hopf).framing_form();
    assert_eq!(f.q, vec![vec![-2, 1], vec![1, -3]]);
    assert_eq!(f.n, vec![vec![0, 1], vec![1, 0]]);
    assert_eq!(f.m, vec![vec![-2, 1], vec![1, -3]]);
}

#[test]
fn diagrammatic_examples() {
    for n in -3..0 {
        assert_eq!(s_exact(&Handlebody::unknot_trace(n), &[1]), -n);
    }
    let x1 = trace(&catalog::neg_five_two(), -1);
    assert_eq!(s_exact(&x1, &[1]), 3);
    assert_eq!(s_exact(&x1, &[-1]), 3);
    assert_eq!(s_exact(&x1, &[0]), 0);
    // X_0(U): infinite coset, decided because the kernel touches no crossing
    assert_eq!(s_exact(&Handlebody::unknot_trace(0), &[1]), 0);
    // M not negative semidefinite
    let e = diagrammatic_s(&Handlebody::unknot_trace(1), &[1], &budget()).unwrap();
    assert_eq!(e.status, Status::Inapplicable);
    // α = 2 does not maximize on 2Z when M = (-1)
    let e = diagrammatic_s(&Handlebody::unknot_trace(-1), &[2], &budget()).unwrap();
    assert_eq!(e.status, Status::Inapplicable);
    // the left-handed trefoil diagram has negative crossings
    let e = diagrammatic_s(&Handlebody::neg_torus_trace(2, 3, 6), &[1], &budget()).unwrap();
    assert_eq!(e.status, Status::Inapplicable);
}

#[test]
fn zero_class_vanishes_for_definite_m() {
    let mut hopf = catalog::hopf(1);
    hopf.set_framings(&[-2, -3]).unwrap();
    let cases = vec![
        trace(&catalog::neg_five_two(), -1),
        trace(&catalog::trefoil(), -2),
        trace(&catalog::torus(2, 5), -3),
        Handlebody::new("hopf", hopf),
        Handlebody::unknot_trace(-2),
    ];
    for x in cases {
        assert_eq!(definiteness(&x.framing_form().m), Definiteness::NegativeDefinite, "{}", x.name);
        assert_eq!(s_exact(&x, &vec![0; x.n_handles()]), 0, "{}", x.name);
    }
}

#[test]
fn diagram_independence_under_positive_kinks() {
    let k = catalog::neg_five_two();
    let mut kinked = k.clone();
    kinked.set_framings(&[k.writhe() + 2]).unwrap();
    let mut kinked = kinked.normalize_framing();
    assert_eq!(kinked.n_crossings(), k.n_crossings() + 2);
    kinked.set_framings(&[-1]).unwrap();
    let (a, b) = (trace(&k, -1), trace(&kinked, -1));
    assert_eq!(a.framing_form().m, b.framing_form().m);
    for alpha in [[0], [1]] {
        assert_eq!(s_exact(&a, &alpha), s_exact(&b, &alpha));
    }
}

#[test]
fn torus_cable_formula_matches_computed_s() {
    // (p, q, k, r, s)
    let cases = [
        (1, 1, 1, 2, 0),
        (1, 1, 2, 2, 0),
        (1, 1, 1, 1, 1),
        (1, 1, 1, 3, 0),
        (1, 1, 2, 2, 1),
        (2, 3, 6, 1, 0),
        (2, 3, 6, 1, 1),
        (2, 3, 6, 2, 0),
        (2, 3, 7, 1, 0),
        (2, 3, 7, 1, 1),
    ];
    for (p, q, k, r, s) in cases {
        let base = if p == 1 { LinkDiagram::unknot(0) } else { catalog::torus(p, q as i64) };
        let cable = base.cable(&CableSpec::new(vec![(r as usize, s as usize)], vec![k])).unwrap();
        assert_eq!(
            Some(s_invariant(&cable, None).unwrap()),
            torus_cable_s(p, q, k, r, s),
            "T({p},{q})^{k}({r},{s})"
        );
    }
    assert_eq!(torus_cable_s(2, 3, 5, 1, 0), None);
}

#[test]
fn torus_traces() {
    for (p, q, k, want) in [(2, 3, 6, 4), (2, 3, 7, 5), (2, 5, 10, 6)] {
        let e = torus_trace_s(p, q, k, 1).unwrap();
        assert_eq!(e.value, SValue::Exact(want));
        assert_eq!(e.value, SValue::Exact(k - (p * q) as i64 + p as i64 + q as i64 - 1));
        assert_eq!(torus_trace_s(p, q, k, -1).unwrap().value, e.value);
        assert_eq!(torus_trace_s(p, q, k, 0).unwrap().value, SValue::Exact(0));
    }
    // the r = 0 cable term agrees with the closed form
    let x = Handlebody::neg_torus_trace(2, 3, 6);
    let seq = lasagna_s_sequence(&x, &[1], 0, &budget()).unwrap();
    assert_eq!(seq.bound(), Some(4));
    let e = evaluate_class(&x, &[1], 0, &budget()).unwrap();
    assert_eq!((e.value, e.provenance), (SValue::Exact(4), Provenance::TheoremComposition));
}

#[test]
fn sequences() {
    let terms = |x: &Handlebody, a: i64, r: usize| -> Vec<i64> {
        lasagna_s_sequence(x, &[a], r, &budget()).unwrap().terms.iter().map(|t| t.term).collect()
    };
    assert_eq!(terms(&Handlebody::unknot_trace(0), 1, 2), vec![0, 0, 0]);
    assert_eq!(terms(&Handlebody::unknot_trace(0), 0, 2), vec![0, 0, 0]);
    assert_eq!(terms(&Handlebody::unknot_trace(-1), 1, 1), vec![1, 1]);
    assert_eq!(terms(&Handlebody::unknot_trace(-1), 0, 1), vec![0, 0]);
    let x2 = trace(&catalog::pretzel_3_m3_m8(), -1);
    assert_eq!(terms(&x2, 1, 0), vec![1]);
    let x1 = trace(&catalog::neg_five_two(), -1);
    assert_eq!(terms(&x1, 1, 0), vec![3]);
    assert_eq!(terms(&x1, 0, 1), vec![0, 0]);
}

#[test]
fn crossing_guard_truncates() {
    let x1 = trace(&catalog::neg_five_two(), -1);
    let tight = Budget { max_crossings: 10, generators: None };
    let seq = lasagna_s_sequence(&x1, &[1], 1, &tight).unwrap();
    assert_eq!(seq.terms.len(), 1);
    assert!(seq.truncated.is_some());
}

#[test]
fn bounds_only_parity() {
    let x2 = trace(&catalog::pretzel_3_m3_m8(), -1);
    let e = evaluate_class(&x2, &[1], 0, &budget()).unwrap();
    assert_eq!((e.value, e.status), (SValue::AtMost(1), Status::Bound));
}

#[test]
fn double_classes() {
    let x = Handlebody::unknot_trace(-1);
    let t = enumerate_double_classes(&x, &[0], Window::Radius(4), &|_| SValue::Unknown).unwrap();
    for e in &t.entries {
        let p = e.alpha_plus[0];
        assert_eq!(e.h, -2 * p * p);
        assert_eq!(e.alpha_minus[0], -p);
    }
    let t = enumerate_double_classes(&x, &[0], Window::Degree(8), &|_| SValue::Unknown).unwrap();
    let hs: Vec<i64> = t.entries.iter().map(|e| e.h).collect();
    assert_eq!(hs, vec![-8, -2, 0, -2, -8]);
    // symmetry (α₊, α₋) ↔ (α₋, α₊)
    for e in &t.entries {
        let f = t.entries.iter().find(|f| f.alpha_plus == e.alpha_minus).unwrap();
        assert_eq!(f.h, e.h);
    }
    let y = Handlebody::unknot_trace(0);
    let t = enumerate_double_classes(&y, &[0], Window::Radius(2), &|_| SValue::Unknown).unwrap();
    assert!(t.entries.iter().all(|e| e.h == 0));
    assert!(enumerate_double_classes(&y, &[0], Window::Degree(2), &|_| SValue::Unknown).is_err());
    let t = enumerate_double_classes(&x, &[3], Window::Radius(3), &|_| SValue::Unknown).unwrap();
    assert!(t.entries.iter().any(|e| e.alpha_minus == vec![0] && e.h == 0));
}

fn cp2_bar_s(beta: &[i64]) -> SValue {
    evaluate_class(&Handlebody::unknot_trace(-1), beta, 0, &budget()).unwrap().value
}

#[test]
fn cp2_bar_structure() {
    let x = Handlebody::unknot_trace(-1);
    for a in [0i64, 1] {
        let t = lee_structure_table(&x, &[a], Window::Radius(2), &cp2_bar_s).unwrap();
        assert!(t.gaps.is_empty());
        let a2 = -a * a;
        let mut want = std::collections::BTreeMap::new();
        for b in (-2i64..=2).filter(|b| (b - a).rem_euclid(2) == 0) {
            let h = (-b * b - a2) / 2;
            if b == 0 {
                *want.entry((h, a2 / 2)).or_insert(0) += 1;
            } else {
                for pm in [-1, 1] {
                    *want.entry((h, (a2 + b * b) / 2 + b.abs() - 1 + pm)).or_insert(0) += 1;
                }
            }
        }
        assert_eq!(t.dims(), want, "α = {a}");
    }
}

#[test]
fn s2xd2_structure() {
    let x = Handlebody::unknot_trace(0);
    for a in [0i64, 1, 2] {
        let t = lee_structure_table(&x, &[a], Window::Radius(3), &|_| SValue::Unknown).unwrap();
        let want: std::collections::BTreeMap<(i64, i64), usize> = (0..=3).map(|k| ((0, -2 * k), 1)).collect();
        assert_eq!(t.dims(), want, "α = {a}");
    }
    assert!(lee_structure_table(&Handlebody::neg_torus_trace(2, 3, 6), &[0], Window::Radius(1), &|_| SValue::Unknown)
        .is_ok());
}

#[test]
fn connected_sums() {
    let one = |name: &str, s: i64| {
        LasagnaSReport::new(
            name,
            vec![ClassEntry {
                alpha: vec![1],
                square: -1,
                value: SValue::Exact(s),
                status: Status::Exact,
                provenance: Provenance::Computed,
                chain: vec![],
            }],
        )
    };
    let (x1, x2) = (one("X1", 3), one("X2", 1));
    for (a, b) in [(1usize, 0usize), (0, 1), (1, 1), (2, 0)] {
        let parts: Vec<(&LasagnaSReport, Vec<i64>)> =
            std::iter::repeat((&x1, vec![1])).take(a).chain(std::iter::repeat((&x2, vec![1])).take(b)).collect();
        let total = connected_sum_compose(&parts);
        assert_eq!(total.classes[0].value, SValue::Exact(3 * a as i64 + b as i64));
    }
    let mut dead = one("V", 0);
    dead.classes[0].value = SValue::MinusInfinity;
    assert_eq!(connected_sum_compose(&[(&x1, vec![1]), (&dead, vec![1])]).classes[0].value, SValue::MinusInfinity);
    let s2 = LasagnaSReport::new("S2xD2", vec![evaluate_class(&Handlebody::unknot_trace(0), &[2], 0, &budget()).unwrap()]);
    assert_eq!(connected_sum_compose(&[(&x1, vec![1]), (&s2, vec![2])]).classes[0].value, SValue::Exact(3));
}

#[test]
fn vanishing() {
    let cert = |tb: i64| TbCertificate { component: 0, subject: "mirror".into(), tb, source: "test".into() };
    for n in 1..4 {
        let v = ng_vanishing(&Handlebody::unknot_trace(n), &[cert(-1)]);
        assert_eq!(v.status, VerdictStatus::Vanishing);
    }
    assert_eq!(ng_vanishing(&Handlebody::unknot_trace(0), &[cert(-1)]).status, VerdictStatus::Unknown);
    for n in [-1, 1] {
        assert_eq!(ng_vanishing(&trace(&catalog::trefoil().mirror(), n), &[cert(1)]).status, VerdictStatus::Vanishing);
    }
    let x = trace(&catalog::torus(2, 3), 6);
    assert_eq!(ng_vanishing(&x, &[cert(-6)]).status, VerdictStatus::Vanishing);
    assert_eq!(ng_vanishing(&trace(&catalog::torus(2, 3), 5), &[cert(-6)]).status, VerdictStatus::Unknown);
}

#[test]
fn concordance_and_genus() {
    let b = budget();
    let src = Handlebody::unknot_trace(-1);
    let report = LasagnaSReport::new(src.name.clone(), vec![evaluate_class(&src, &[1], 0, &b).unwrap()]);
    let dst = trace(&catalog::pretzel_3_m3_m8(), -1);
    let fact = ConcordanceFact { from: "P(3,-3,-8)".into(), to: "unknot".into(), source: "test".into() };
    let moved = concordance_transfer(&report, &src, &dst, &fact).unwrap();
    assert_eq!(moved.value(&[1]), SValue::Exact(1));
    assert!(moved.classes[0].chain.iter().any(|s| s.provenance == Provenance::IngestedFact));
    let two = Handlebody::new("two", LinkDiagram::unlink(&[-1, -1]));
    assert!(concordance_transfer(&report, &src, &two, &fact).is_err());

    let rows = genus_and_shake_bounds(&dst, &moved, &[(vec![1], 0, "slice disk".into())]);
    assert_eq!((rows[0].shake_lower, rows[0].sharp), (Some(0), true));
    let x1 = trace(&catalog::neg_five_two(), -1);
    let r1 = LasagnaSReport::new("X1", vec![evaluate_class(&x1, &[1], 0, &b).unwrap()]);
    let rows = genus_and_shake_bounds(&x1, &r1, &[]);
    assert_eq!((rows[0].genus_lower, rows[0].shake_lower), (1, Some(1)));
}

#[test]
fn parse_handlebody() {
    let x = Handlebody::parse("# exotic\nname = X1\ndiagram = -5_2\nframing = -1\n").unwrap();
    assert_eq!((x.name.as_str(), x.framings(), x.diagram.n_crossings()), ("X1", vec![-1], 5));
    let y = Handlebody::parse("diagram = -T(2,3)\nframing = -6").unwrap();
    assert_eq!(y.torus, Some((2, 3)));
    let z = Handlebody::parse("diagram = BR[2; 1, 1]\nframing = -1, -2\nsplit = 1").unwrap();
    assert_eq!((z.n_handles(), z.split.clone()), (2, vec![1]));
    assert!(matches!(Handlebody::parse("diagram = nope"), Err(LasagnaError::Parse { .. })));
    assert!(matches!(Handlebody::parse("framing = -1"), Err(LasagnaError::Parse { .. })));
    assert!(matches!(Handlebody::parse("diagram = unknot\nframing = x"), Err(LasagnaError::Parse { line: 2, .. })));
}

#[test]
fn report_json() {
    let x1 = trace(&catalog::neg_five_two(), -1);
    let r = LasagnaSReport::new("X1", vec![evaluate_class(&x1, &[1], 0, &budget()).unwrap()]);
    r.check_invariants().unwrap();
    let j = serde_json::to_value(&r).unwrap();
    assert_eq!(j["classes"][0]["value"]["kind"], "exact");
    assert_eq!(j["classes"][0]["value"]["value"], 3);
    assert_eq!(j["verdict"]["status"], "nonvanishing");
}
