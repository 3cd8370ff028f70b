use liefilt::exactalg::{int, RatFunc, Rational};
use liefilt::jets::{flowout_sample, lift_tangent_to_q, q_dimension, u_exp_act, JetPoint, URElem};
use liefilt::lieflt::{
    check_bracket_compat, check_clean, Filtration, SamplePoints, Submanifold, Verdict,
};
use liefilt::osculating::{osculating_at, tangent_subalg, verify_hh};
use liefilt::vfield::{format_function, parse_vf, Chart, VectorField};
use liefilt::weightcoord::weighted_coordinates;

fn xyz() -> Chart {
    Chart::new(&["x", "y", "z"]).unwrap()
}

fn v(s: &str) -> VectorField {
    parse_vf(s, &xyz()).unwrap()
}

fn example1() -> Filtration {
    Filtration::new(
        3,
        vec![vec![v("dx + x*dz")], vec![v("dx + x*dz"), v("dy")], vec![]],
    )
    .unwrap()
}

fn martinet() -> Filtration {
    Filtration::new(
        3,
        vec![
            vec![v("dx + (2*x + y)*dz")],
            vec![v("dy + (x + x^2)*dz")],
            vec![v("2*x*dz")],
            vec![],
        ],
    )
    .unwrap()
}

fn origin() -> Submanifold {
    Submanifold::origin(3)
}

fn factorial(s: &[u32]) -> Rational {
    s.iter().fold(int(1), |acc, &e| {
        (1..=e as i64).fold(acc, |a, k| a * int(k))
    })
}

#[test]
fn example1_pipeline() {
    let f = example1();
    let checks =
        check_bracket_compat(&f, f.default_degree_bound(), &SamplePoints::default()).unwrap();
    assert!(checks.iter().all(|c| c.result.verdict == Verdict::Pass));
    let clean = check_clean(&f, &origin()).unwrap();
    assert_eq!(clean.ranks, vec![0, 1, 2, 3]);
    let w = weighted_coordinates(&f, &origin()).unwrap();
    let coords: Vec<String> = w
        .coords()
        .iter()
        .map(|c| format_function(c, &xyz()))
        .collect();
    assert_eq!(coords, ["x", "y", "z - 1/2*x^2"]);
    assert_eq!(q_dimension(&clean.ranks).total, 6);
}

#[test]
fn martinet_pipeline() {
    let f = martinet();
    let checks = check_bracket_compat(&f, 2, &SamplePoints::default()).unwrap();
    assert!(checks.iter().all(|c| c.result.verdict == Verdict::Pass));
    let clean = check_clean(&f, &origin()).unwrap();
    assert_eq!(clean.ranks, vec![0, 1, 2, 2, 3]);
    let w = weighted_coordinates(&f, &origin()).unwrap();
    assert_eq!(w.weights(), &[1, 2, 4]);
    assert_eq!(format_function(&w.coords()[2], &xyz()), "z - x^2 - x*y");
    for step in w.trace() {
        assert_eq!(step.c_s, RatFunc::constant(3, factorial(&step.s)));
    }
    assert_eq!(q_dimension(&clean.ranks).total, 8);
}

#[test]
fn martinet_flowout() {
    let f = martinet();
    let w = weighted_coordinates(&f, &origin()).unwrap();
    let rep = flowout_sample(&f, &w, 100, 0).unwrap();
    assert_eq!(rep.tested, 100);
    assert_eq!(rep.failed, 0, "{:?}", rep.first_failure);
}

#[test]
fn filtered_lifts_are_tangent_to_q() {
    let f = martinet();
    let w = weighted_coordinates(&f, &origin()).unwrap();
    let e = URElem::new(
        4,
        vec![
            (1, v("dx + (2*x + y)*dz")),
            (2, v("x*dy + x^2*dz")),
            (3, v("2*x*dz")),
            (4, v("dz")),
        ],
        int(1),
    )
    .unwrap();
    let q = u_exp_act(&e, &JetPoint::at(&[int(0), int(0), int(0)], 4)).unwrap();
    for (x, _) in [
        ("dx + (2*x + y)*dz", 1),
        ("dy + (x + x^2)*dz", 2),
        ("dz", 4),
    ] {
        let x = v(x);
        let d = w.vf_filtration_degree(&x).unwrap().unwrap();
        for j in 0..=4usize {
            if d >= -(j as i64) {
                assert!(lift_tangent_to_q(&x, j, &w, &q).unwrap(), "{j}");
            }
        }
    }
    // ∂z has degree -4, so its lower lifts leave Q at the zero jet.
    assert!(!lift_tangent_to_q(&v("dz"), 3, &w, &JetPoint::at(&vec![int(0); 3], 4)).unwrap());
}

#[test]
fn martinet_osculating_at_default_bound() {
    let f = martinet();
    let d = f.default_degree_bound();
    let osc = osculating_at(&f, &[int(0), int(0), int(0)], d).unwrap();
    assert_eq!(osc.graded_dims(), vec![1, 1, 1, 1]);
    let rm = tangent_subalg(&f, &origin(), &osc).unwrap();
    assert_eq!(rm.graded_dims(), vec![0, 0, 1, 0]);
    let clean = check_clean(&f, &origin()).unwrap();
    let w = weighted_coordinates(&f, &origin()).unwrap();
    let rep = verify_hh(&f, &origin(), &w, &clean.ranks, d).unwrap();
    assert_eq!(rep.verdict, Verdict::Pass);
}

#[test]
fn regular_filtration_has_constant_osculating_dims() {
    let f = Filtration::new(3, vec![vec![v("dx"), v("dy + x*dz")], vec![]]).unwrap();
    for p in [[0, 0, 0], [1, 2, -1], [-2, 1, 1]] {
        let p: Vec<Rational> = p.iter().map(|&k| int(k)).collect();
        let osc = osculating_at(&f, &p, 2).unwrap();
        assert_eq!(osc.graded_dims(), vec![2, 1]);
    }
}

#[test]
fn whole_manifold_gives_trivial_quotient() {
    let f = Filtration::new(3, vec![vec![v("dx"), v("dy + x*dz")], vec![]]).unwrap();
    let n = Submanifold::new(3, vec![0, 1, 2], vec![int(0); 3]).unwrap();
    let osc = osculating_at(&f, n.base_point(), 2).unwrap();
    let rm = tangent_subalg(&f, &n, &osc).unwrap();
    assert_eq!(rm.graded_dims(), osc.graded_dims());
    let clean = check_clean(&f, &n).unwrap();
    let w = weighted_coordinates(&f, &n).unwrap();
    let rep = verify_hh(&f, &n, &w, &clean.ranks, 2).unwrap();
    assert_eq!(rep.quotient_dims, vec![0, 0]);
    assert_eq!(rep.verdict, Verdict::Pass);
}

#[test]
fn broken_filtration_fails_pointwise() {
    let f = Filtration::new(
        3,
        vec![
            vec![v("dx"), v("dy + x*dz")],
            vec![v("dx"), v("dy + x*dz")],
            vec![],
        ],
    )
    .unwrap();
    let checks = check_bracket_compat(&f, 2, &SamplePoints::default()).unwrap();
    let bad: Vec<_> = checks
        .iter()
        .filter(|c| c.result.verdict == Verdict::Fail)
        .collect();
    assert!(!bad.is_empty());
    assert_eq!((bad[0].i, bad[0].j), (1, 1));
}
