use super::*;

fn d11() -> Dims {
    Dims::new(1, 1).unwrap()
}

fn d43() -> Dims {
    Dims::new(4, 3).unwrap()
}

const KG_TEXT: &str = "-x1*sqrt(t1^2+t2^2+t3^2+1) + x2*t1 + x3*t2 + x4*t3";

#[test]
fn parse_smallest_product() {
    let e = parse("x1*t1", d11()).unwrap();
    assert_eq!(e, Expr::mul(Expr::x(0), Expr::theta(0)));
}

#[test]
fn parse_relativistic_phase() {
    let e = parse(KG_TEXT, d43()).unwrap();
    let omega = Expr::sqrt(Expr::sum(vec![
        Expr::pow(Expr::theta(0), 2),
        Expr::pow(Expr::theta(1), 2),
        Expr::pow(Expr::theta(2), 2),
        Expr::int(1),
    ]));
    let expected = Expr::sum(vec![
        Expr::neg(Expr::mul(Expr::x(0), omega)),
        Expr::mul(Expr::x(1), Expr::theta(0)),
        Expr::mul(Expr::x(2), Expr::theta(1)),
        Expr::mul(Expr::x(3), Expr::theta(2)),
    ]);
    assert_eq!(e, expected);
}

#[test]
fn parse_rejects_out_of_range_variable() {
    let err = parse("x1*t5", Dims::new(1, 3).unwrap()).unwrap_err();
    match err {
        ParseError::UnknownVariable { name, dims } => {
            assert_eq!(name, "t5");
            assert_eq!(dims.s, 3);
        }
        other => panic!("expected UnknownVariable, got {other:?}"),
    }
}

#[test]
fn parse_reports_syntax_position() {
    let err = parse("x1 + * t1", d11()).unwrap_err();
    match err {
        ParseError::Syntax { pos, .. } => assert_eq!(pos, 5),
        other => panic!("expected Syntax, got {other:?}"),
    }
}

#[test]
fn format_round_trips() {
    for text in [
        "x1*t1",
        KG_TEXT,
        "3/2",
        "x1^2 - t1^3 + 1/2",
        "sqrt(t1^2+1)/t1",
        "exp(-t1^2)*sin(x1)",
        "1/(x1*t1)",
        "-x1",
        "2/3*x1 - 0.125*t1",
    ] {
        let dims = d43();
        let e = parse(text, dims).unwrap();
        let printed = e.to_string();
        let reparsed = parse(&printed, dims).unwrap_or_else(|err| {
            panic!("failed to reparse `{printed}` (from `{text}`): {err}")
        });
        assert_eq!(reparsed, e, "round trip failed: `{text}` -> `{printed}`");
    }
}

#[test]
fn format_exact_rational() {
    let e = parse("3/2", d11()).unwrap();
    assert_eq!(e.to_string(), "3/2");
}

#[test]
fn eval_simple_product() {
    let e = parse("x1*t1", d11()).unwrap();
    assert_eq!(e.eval(&[2.0], &[3.0]).unwrap(), 6.0);
}

#[test]
fn eval_phase_vanishes_at_origin() {
    let e = parse(KG_TEXT, d43()).unwrap();
    for theta in [[0.3, -1.0, 2.0], [5.0, 0.0, 0.0], [1e3, 1e3, -1e3]] {
        assert_eq!(e.eval(&[0.0; 4], &theta).unwrap(), 0.0);
    }
}

#[test]
fn eval_domain_error_for_negative_sqrt() {
    let e = parse("sqrt(t1^2-1)", d11()).unwrap();
    let err = e.eval(&[0.0], &[0.0]).unwrap_err();
    assert!(err.reason.contains("negative"), "{err}");
}

#[test]
fn zero_factor_annihilates_nonfinite_partner() {
    // step_1 is exactly zero on the plateau; the 1/t1 factor is singular there
    let e = Expr::mul(
        Expr::step(1, Expr::sub(Expr::theta(0), Expr::int(5))),
        Expr::pow(Expr::theta(0), -1),
    );
    assert_eq!(e.eval(&[], &[0.0]).unwrap(), 0.0);
}

#[test]
fn diff_chain_rule_sqrt() {
    let e = parse("sqrt(t1^2+1)", d11()).unwrap();
    let d = simplify(&diff(&e, Axis::Theta(0)));
    let expected = parse("t1/sqrt(t1^2+1)", d11()).unwrap();
    assert_eq!(d, expected, "got {d}");
}

#[test]
fn diff_relativistic_phase_fiber_component() {
    let e = parse(KG_TEXT, d43()).unwrap();
    let d = simplify(&diff(&e, Axis::Theta(0)));
    let expected = parse("-x1*t1/sqrt(t1^2+t2^2+t3^2+1) + x2", d43()).unwrap();
    assert_eq!(d, expected, "got {d}");
}

fn sample_points(seed: u64, count: usize, dims: Dims) -> Vec<(Vec<f64>, Vec<f64>)> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let x: Vec<f64> = (0..dims.n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let t: Vec<f64> = (0..dims.s).map(|_| rng.gen_range(-2.0..2.0)).collect();
            (x, t)
        })
        .collect()
}

fn central_diff(e: &Expr, axis: Axis, x: &[f64], t: &[f64], h: f64) -> f64 {
    let mut xp = x.to_vec();
    let mut xm = x.to_vec();
    let mut tp = t.to_vec();
    let mut tm = t.to_vec();
    match axis {
        Axis::X(i) => {
            xp[i] += h;
            xm[i] -= h;
        }
        Axis::Theta(j) => {
            tp[j] += h;
            tm[j] -= h;
        }
    }
    let fp = e.eval(&xp, if matches!(axis, Axis::X(_)) { t } else { &tp }).unwrap();
    let fm = e.eval(&xm, if matches!(axis, Axis::X(_)) { t } else { &tm }).unwrap();
    (fp - fm) / (2.0 * h)
}

#[test]
fn derivative_matches_central_difference_on_presets() {
    let dims = d43();
    let exprs = [
        parse(KG_TEXT, dims).unwrap(),
        parse("sqrt(t1^2+t2^2+t3^2+1)", dims).unwrap(),
        parse("exp(-t1^2-t2^2-t3^2)", dims).unwrap(),
        parse("x1*t1 + x2*t2^2 - sin(x3)*cos(t3)", dims).unwrap(),
    ];
    for (k, e) in exprs.iter().enumerate() {
        for axis in [Axis::X(0), Axis::X(1), Axis::Theta(0), Axis::Theta(2)] {
            let d = diff(e, axis);
            for (x, t) in sample_points(100 + k as u64, 100, dims) {
                let exact = d.eval(&x, &t).unwrap();
                let approx = central_diff(e, axis, &x, &t, 1e-5);
                let tol = 1e-6 * (1.0 + approx.abs());
                assert!(
                    (exact - approx).abs() <= tol,
                    "expr {k} axis {axis:?} at ({x:?}, {t:?}): exact {exact} vs fd {approx}"
                );
            }
        }
    }
}

#[test]
fn mixed_partials_commute() {
    let dims = d43();
    let e = parse(KG_TEXT, dims).unwrap();
    for (i, j) in [(0, 0), (0, 1), (1, 2), (3, 0)] {
        let d1 = diff(&diff(&e, Axis::X(i)), Axis::Theta(j));
        let d2 = diff(&diff(&e, Axis::Theta(j)), Axis::X(i));
        for (x, t) in sample_points(7, 50, dims) {
            let a = d1.eval(&x, &t).unwrap();
            let b = d2.eval(&x, &t).unwrap();
            assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()), "({i},{j}): {a} vs {b}");
        }
    }
}

#[test]
fn diff_with_multiindex() {
    let dims = d11();
    let e = parse("x1^3*t1^2", dims).unwrap();
    let idx = MultiIndex { alpha: vec![2], beta: vec![1] };
    let d = diff_multi(&e, &idx);
    let expected = parse("12*x1*t1", dims).unwrap();
    assert_eq!(simplify(&d), expected);
}

#[test]
fn simplify_drops_zero_terms() {
    let e = parse("0*t1 + x1", d11()).unwrap();
    assert_eq!(e, Expr::x(0));
    assert_eq!(e.to_string(), "x1");
}

#[test]
fn simplify_cancels_identical_ratio() {
    let e = parse("t1^2/t1^2", d11()).unwrap();
    assert!(e.is_one());
}

#[test]
fn simplify_preserves_value_and_size() {
    let dims = d43();
    let exprs = [
        parse(KG_TEXT, dims).unwrap(),
        parse("(x1+t1)^2*(x1+t1)^-1", dims).unwrap(),
        parse("sqrt(t1^2+1)*sqrt(t1^2+1)", dims).unwrap(),
        parse("x1*t1 - t1*x1 + x2", dims).unwrap(),
    ];
    for e in &exprs {
        let s = simplify(e);
        assert!(s.tree_size() <= e.tree_size(), "{e} grew to {s}");
        for (x, t) in sample_points(42, 100, dims) {
            let (a, b) = (e.eval(&x, &t), s.eval(&x, &t));
            if let (Ok(a), Ok(b)) = (a, b) {
                assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()), "{e}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn sqrt_square_collapses() {
    let e = parse("sqrt(t1^2+1)^2", d11()).unwrap();
    let expected = parse("t1^2+1", d11()).unwrap();
    assert_eq!(e, expected);
}

#[test]
fn dims_rejects_zero() {
    assert!(Dims::new(0, 1).is_err());
    assert!(Dims::new(1, 0).is_err());
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn arb_expr(dims: Dims) -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (-20i64..20).prop_map(Expr::int),
            (1i64..9, 1i64..9).prop_map(|(p, q)| Expr::rat(p, q)),
            (0..dims.n).prop_map(Expr::x),
            (0..dims.s).prop_map(Expr::theta),
        ];
        leaf.prop_recursive(4, 64, 4, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::add(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::sub(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::mul(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::div(a, b)),
                (inner.clone(), -3i32..4).prop_map(|(a, k)| Expr::pow(a, k)),
                inner.clone().prop_map(|a| Expr::sqrt(Expr::add(Expr::mul(a.clone(), a), Expr::int(1)))),
                inner.clone().prop_map(Expr::exp),
                inner.clone().prop_map(Expr::sin),
                inner.clone().prop_map(Expr::cos),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn round_trip_parse_format(e in arb_expr(Dims::new(2, 2).unwrap())) {
            let printed = e.to_string();
            let reparsed = parse(&printed, Dims::new(2, 2).unwrap())
                .unwrap_or_else(|err| panic!("`{printed}`: {err}"));
            prop_assert_eq!(reparsed, e);
        }

        #[test]
        fn simplify_never_grows(e in arb_expr(Dims::new(2, 2).unwrap())) {
            let s = simplify(&e);
            prop_assert!(s.tree_size() <= e.tree_size());
        }

        #[test]
        fn simplify_is_idempotent(e in arb_expr(Dims::new(2, 2).unwrap())) {
            let s1 = simplify(&e);
            let s2 = simplify(&s1);
            prop_assert_eq!(s1, s2);
        }
    }
}
