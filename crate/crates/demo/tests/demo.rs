use deformed_algebra_demo::{
    compose_entropies, evaluate_expr, parse_bindings, sample_curve, Curve,
};

#[test]
fn curves_mark_the_domain_with_nan() {
    let ys = sample_curve(Curve::QExp, 1.0, -2.0, 1.0, 4).unwrap();
    assert!(ys[0].is_nan() && ys[1].is_nan());
    assert_eq!(&ys[2..], &[1.0, 2.0]);
    let ys = sample_curve(Curve::QLn, 0.0, 0.0, 2.0, 3).unwrap();
    assert!(ys[0].is_nan());
    assert_eq!(ys[1], 0.0);
    assert!((ys[2] - std::f64::consts::LN_2).abs() < 1e-15);
}

#[test]
fn curve_arguments_are_checked() {
    assert!(sample_curve(Curve::QExp, f64::NAN, 0.0, 1.0, 10).is_err());
    assert!(sample_curve(Curve::QExp, 1.0, 1.0, 0.0, 10).is_err());
    assert!(sample_curve(Curve::QExp, 1.0, 0.0, 1.0, 1).is_err());
    assert!(Curve::parse("sin").is_err());
}

#[test]
fn expressions() {
    let v = evaluate_expr("0.1 @+ 0.1", 1.0, "").unwrap();
    assert!((v - 0.21).abs() < 1e-15);
    assert_eq!(evaluate_expr("x @* y", 0.0, "x=2, y=3"), Ok(6.0));
    let err = evaluate_expr("1 @+ ", 1.0, "").unwrap_err();
    assert!(err.ends_with("\n1 @+ \n    ^"), "{err}");
    let err = evaluate_expr("2 * (3 @- (-1))", 1.0, "").unwrap_err();
    assert!(err.ends_with("    ^^^^^^^^^^^"), "{err}");
}

#[test]
fn bindings() {
    assert_eq!(
        parse_bindings(" x = 1 ; y=-2.5\n").unwrap(),
        vec![("x".to_string(), 1.0), ("y".to_string(), -2.5)]
    );
    assert!(parse_bindings("x").is_err());
    assert!(parse_bindings("x=one").is_err());
}

#[test]
fn entropy_composition() {
    let c = compose_entropies("0.25 0.25 0.25 0.25", "0.5, 0.5", 2.0).unwrap();
    assert_eq!((c.s_a, c.s_b, c.lambda), (0.75, 0.5, -1.0));
    assert!((c.joint - 0.875).abs() < 1e-15);
    assert!((c.composed - c.joint).abs() < 1e-15);
    assert!(compose_entropies("0.5 0.6", "1", 2.0).is_err());
    assert!(compose_entropies("1", "x", 2.0).is_err());
}
