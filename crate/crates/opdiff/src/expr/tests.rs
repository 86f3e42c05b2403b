use super::*;
use crate::error::Error;
use approx::assert_abs_diff_eq;
use proptest::prelude::*;

fn c(v: f64) -> Expr {
    Expr::Const(v)
}

#[test]
fn parse_variable() {
    assert_eq!(Expr::parse("x").unwrap(), Expr::X);
}

#[test]
fn parse_function_call() {
    let e = Expr::parse("sin(2*pi*x)").unwrap();
    let arg = Expr::Mul(
        Box::new(Expr::Mul(Box::new(c(2.0)), Box::new(Expr::Pi))),
        Box::new(Expr::X),
    );
    assert_eq!(e, Expr::Fun(Func::Sin, Box::new(arg)));
}

#[test]
fn parse_example_one_source() {
    // The oscillatory quintic-free test function used by the Bernstein runs.
    let e = Expr::parse("1/(32*pi)*(4*pi*x*cos(2*pi*x) - pi*cos(2*pi*x) - 6*sin(2*pi*x))")
        .unwrap();
    // Spot-check the structure via evaluation: f(0) = -pi cos 0 / (32 pi) = -1/32.
    assert_abs_diff_eq!(e.eval(0.0).unwrap(), -1.0 / 32.0, epsilon = 1e-15);
}

#[test]
fn parse_errors_carry_offsets() {
    match Expr::parse("1 + ") {
        Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 4),
        other => panic!("expected syntax error, got {other:?}"),
    }
    match Expr::parse("2*y") {
        Err(Error::UnknownIdentifier { name, offset }) => {
            assert_eq!(name, "y");
            assert_eq!(offset, 2);
        }
        other => panic!("expected unknown identifier, got {other:?}"),
    }
    assert!(Expr::parse("").is_err());
    assert!(Expr::parse("x^2.5").is_err());
    assert!(Expr::parse("x^-1").is_err());
}

#[test]
fn precedence_binds_as_documented() {
    // ^ over unary minus over * / over + -
    let e = Expr::parse("-x^2").unwrap();
    assert_eq!(e, Expr::Neg(Box::new(Expr::Pow(Box::new(Expr::X), 2))));
    let e = Expr::parse("1 - 2*x").unwrap();
    assert_eq!(
        e,
        Expr::Sub(
            Box::new(c(1.0)),
            Box::new(Expr::Mul(Box::new(c(2.0)), Box::new(Expr::X)))
        )
    );
}

#[test]
fn differentiate_power_rule() {
    let e = Expr::parse("x^3").unwrap().differentiate();
    assert_eq!(e, Expr::Mul(Box::new(c(3.0)), Box::new(Expr::Pow(Box::new(Expr::X), 2))));
}

#[test]
fn differentiate_constant_is_zero() {
    assert_eq!(c(5.0).differentiate(), c(0.0));
}

#[test]
fn differentiate_chain_rule_sinusoid() {
    let e = Expr::parse("sin(2*pi*x)").unwrap().differentiate();
    // 2 pi cos(2 pi x), checked by evaluation
    for &x in &[0.0, 0.125, 0.3, 0.75, 1.0] {
        let expected = 2.0 * std::f64::consts::PI * (2.0 * std::f64::consts::PI * x).cos();
        assert_abs_diff_eq!(e.eval(x).unwrap(), expected, epsilon = 1e-13);
    }
}

#[test]
fn eval_basics() {
    assert_abs_diff_eq!(Expr::parse("x^2").unwrap().eval(0.5).unwrap(), 0.25);
    assert_abs_diff_eq!(
        Expr::parse("sin(pi*x)").unwrap().eval(1.0).unwrap(),
        0.0,
        epsilon = 1e-15
    );
}

#[test]
fn eval_domain_errors_name_the_subtree() {
    let e = Expr::parse("1/x").unwrap();
    match e.eval(0.0) {
        Err(Error::Domain { what, subtree, .. }) => {
            assert!(what.contains("division"));
            assert_eq!(subtree, "1/x");
        }
        other => panic!("expected domain error, got {other:?}"),
    }
    assert!(Expr::parse("ln(x)").unwrap().eval(0.0).is_err());
    assert!(Expr::parse("sqrt(x - 1)").unwrap().eval(0.5).is_err());
}

#[test]
fn second_derivative_of_quintic_at_zero() {
    // d²/dx² of x⁵/20 − 3x⁴/32 + 13x³/192 − 3x²/128 is
    // x³ − (9/8)x² + (13/32)x − 3/64; at 0 the value is −3/64.
    let f = Expr::parse("x^5/20 - 3*x^4/32 + 13*x^3/192 - 3*x^2/128").unwrap();
    let f2 = f.differentiate().differentiate();
    assert_abs_diff_eq!(f2.eval(0.0).unwrap(), -0.046875, epsilon = 1e-15);
}

#[test]
fn smooth_fn_polynomial_ladder() {
    let s = SmoothFn::new(Expr::X, 2);
    assert_eq!(s.deriv(0), &Expr::X);
    assert_eq!(s.deriv(1), &c(1.0));
    assert_eq!(s.deriv(2), &c(0.0));
}

#[test]
fn smooth_fn_sine_cycle() {
    let s = SmoothFn::parse("sin(x)", 4).unwrap();
    assert_eq!(s.deriv(4), s.deriv(0));
    assert_eq!(s.deriv(4), &Expr::Fun(Func::Sin, Box::new(Expr::X)));
}

#[test]
fn smooth_fn_order_guard() {
    let s = SmoothFn::parse("x^2", 1).unwrap();
    assert!(s.eval_deriv(2, 0.5).is_err());
}

/// 7-point, 4th-order central stencil for the third derivative.
fn fd3<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (-f(x - 3.0 * h) + 8.0 * f(x - 2.0 * h) - 13.0 * f(x - h) + 13.0 * f(x + h)
        - 8.0 * f(x + 2.0 * h)
        + f(x + 3.0 * h))
        / (8.0 * h * h * h)
}

#[test]
fn third_derivative_matches_stencil_oracle() {
    let s = SmoothFn::parse(
        "1/(32*pi)*(4*pi*x*cos(2*pi*x) - pi*cos(2*pi*x) - 6*sin(2*pi*x))",
        5,
    )
    .unwrap();
    let f = |x: f64| s.eval_deriv(0, x).unwrap();
    let got = s.eval_deriv(3, 0.25).unwrap();
    assert_abs_diff_eq!(got, fd3(f, 0.25, 5e-3), epsilon = 1e-6);
}

const SECTION6_EXPRS: [&str; 4] = [
    "1/(32*pi)*(4*pi*x*cos(2*pi*x) - pi*cos(2*pi*x) - 6*sin(2*pi*x))",
    "-1/(4*pi^2)*sin(2*pi*x) - 32/pi^2*sin(1/4*pi*x)",
    "x^5/20 - 3*x^4/32 + 13*x^3/192 - 3*x^2/128",
    "x^5/20 - 17*x^4/144 + 7*x^3/72 - x^2/32",
];

#[test]
fn derivative_matches_central_difference_on_grid() {
    let h = 1e-6;
    for src in SECTION6_EXPRS {
        let e = Expr::parse(src).unwrap();
        let de = e.differentiate();
        for i in 0..=100 {
            let x = 0.01 + 0.98 * i as f64 / 100.0;
            let fd = (e.eval(x + h).unwrap() - e.eval(x - h).unwrap()) / (2.0 * h);
            assert!(
                (de.eval(x).unwrap() - fd).abs() <= 1e-5,
                "central difference mismatch for {src} at x = {x}"
            );
        }
    }
}

#[test]
fn section6_sources_round_trip() {
    for src in SECTION6_EXPRS {
        let ast = Expr::parse(src).unwrap();
        let reparsed = Expr::parse(&ast.to_string()).unwrap();
        assert_eq!(ast, reparsed, "round trip failed for {src}");
    }
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u32..10).prop_map(|v| c(v as f64)),
        Just(Expr::Const(0.5)),
        Just(Expr::Const(2.25)),
        Just(Expr::X),
        Just(Expr::Pi),
    ];
    leaf.prop_recursive(4, 48, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|u| Expr::Neg(Box::new(u))),
            (inner.clone(), inner.clone())
                .prop_map(|(u, v)| Expr::Add(Box::new(u), Box::new(v))),
            (inner.clone(), inner.clone())
                .prop_map(|(u, v)| Expr::Sub(Box::new(u), Box::new(v))),
            (inner.clone(), inner.clone())
                .prop_map(|(u, v)| Expr::Mul(Box::new(u), Box::new(v))),
            (inner.clone(), inner.clone())
                .prop_map(|(u, v)| Expr::Div(Box::new(u), Box::new(v))),
            (inner.clone(), 0u32..5).prop_map(|(u, k)| Expr::Pow(Box::new(u), k)),
            (
                prop_oneof![
                    Just(Func::Sin),
                    Just(Func::Cos),
                    Just(Func::Exp),
                    Just(Func::Ln),
                    Just(Func::Sqrt)
                ],
                inner
            )
                .prop_map(|(f, u)| Expr::Fun(f, Box::new(u))),
        ]
    })
}

proptest! {
    /// Unparsing and reparsing reproduces the tree node for node.
    #[test]
    fn unparse_parse_round_trip(e in arb_expr()) {
        let text = e.to_string();
        let reparsed = Expr::parse(&text).unwrap_or_else(|err| {
            panic!("reparse of `{text}` failed: {err}");
        });
        prop_assert_eq!(e, reparsed);
    }

    /// Differentiation of random polynomials agrees exactly with the
    /// coefficient-shift rule at integer points.
    #[test]
    fn polynomial_derivative_matches_coefficient_shift(
        coeffs in proptest::collection::vec(-20i64..=20, 1..=7)
    ) {
        let mut ast = c(coeffs[0] as f64);
        for (i, &ci) in coeffs.iter().enumerate().skip(1) {
            let term = Expr::Mul(
                Box::new(c(ci as f64)),
                Box::new(Expr::Pow(Box::new(Expr::X), i as u32)),
            );
            ast = Expr::Add(Box::new(ast), Box::new(term));
        }
        let dast = ast.differentiate();
        for x in [-2i64, -1, 0, 1, 2] {
            let mut expected = 0i64;
            for (i, &ci) in coeffs.iter().enumerate().skip(1) {
                expected += ci * i as i64 * x.pow(i as u32 - 1);
            }
            prop_assert_eq!(dast.eval(x as f64).unwrap(), expected as f64);
        }
    }
}
