//! Property suite for expressions: symbolic derivatives agree with central
//! finite differences, interval evaluation of a box contains real evaluation
//! of every point inside it, printed formulas re-parse to bit-identical
//! behavior, and Hessians are symmetric.

use extrema::boxes::IntervalBox;
use extrema::expr::{BinaryOp, Expr, UnaryOp};
use extrema::{build_gradient_system, differentiate, Expression, Interval};
use proptest::prelude::*;

fn expr_strategy(dim: usize) -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        2 => (-3.0..3.0f64).prop_map(Expr::Const),
        3 => (0..dim).prop_map(Expr::Var),
    ];
    leaf.prop_recursive(3, 20, 2, |inner| {
        prop_oneof![
            3 => (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Binary(BinaryOp::Add, a.into(), b.into())),
            2 => (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Binary(BinaryOp::Sub, a.into(), b.into())),
            3 => (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Binary(BinaryOp::Mul, a.into(), b.into())),
            1 => (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::Binary(BinaryOp::Div, a.into(), b.into())),
            2 => inner.clone().prop_map(|a| Expr::Unary(UnaryOp::Sin, a.into())),
            2 => inner.clone().prop_map(|a| Expr::Unary(UnaryOp::Cos, a.into())),
            1 => inner.clone().prop_map(|a| Expr::Unary(UnaryOp::Exp, a.into())),
            1 => inner.clone().prop_map(|a| Expr::Unary(UnaryOp::Ln, a.into())),
            2 => inner.clone().prop_map(|a| Expr::Unary(UnaryOp::Sqr, a.into())),
            1 => inner.clone().prop_map(|a| Expr::Unary(UnaryOp::Neg, a.into())),
            2 => (inner, 1..=4i32).prop_map(|(a, k)| Expr::Pow(a.into(), k)),
        ]
    })
}

fn expression(dim: usize) -> impl Strategy<Value = Expression> {
    expr_strategy(dim).prop_map(move |root| Expression::from_parts(root, dim).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// Central finite differences validate every symbolic derivative.
    #[test]
    fn derivative_matches_finite_difference(
        f in expression(2),
        x0 in -1.5..1.5f64,
        x1 in -1.5..1.5f64,
        j in 0usize..2,
    ) {
        let x = [x0, x1];
        let h = 1e-5;
        let mut plus = x;
        let mut minus = x;
        plus[j] += h;
        minus[j] -= h;

        let sym = differentiate(&f, j);
        let (fp, fm, d) = match (f.eval_real(&plus), f.eval_real(&minus), sym.eval_real(&x)) {
            (Ok(a), Ok(b), Ok(c)) => (a, b, c),
            _ => return Ok(()), // outside the domain: nothing to compare
        };
        // keep magnitudes where the finite difference is numerically meaningful
        prop_assume!(fp.abs() < 1e3 && fm.abs() < 1e3 && d.abs() < 1e3);
        let fd = (fp - fm) / (2.0 * h);
        let tol = f64::max(1e-6, 1e-4 * d.abs());
        // guard against cancellation blowup in pathological third derivatives
        prop_assume!((fp - fm).abs() < 1e2);
        prop_assert!(
            (d - fd).abs() <= tol,
            "d={} fd={} diff={} tol={} f={}", d, fd, (d - fd).abs(), tol, f
        );
    }

    /// f(x) lands inside the interval extension of any box containing x.
    #[test]
    fn real_eval_inside_interval_eval(
        f in expression(2),
        c0 in -2.0..2.0f64,
        c1 in -2.0..2.0f64,
        w0 in 0.0..1.0f64,
        w1 in 0.0..1.0f64,
        t0 in 0.0..=1.0f64,
        t1 in 0.0..=1.0f64,
    ) {
        let b = IntervalBox::new(vec![
            Interval::new(c0 - w0, c0 + w0).unwrap(),
            Interval::new(c1 - w1, c1 + w1).unwrap(),
        ]).unwrap();
        let x = [
            (c0 - w0 + t0 * 2.0 * w0).clamp(c0 - w0, c0 + w0),
            (c1 - w1 + t1 * 2.0 * w1).clamp(c1 - w1, c1 + w1),
        ];
        match (f.eval_interval(&b), f.eval_real(&x)) {
            (Ok(range), Ok(v)) => prop_assert!(
                range.contains(v),
                "f({:?}) = {} outside {} for f = {}", x, v, range, f
            ),
            // A domain violation at a point of the box must surface as a
            // domain violation of the interval extension too.
            (Ok(range), Err(e)) => prop_assert!(
                false,
                "point eval failed ({e}) inside a box whose interval eval succeeded ({range}) for f = {f}"
            ),
            (Err(_), _) => {} // conservative failure is always allowed
        }
    }

    /// Printing and re-parsing preserves behavior bit-for-bit.
    #[test]
    fn display_parse_round_trip(
        f in expression(2),
        x0 in -2.0..2.0f64,
        x1 in -2.0..2.0f64,
    ) {
        let printed = f.to_string();
        let reparsed = Expression::parse(&printed, 2)
            .unwrap_or_else(|e| panic!("reparse of '{printed}' failed: {e}"));
        let a = f.eval_real(&[x0, x1]);
        let b = reparsed.eval_real(&[x0, x1]);
        match (a, b) {
            (Ok(va), Ok(vb)) => prop_assert!(
                va == vb || (va.is_nan() && vb.is_nan()),
                "'{}' evaluates to {} but reparse gives {}", printed, va, vb
            ),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "eval disagreement for '{}': {:?} vs {:?}", printed, a, b),
        }
    }

    /// The two halves of a Hessian are the same stored expression.
    #[test]
    fn hessian_is_symmetric(
        f in expression(3),
        x0 in -2.0..2.0f64,
        x1 in -2.0..2.0f64,
        x2 in -2.0..2.0f64,
    ) {
        let sys = build_gradient_system(f);
        for i in 0..3 {
            for j in (i + 1)..3 {
                prop_assert_eq!(sys.hessian(i, j), sys.hessian(j, i));
                let a = sys.hessian(i, j).eval_real(&[x0, x1, x2]);
                let b = sys.hessian(j, i).eval_real(&[x0, x1, x2]);
                match (a, b) {
                    (Ok(va), Ok(vb)) => prop_assert!(va == vb || (va.is_nan() && vb.is_nan())),
                    (Err(_), Err(_)) => {}
                    (a, b) => prop_assert!(false, "asymmetric eval: {:?} vs {:?}", a, b),
                }
            }
        }
    }
}
