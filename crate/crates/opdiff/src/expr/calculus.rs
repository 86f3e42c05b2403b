//! Symbolic differentiation and conservative simplification.

use super::{Expr, Func};

/// Standard product/quotient/chain rules; the result is simplified.
pub(super) fn differentiate(e: &Expr) -> Expr {
    simplify(&d(e))
}

fn d(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) | Expr::Pi => Expr::Const(0.0),
        Expr::X => Expr::Const(1.0),
        Expr::Neg(u) => Expr::Neg(Box::new(d(u))),
        Expr::Add(u, v) => Expr::Add(Box::new(d(u)), Box::new(d(v))),
        Expr::Sub(u, v) => Expr::Sub(Box::new(d(u)), Box::new(d(v))),
        Expr::Mul(u, v) => Expr::Add(
            Box::new(Expr::Mul(Box::new(d(u)), v.clone())),
            Box::new(Expr::Mul(u.clone(), Box::new(d(v)))),
        ),
        Expr::Div(u, v) => Expr::Div(
            Box::new(Expr::Sub(
                Box::new(Expr::Mul(Box::new(d(u)), v.clone())),
                Box::new(Expr::Mul(u.clone(), Box::new(d(v)))),
            )),
            Box::new(Expr::Pow(v.clone(), 2)),
        ),
        Expr::Pow(u, k) => match k {
            0 => Expr::Const(0.0),
            1 => d(u),
            _ => Expr::Mul(
                Box::new(Expr::Mul(
                    Box::new(Expr::Const(*k as f64)),
                    Box::new(Expr::Pow(u.clone(), k - 1)),
                )),
                Box::new(d(u)),
            ),
        },
        Expr::Fun(f, u) => {
            let outer = match f {
                Func::Sin => Expr::Fun(Func::Cos, u.clone()),
                Func::Cos => Expr::Neg(Box::new(Expr::Fun(Func::Sin, u.clone()))),
                Func::Exp => Expr::Fun(Func::Exp, u.clone()),
                Func::Ln => Expr::Div(Box::new(Expr::Const(1.0)), u.clone()),
                Func::Sqrt => Expr::Div(
                    Box::new(Expr::Const(1.0)),
                    Box::new(Expr::Mul(
                        Box::new(Expr::Const(2.0)),
                        Box::new(Expr::Fun(Func::Sqrt, u.clone())),
                    )),
                ),
            };
            Expr::Mul(Box::new(outer), Box::new(d(u)))
        }
    }
}

fn is_const(e: &Expr, v: f64) -> bool {
    matches!(e, Expr::Const(c) if *c == v)
}

/// Bottom-up constant folding and 0/1 elimination. `pi` is kept
/// symbolic; it folds to a double only at evaluation time.
pub(super) fn simplify(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) | Expr::X | Expr::Pi => e.clone(),
        Expr::Neg(u) => match simplify(u) {
            Expr::Const(c) => Expr::Const(-c),
            Expr::Neg(inner) => *inner,
            su => Expr::Neg(Box::new(su)),
        },
        Expr::Add(u, v) => {
            let (su, sv) = (simplify(u), simplify(v));
            match (&su, &sv) {
                (Expr::Const(a), Expr::Const(b)) => Expr::Const(a + b),
                _ if is_const(&su, 0.0) => sv,
                _ if is_const(&sv, 0.0) => su,
                _ => Expr::Add(Box::new(su), Box::new(sv)),
            }
        }
        Expr::Sub(u, v) => {
            let (su, sv) = (simplify(u), simplify(v));
            match (&su, &sv) {
                (Expr::Const(a), Expr::Const(b)) => Expr::Const(a - b),
                _ if is_const(&sv, 0.0) => su,
                _ if is_const(&su, 0.0) => simplify(&Expr::Neg(Box::new(sv))),
                _ => Expr::Sub(Box::new(su), Box::new(sv)),
            }
        }
        Expr::Mul(u, v) => {
            let (su, sv) = (simplify(u), simplify(v));
            match (&su, &sv) {
                (Expr::Const(a), Expr::Const(b)) => Expr::Const(a * b),
                _ if is_const(&su, 0.0) || is_const(&sv, 0.0) => Expr::Const(0.0),
                _ if is_const(&su, 1.0) => sv,
                _ if is_const(&sv, 1.0) => su,
                _ => Expr::Mul(Box::new(su), Box::new(sv)),
            }
        }
        Expr::Div(u, v) => {
            let (su, sv) = (simplify(u), simplify(v));
            match (&su, &sv) {
                (Expr::Const(a), Expr::Const(b)) if *b != 0.0 => Expr::Const(a / b),
                _ if is_const(&su, 0.0) && !is_const(&sv, 0.0) => Expr::Const(0.0),
                _ if is_const(&sv, 1.0) => su,
                _ => Expr::Div(Box::new(su), Box::new(sv)),
            }
        }
        Expr::Pow(u, k) => {
            let su = simplify(u);
            match (&su, k) {
                (_, 0) => Expr::Const(1.0),
                (_, 1) => su,
                (Expr::Const(c), _) => Expr::Const(c.powi(*k as i32)),
                _ => Expr::Pow(Box::new(su), *k),
            }
        }
        Expr::Fun(f, u) => Expr::Fun(*f, Box::new(simplify(u))),
    }
}
