//! A small expression language for test functions of one variable:
//! parsing, double-precision evaluation and symbolic differentiation.
//!
//! The grammar accepts the variable `x`, the constant `pi`, decimal
//! literals, `+ - * /`, `^` with a constant non-negative integer
//! exponent, parentheses and the functions `sin`, `cos`, `exp`, `ln`,
//! `sqrt`. Restricting `^` to integer exponents keeps differentiation
//! total on the tree and avoids branch cuts.

mod calculus;
mod parse;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Named unary functions of the grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Ln,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
        }
    }
}

/// Expression tree. `pi` stays symbolic until evaluation; integer
/// exponents are stored exactly.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    X,
    Pi,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Fun(Func, Box<Expr>),
}

impl Expr {
    /// Parses source text into an expression tree.
    pub fn parse(src: &str) -> Result<Expr> {
        parse::parse(src)
    }

    /// IEEE double-precision value of the expression at `x`.
    ///
    /// Division by zero, `ln` of a non-positive value and `sqrt` of a
    /// negative value are reported as domain errors naming the
    /// offending subtree.
    pub fn eval(&self, x: f64) -> Result<f64> {
        match self {
            Expr::Const(c) => Ok(*c),
            Expr::X => Ok(x),
            Expr::Pi => Ok(std::f64::consts::PI),
            Expr::Neg(u) => Ok(-u.eval(x)?),
            Expr::Add(u, v) => Ok(u.eval(x)? + v.eval(x)?),
            Expr::Sub(u, v) => Ok(u.eval(x)? - v.eval(x)?),
            Expr::Mul(u, v) => Ok(u.eval(x)? * v.eval(x)?),
            Expr::Div(u, v) => {
                let d = v.eval(x)?;
                if d == 0.0 {
                    return Err(self.domain_error("division by zero", x));
                }
                Ok(u.eval(x)? / d)
            }
            Expr::Pow(u, k) => Ok(u.eval(x)?.powi(*k as i32)),
            Expr::Fun(f, u) => {
                let t = u.eval(x)?;
                match f {
                    Func::Sin => Ok(t.sin()),
                    Func::Cos => Ok(t.cos()),
                    Func::Exp => Ok(t.exp()),
                    Func::Ln => {
                        if t <= 0.0 {
                            return Err(self.domain_error("ln of a non-positive value", x));
                        }
                        Ok(t.ln())
                    }
                    Func::Sqrt => {
                        if t < 0.0 {
                            return Err(self.domain_error("sqrt of a negative value", x));
                        }
                        Ok(t.sqrt())
                    }
                }
            }
        }
    }

    /// Exact symbolic derivative, simplified by constant folding and
    /// zero/one elimination.
    pub fn differentiate(&self) -> Expr {
        calculus::differentiate(self)
    }

    /// Conservative simplification: constant folding plus the 0/1
    /// identities. No full canonicalization.
    pub fn simplify(&self) -> Expr {
        calculus::simplify(self)
    }

    fn domain_error(&self, what: &str, x: f64) -> Error {
        Error::Domain {
            what: what.to_string(),
            subtree: self.to_string(),
            x,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Const(c) if *c < 0.0 => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let wrap = self.precedence() < min;
        if wrap {
            write!(f, "(")?;
        }
        match self {
            Expr::Const(c) => write!(f, "{c}")?,
            Expr::X => write!(f, "x")?,
            Expr::Pi => write!(f, "pi")?,
            Expr::Neg(u) => {
                write!(f, "-")?;
                u.fmt_prec(f, 3)?;
            }
            Expr::Add(u, v) => {
                u.fmt_prec(f, 1)?;
                write!(f, " + ")?;
                v.fmt_prec(f, 2)?;
            }
            Expr::Sub(u, v) => {
                u.fmt_prec(f, 1)?;
                write!(f, " - ")?;
                v.fmt_prec(f, 2)?;
            }
            Expr::Mul(u, v) => {
                u.fmt_prec(f, 2)?;
                write!(f, "*")?;
                v.fmt_prec(f, 3)?;
            }
            Expr::Div(u, v) => {
                u.fmt_prec(f, 2)?;
                write!(f, "/")?;
                v.fmt_prec(f, 3)?;
            }
            Expr::Pow(u, k) => {
                u.fmt_prec(f, 5)?;
                write!(f, "^{k}")?;
            }
            Expr::Fun(func, u) => {
                write!(f, "{}(", func.name())?;
                u.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
        }
        if wrap {
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Unparses with the minimal parentheses the grammar needs; parsing the
/// output reproduces the tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// A function bundled with its symbolic derivatives up to a requested
/// order. Immutable after construction and cheap to clone; evaluation
/// is safe from concurrent workers.
#[derive(Debug, Clone)]
pub struct SmoothFn {
    derivs: Arc<Vec<Expr>>,
}

impl SmoothFn {
    /// Builds `max_order + 1` expressions by repeated differentiation;
    /// entry 0 is the simplified base expression.
    pub fn new(base: Expr, max_order: usize) -> SmoothFn {
        let mut derivs = Vec::with_capacity(max_order + 1);
        derivs.push(base.simplify());
        for j in 0..max_order {
            let next = derivs[j].differentiate();
            derivs.push(next);
        }
        SmoothFn {
            derivs: Arc::new(derivs),
        }
    }

    /// Parses the source text and differentiates it `max_order` times.
    pub fn parse(src: &str, max_order: usize) -> Result<SmoothFn> {
        Ok(SmoothFn::new(Expr::parse(src)?, max_order))
    }

    pub fn max_order(&self) -> usize {
        self.derivs.len() - 1
    }

    /// The j-th symbolic derivative (j = 0 is the function itself).
    pub fn deriv(&self, j: usize) -> &Expr {
        &self.derivs[j]
    }

    /// Evaluates the j-th derivative at `x`.
    pub fn eval_deriv(&self, j: usize, x: f64) -> Result<f64> {
        self.require_order(j)?;
        self.derivs[j].eval(x)
    }

    /// A shareable evaluator for the j-th derivative.
    pub fn deriv_fn(
        &self,
        j: usize,
    ) -> impl Fn(f64) -> Result<f64> + Clone + Send + Sync + 'static {
        let derivs = Arc::clone(&self.derivs);
        move |x| derivs[j].eval(x)
    }

    pub fn require_order(&self, j: usize) -> Result<()> {
        if j > self.max_order() {
            return Err(Error::Parameter(format!(
                "derivative of order {j} requested, but only {} are available",
                self.max_order()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
