//! Positive linear operators on C[0,1] and the differences between
//! operator derivatives and operators of derivatives.
//!
//! The crate implements five operator families — Bernstein, Kantorovich,
//! an antiderivative lift of the Bernstein operator, Durrmeyer with
//! Jacobi weights, and the genuine Bernstein–Durrmeyer operator — with
//! explicit identities for their r-th derivatives, measures the
//! derivative-difference errors E_{n,r}(f;x) = |(L_n f)^{(r)} − L_{n−r}(f^{(r)})|,
//! and certifies quantitative bounds on them in terms of the first
//! modulus of continuity.
//!
//! Start with the runnable examples (`cargo run --example ...`) or the
//! `opdiff` command-line tool.

pub mod bernstein;
pub mod error;
pub mod expr;
pub mod quad;
pub mod special;

pub use error::{Error, Result};
pub use expr::{Expr, SmoothFn};
