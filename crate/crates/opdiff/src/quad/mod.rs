//! Gauss–Legendre and Gauss–Jacobi quadrature on [0,1], panel
//! integration and numeric antiderivatives.
//!
//! Rules are built by Golub–Welsch: the three-term recurrence of the
//! orthogonal polynomials for the weight defines a symmetric tridiagonal
//! Jacobi matrix; its eigenvalues are the nodes and the squared first
//! eigenvector components times the zeroth moment are the weights.

mod antideriv;

pub use antideriv::Antiderivative;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::special;

/// Weight function of a rule on [0,1]: 1 for Legendre, t^α (1−t)^β for
/// Jacobi with α, β > −1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightKind {
    Legendre,
    Jacobi { alpha: f64, beta: f64 },
}

impl WeightKind {
    /// (α, β) of the weight; Legendre is the flat Jacobi weight.
    fn exponents(self) -> (f64, f64) {
        match self {
            WeightKind::Legendre => (0.0, 0.0),
            WeightKind::Jacobi { alpha, beta } => (alpha, beta),
        }
    }

    /// ∫₀¹ w(t) dt.
    pub fn zeroth_moment(self) -> f64 {
        match self {
            WeightKind::Legendre => 1.0,
            WeightKind::Jacobi { alpha, beta } => {
                special::beta(alpha + 1.0, beta + 1.0).expect("validated on construction")
            }
        }
    }

    fn validate(self) -> Result<()> {
        if let WeightKind::Jacobi { alpha, beta } = self {
            if !(alpha > -1.0) || !(beta > -1.0) {
                return Err(Error::Parameter(format!(
                    "jacobi weight requires alpha, beta > -1, got ({alpha}, {beta})"
                )));
            }
        }
        Ok(())
    }
}

/// Nodes and weights of an m-point Gauss rule on [0,1].
#[derive(Debug, Clone)]
pub struct QuadRule {
    kind: WeightKind,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadRule {
    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Σ wᵢ f(tᵢ), approximating ∫₀¹ w(t) f(t) dt.
    pub fn integrate<F>(&self, f: F) -> Result<f64>
    where
        F: Fn(f64) -> Result<f64>,
    {
        let mut acc = 0.0;
        for (&t, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(t)?;
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct RuleKey {
    tag: u8,
    alpha_bits: u64,
    beta_bits: u64,
    count: usize,
}

fn rule_cache() -> &'static Mutex<HashMap<RuleKey, Arc<QuadRule>>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<QuadRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Returns the cached m-point rule for the weight, building it on first
/// use. Insertion is serialized by the cache lock.
pub fn gauss_rule(kind: WeightKind, m: usize) -> Result<Arc<QuadRule>> {
    kind.validate()?;
    if m < 1 {
        return Err(Error::Parameter("quadrature rule needs m >= 1".to_string()));
    }
    let (alpha, beta) = kind.exponents();
    let key = RuleKey {
        tag: matches!(kind, WeightKind::Legendre) as u8,
        alpha_bits: alpha.to_bits(),
        beta_bits: beta.to_bits(),
        count: m,
    };
    if let Some(rule) = rule_cache().lock().unwrap().get(&key) {
        return Ok(Arc::clone(rule));
    }
    let rule = Arc::new(build_rule(kind, m)?);
    rule_cache()
        .lock()
        .unwrap()
        .entry(key)
        .or_insert_with(|| Arc::clone(&rule));
    Ok(rule)
}

/// Golub–Welsch on the shifted interval. The classical recurrence lives
/// on [−1,1] with weight (1−u)^a (1+u)^b; the substitution t = (1+u)/2
/// maps it to our t^α (1−t)^β with (a,b) = (β,α).
fn build_rule(kind: WeightKind, m: usize) -> Result<QuadRule> {
    let (alpha, beta) = kind.exponents();
    let (a, b) = (beta, alpha);

    let mut diag = Vec::with_capacity(m);
    let mut off = Vec::with_capacity(m);
    diag.push((b - a) / (a + b + 2.0));
    off.push(0.0);
    for j in 1..m {
        let jf = j as f64;
        let denom = 2.0 * jf + a + b;
        diag.push((b * b - a * a) / (denom * (denom + 2.0)));
        let sq = if j == 1 {
            // The (j+a+b) and (2j+a+b−1) factors cancel at j = 1; the
            // cancelled form avoids 0/0 when a+b = −1.
            4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b).powi(2) * (3.0 + a + b))
        } else {
            4.0 * jf * (jf + a) * (jf + b) * (jf + a + b)
                / (denom * denom * (denom + 1.0) * (denom - 1.0))
        };
        debug_assert!(sq > 0.0, "negative recurrence coefficient");
        off.push(sq.sqrt());
    }

    let (eigenvalues, first_components) = tridiag_eigen(diag, off)?;

    let mu0 = kind.zeroth_moment();
    let mut pairs: Vec<(f64, f64)> = eigenvalues
        .into_iter()
        .zip(first_components)
        .map(|(lambda, c)| (0.5 * (1.0 + lambda), mu0 * c * c))
        .collect();
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));

    let nodes: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let weights: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    validate_rule(kind, &nodes, &weights, mu0)?;
    Ok(QuadRule {
        kind,
        nodes,
        weights,
    })
}

fn validate_rule(kind: WeightKind, nodes: &[f64], weights: &[f64], mu0: f64) -> Result<()> {
    let bug = |what: String| {
        Error::Parameter(format!(
            "quadrature construction failed internal validation ({kind:?}): {what}"
        ))
    };
    for pair in nodes.windows(2) {
        if pair[1] <= pair[0] {
            return Err(bug(format!("nodes not increasing: {} vs {}", pair[0], pair[1])));
        }
    }
    if nodes[0] <= 0.0 || *nodes.last().unwrap() >= 1.0 {
        return Err(bug("node outside (0,1)".to_string()));
    }
    if weights.iter().any(|&w| w <= 0.0) {
        return Err(bug("non-positive weight".to_string()));
    }
    let mass: f64 = weights.iter().sum();
    if ((mass - mu0) / mu0).abs() > 1e-12 {
        return Err(bug(format!("weight mass {mass} vs moment {mu0}")));
    }
    Ok(())
}

/// Implicit-shift QL iteration for a symmetric tridiagonal matrix,
/// accumulating only the first row of the eigenvector matrix (all the
/// Golub–Welsch weights need). Iteration cap of 50 sweeps per
/// eigenvalue; exceeding it signals a bug, not a user error.
fn tridiag_eigen(mut d: Vec<f64>, mut e: Vec<f64>) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = d.len();
    let mut z = vec![0.0; n];
    z[0] = 1.0;
    if n == 1 {
        return Ok((d, z));
    }
    // shift the off-diagonals down: e[i] sits between rows i and i+1
    for i in 0..n - 1 {
        e[i] = e[i + 1];
    }
    e[n - 1] = 0.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::EigenConvergence(50));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0_f64;
            let mut c = 1.0_f64;
            let mut p = 0.0_f64;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let bb = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * bb;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - bb;
                // rotate the tracked first row of the eigenvector matrix
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok((d, z))
}

/// Gauss–Legendre m-point rule affinely mapped to [a,b].
pub fn panel_integral<F>(f: F, a: f64, b: f64, m: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(0.0 <= a && a <= b && b <= 1.0) {
        return Err(Error::Parameter(format!(
            "panel bounds must satisfy 0 <= a <= b <= 1, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(0.0);
    }
    let rule = gauss_rule(WeightKind::Legendre, m)?;
    let width = b - a;
    let mut acc = 0.0;
    for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
        acc += w * f(a + width * t)?;
    }
    Ok(width * acc)
}
