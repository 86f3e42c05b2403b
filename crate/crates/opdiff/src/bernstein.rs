//! Bernstein basis (integer and generalized index), forward and divided
//! differences, Bernstein operator values and derivatives, and the
//! antiderivative-lift operator built from them.

use crate::error::{Error, Result};
use crate::quad::Antiderivative;
use crate::special;

/// Index pair (a, b) of a basis element p_{a,b}(x) = C(a,b) x^b (1−x)^{a−b}.
/// Integer pairs are the classical basis; real pairs arise from shifted
/// Jacobi parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisIndex {
    degree: f64,
    index: f64,
}

impl BasisIndex {
    pub fn new(degree: f64, index: f64) -> Result<Self> {
        if !(index + 1.0 > 0.0) || !(degree - index + 1.0 > 0.0) {
            return Err(Error::Parameter(format!(
                "basis index requires b+1 > 0 and a-b+1 > 0, got a = {degree}, b = {index}"
            )));
        }
        Ok(BasisIndex { degree, index })
    }

    pub fn degree(&self) -> f64 {
        self.degree
    }

    pub fn index(&self) -> f64 {
        self.index
    }
}

/// Exact integer binomials up to this degree; above it a multiplicative
/// f64 recurrence keeps full precision without overflow up to degrees
/// far beyond the experiment scale.
const EXACT_BINOM_MAX: u64 = 61;
const DIRECT_BINOM_MAX: u64 = 300;

fn binom_f64(n: u64, k: u64) -> f64 {
    if n <= EXACT_BINOM_MAX {
        return special::binom_u64(n, k) as f64;
    }
    let kk = k.min(n - k);
    let mut acc = 1.0;
    for j in 0..kk {
        acc = acc * (n - j) as f64 / (j + 1) as f64;
    }
    acc
}

/// p_{a,b}(x) with the endpoint conventions: the value is 1 where the
/// vanishing exponent is zero, 0 where it is positive, and a domain
/// error where it is negative (possible only for generalized indices).
pub fn basis(idx: BasisIndex, x: f64) -> Result<f64> {
    let (a, b) = (idx.degree, idx.index);
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Parameter(format!("basis needs x in [0,1], got {x}")));
    }
    if x == 0.0 {
        return endpoint_value(b, idx, x);
    }
    if x == 1.0 {
        return endpoint_value(a - b, idx, x);
    }
    let integer = a.fract() == 0.0 && b.fract() == 0.0 && a >= 0.0 && b >= 0.0;
    if integer && a <= DIRECT_BINOM_MAX as f64 {
        let (n, k) = (a as u64, b as u64);
        return Ok(binom_f64(n, k) * x.powi(k as i32) * (1.0 - x).powi((n - k) as i32));
    }
    if a <= 30.0 {
        return Ok(special::gen_binom(a, b)? * x.powf(b) * (1.0 - x).powf(a - b));
    }
    let ln = special::ln_gen_binom(a, b)? + b * x.ln() + (a - b) * (1.0 - x).ln();
    Ok(ln.exp())
}

fn endpoint_value(exponent: f64, idx: BasisIndex, x: f64) -> Result<f64> {
    if exponent == 0.0 {
        Ok(1.0)
    } else if exponent > 0.0 {
        Ok(0.0)
    } else {
        Err(Error::Domain {
            what: "generalized basis with negative exponent at an endpoint".to_string(),
            subtree: format!("p_{{{}, {}}}", idx.degree, idx.index),
            x,
        })
    }
}

/// Full row p_{n,0}(x) .. p_{n,n}(x) of the integer basis; O(n) and safe
/// against underflow coupling (terms that underflow are genuinely
/// negligible).
pub fn basis_row(n: usize, x: f64) -> Vec<f64> {
    let mut row = vec![0.0; n + 1];
    if x == 0.0 {
        row[0] = 1.0;
        return row;
    }
    if x == 1.0 {
        row[n] = 1.0;
        return row;
    }
    let exact = n <= EXACT_BINOM_MAX as usize;
    let mut coeff = 1.0;
    for k in 0..=n {
        let c = if exact {
            special::binom_u64(n as u64, k as u64) as f64
        } else {
            if k > 0 {
                coeff = coeff * (n - k + 1) as f64 / k as f64;
            }
            coeff
        };
        row[k] = c * x.powi(k as i32) * (1.0 - x).powi((n - k) as i32);
    }
    row
}

/// Forward differences Δ_h^r f over a uniform grid, stored at every base
/// point. Built with r in-place difference passes over the samples, so
/// a full operator sum costs O(n·r) instead of O(n·r²).
#[derive(Debug, Clone)]
pub struct DiffTable {
    step: f64,
    order: usize,
    values: Vec<f64>,
}

impl DiffTable {
    /// Samples f at x0, x0+h, ..., x0+(count+order−1)h and reduces to
    /// the order-r differences at the first `count` base points.
    pub fn build<F>(f: F, x0: f64, h: f64, count: usize, order: usize) -> Result<Self>
    where
        F: Fn(f64) -> Result<f64>,
    {
        if h <= 0.0 {
            return Err(Error::Parameter("difference step must be positive".to_string()));
        }
        let total = count + order;
        let mut values = Vec::with_capacity(total);
        for i in 0..total {
            values.push(f(sample_point(x0, h, i)?)?);
        }
        for pass in 0..order {
            for i in 0..total - pass - 1 {
                values[i] = values[i + 1] - values[i];
            }
            values.truncate(total - pass - 1);
        }
        Ok(DiffTable {
            step: h,
            order,
            values,
        })
    }

    pub fn from_samples(mut values: Vec<f64>, h: f64, order: usize) -> Result<Self> {
        if values.len() <= order {
            return Err(Error::Parameter(format!(
                "need more than {order} samples for order-{order} differences"
            )));
        }
        let total = values.len();
        for pass in 0..order {
            for i in 0..total - pass - 1 {
                values[i] = values[i + 1] - values[i];
            }
            values.truncate(total - pass - 1);
        }
        Ok(DiffTable {
            step: h,
            order,
            values,
        })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

fn sample_point(x0: f64, h: f64, j: usize) -> Result<f64> {
    let x = x0 + j as f64 * h;
    if !(-1e-12..=1.0 + 1e-12).contains(&x) {
        return Err(Error::Domain {
            what: "difference sample point leaves [0,1]".to_string(),
            subtree: "forward difference".to_string(),
            x,
        });
    }
    Ok(x.clamp(0.0, 1.0))
}

/// Single-point Δ_h^r f(x0) via the alternating binomial sum.
pub fn forward_diff<F>(f: F, x0: f64, h: f64, r: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if h <= 0.0 {
        return Err(Error::Parameter("difference step must be positive".to_string()));
    }
    if r > 30 {
        return Err(Error::Parameter(format!(
            "difference order {r} exceeds the exact binomial range"
        )));
    }
    let mut acc = 0.0;
    for j in 0..=r {
        let sign = if (r - j) % 2 == 0 { 1.0 } else { -1.0 };
        let coeff = special::binom_u64(r as u64, j as u64) as f64;
        acc += sign * coeff * f(sample_point(x0, h, j)?)?;
    }
    Ok(acc)
}

/// Equispaced divided difference [x0, x0+h, ..., x0+rh; f]
/// = Δ_h^r f(x0) / (r! h^r).
pub fn divided_diff<F>(f: F, x0: f64, h: f64, r: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let fwd = forward_diff(f, x0, h, r)?;
    let mut scale = 1.0;
    for j in 1..=r {
        scale *= j as f64 * h;
    }
    Ok(fwd / scale)
}

/// B_n(f; x) = Σ_k p_{n,k}(x) f(k/n).
pub fn bernstein_eval<F>(f: F, n: usize, x: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    Ok(bernstein_eval_on(f, n, std::slice::from_ref(&x))?[0])
}

/// B_n(f; ·) on a grid; samples f once.
pub fn bernstein_eval_on<F>(f: F, n: usize, xs: &[f64]) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64>,
{
    if n < 1 {
        return Err(Error::Parameter("bernstein operator needs n >= 1".to_string()));
    }
    let mut samples = Vec::with_capacity(n + 1);
    for k in 0..=n {
        samples.push(f(k as f64 / n as f64)?);
    }
    Ok(xs
        .iter()
        .map(|&x| {
            let row = basis_row(n, x);
            row.iter().zip(&samples).map(|(p, s)| p * s).sum()
        })
        .collect())
}

/// (B_n f)^{(r)}(x) = n(n−1)...(n−r+1) Σ_i p_{n−r,i}(x) Δ_{1/n}^r f(i/n).
pub fn bernstein_deriv<F>(f: F, n: usize, r: usize, x: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    Ok(bernstein_deriv_on(f, n, r, std::slice::from_ref(&x))?[0])
}

/// Derivative curve on a grid; the difference table is built once.
pub fn bernstein_deriv_on<F>(f: F, n: usize, r: usize, xs: &[f64]) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64>,
{
    if n < 1 {
        return Err(Error::Parameter("bernstein operator needs n >= 1".to_string()));
    }
    if r > n {
        return Err(Error::Parameter(format!(
            "derivative order r = {r} exceeds degree n = {n}"
        )));
    }
    if r == 0 {
        return bernstein_eval_on(f, n, xs);
    }
    let h = 1.0 / n as f64;
    let table = DiffTable::build(f, 0.0, h, n - r + 1, r)?;
    let prefactor = special::falling(n as f64, r as u32);
    Ok(xs
        .iter()
        .map(|&x| {
            let row = basis_row(n - r, x);
            let sum: f64 = row.iter().zip(table.values()).map(|(p, d)| p * d).sum();
            prefactor * sum
        })
        .collect())
}

/// n^k (n−k)!/n!, the normalizer of the antiderivative-lift operator,
/// in log space.
pub fn q_prefactor(n: usize, k: usize) -> f64 {
    let nf = n as f64;
    (k as f64 * nf.ln() + special::ln_gamma(nf - k as f64 + 1.0) - special::ln_gamma(nf + 1.0))
        .exp()
}

/// Q_n^k applied through an order-k antiderivative F of f:
/// Q_n^k f = (n^k (n−k)!/n!) (B_n F)^{(k)}.
///
/// Only F enters the computation; any two antiderivatives of the same
/// order give the same value because the k-th Bernstein derivative
/// annihilates added polynomials of degree < k.
pub fn q_op_eval<F>(antideriv: F, n: usize, k: usize, x: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    q_op_deriv(antideriv, n, k, 0, x)
}

/// r-th derivative of the lifted operator:
/// (Q_n^k f)^{(r)} = (n^k (n−k)!/n!) (B_n F)^{(k+r)}.
pub fn q_op_deriv<F>(antideriv: F, n: usize, k: usize, r: usize, x: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    Ok(q_op_deriv_on(antideriv, n, k, r, std::slice::from_ref(&x))?[0])
}

pub fn q_op_deriv_on<F>(antideriv: F, n: usize, k: usize, r: usize, xs: &[f64]) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64>,
{
    if k < 1 || k + r > n {
        return Err(Error::Parameter(format!(
            "lift operator requires 1 <= k and k + r <= n, got n = {n}, k = {k}, r = {r}"
        )));
    }
    let pre = q_prefactor(n, k);
    let mut curve = bernstein_deriv_on(antideriv, n, k + r, xs)?;
    for v in &mut curve {
        *v *= pre;
    }
    Ok(curve)
}

/// Q_{n}^k f evaluated from f itself, constructing the normalized
/// antiderivative internally.
pub fn q_op_from_fn<F>(f: F, n: usize, k: usize, panels: usize, x: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + Send + Sync + 'static,
{
    let anti = Antiderivative::new(f, k, panels)?;
    q_op_eval(|t| anti.value(t), n, k, x)
}
