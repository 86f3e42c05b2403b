//! Numeric antiderivatives of arbitrary order, normalized to vanish at 0.

use std::sync::Arc;

use super::{gauss_rule, WeightKind};
use crate::error::{Error, Result};

/// Gauss points per panel in the cumulative passes.
const PANEL_POINTS: usize = 16;

/// An order-k antiderivative F of f with F and its first k−1 derivatives
/// vanishing at 0.
///
/// Built by k successive cumulative Gauss–Legendre panel passes over a
/// uniform grid; point evaluation adds a partial-panel quadrature to the
/// nearest cached breakpoint, so values are continuous across panel
/// boundaries by construction.
#[derive(Clone)]
pub struct Antiderivative {
    base: Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>,
    order: usize,
    panels: usize,
    /// breakpoints[j][i] = (j+1)-fold antiderivative at i/panels
    breakpoints: Vec<Vec<f64>>,
}

impl std::fmt::Debug for Antiderivative {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Antiderivative")
            .field("order", &self.order)
            .field("panels", &self.panels)
            .finish()
    }
}

impl Antiderivative {
    pub fn new<F>(f: F, order: usize, panels: usize) -> Result<Self>
    where
        F: Fn(f64) -> Result<f64> + Send + Sync + 'static,
    {
        Self::from_arc(Arc::new(f), order, panels)
    }

    pub fn from_arc(
        base: Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>,
        order: usize,
        panels: usize,
    ) -> Result<Self> {
        if order < 1 {
            return Err(Error::Parameter(
                "antiderivative order must be >= 1".to_string(),
            ));
        }
        if panels < 64 {
            return Err(Error::Parameter(
                "antiderivative needs at least 64 panels".to_string(),
            ));
        }
        let mut this = Antiderivative {
            base,
            order,
            panels,
            breakpoints: Vec::with_capacity(order),
        };
        let rule = gauss_rule(WeightKind::Legendre, PANEL_POINTS)?;
        let h = 1.0 / panels as f64;
        for level in 0..order {
            let mut cum = Vec::with_capacity(panels + 1);
            cum.push(0.0);
            let mut acc = 0.0;
            for i in 0..panels {
                let a = i as f64 * h;
                let mut panel = 0.0;
                for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
                    panel += w * this.level_value(level, a + h * t)?;
                }
                acc += h * panel;
                cum.push(acc);
            }
            this.breakpoints.push(cum);
        }
        Ok(this)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    /// Value of the order-k antiderivative at x ∈ [0,1].
    pub fn value(&self, x: f64) -> Result<f64> {
        self.level_value(self.order, x)
    }

    /// Level 0 is f itself; level j ≥ 1 is the j-fold antiderivative.
    fn level_value(&self, level: usize, x: f64) -> Result<f64> {
        if level == 0 {
            return (self.base)(x);
        }
        if !(0.0..=1.0 + 1e-12).contains(&x) {
            return Err(Error::Parameter(format!(
                "antiderivative evaluated outside [0,1]: x = {x}"
            )));
        }
        let x = x.min(1.0);
        let h = 1.0 / self.panels as f64;
        let i = ((x * self.panels as f64) as usize).min(self.panels - 1);
        let a = i as f64 * h;
        let cached = self.breakpoints[level - 1][i];
        if x == a {
            return Ok(cached);
        }
        let rule = gauss_rule(WeightKind::Legendre, PANEL_POINTS)?;
        let width = x - a;
        let mut tail = 0.0;
        for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
            tail += w * self.level_value(level - 1, a + width * t)?;
        }
        Ok(cached + width * tail)
    }
}
