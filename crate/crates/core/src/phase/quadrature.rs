//! Globally adaptive Gauss–Legendre quadrature with panel halving.
//!
//! Each panel carries a coarse estimate (one Gauss rule over the panel) and a
//! fine estimate (the rule on both halves). The panel error is their
//! difference; the worst panel is split until the summed error meets the
//! target. Panels are summed in position order, so results are deterministic.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{PhaseError, Result};
use crate::sources::kernels::DEFAULT_GUARD;

/// When the integral nearly cancels, the target falls back to this fraction of
/// ∫|f| so that a true zero can still converge.
const L1_FLOOR: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureConfig {
    pub relative_tolerance: f64,
    pub max_subdivisions: usize,
    /// Gauss–Legendre nodes per panel.
    pub gauss_order: usize,
    /// Minimum distance from any source filament, m.
    pub singularity_guard: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            relative_tolerance: 1e-9,
            max_subdivisions: 1 << 16,
            gauss_order: 8,
            singularity_guard: DEFAULT_GUARD,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.relative_tolerance > 0.0 && self.relative_tolerance <= 1e-2) {
            return Err(PhaseError::InvalidParameter {
                name: "relative_tolerance",
                reason: format!("must lie in (0, 1e-2], got {}", self.relative_tolerance),
            });
        }
        if self.max_subdivisions < 1 {
            return Err(PhaseError::InvalidParameter {
                name: "max_subdivisions",
                reason: "must be at least 1".into(),
            });
        }
        if !(1..=64).contains(&self.gauss_order) {
            return Err(PhaseError::InvalidParameter {
                name: "gauss_order",
                reason: format!("must lie in 1..=64, got {}", self.gauss_order),
            });
        }
        if !(self.singularity_guard >= 0.0 && self.singularity_guard.is_finite()) {
            return Err(PhaseError::InvalidParameter {
                name: "singularity_guard",
                reason: "must be finite and non-negative".into(),
            });
        }
        Ok(())
    }

    pub fn with_tolerance(self, relative_tolerance: f64) -> Self {
        Self {
            relative_tolerance,
            ..self
        }
    }
}

/// Gauss–Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    pub fn new(order: usize) -> Self {
        let n = order.max(1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// (∫f, ∫|f|) over [a, b].
    fn apply<F: FnMut(f64) -> Result<f64>>(&self, f: &mut F, a: f64, b: f64) -> Result<(f64, f64)> {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = 0.0;
        let mut abs = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let v = f(mid + half * x)?;
            sum += w * v;
            abs += w * v.abs();
        }
        Ok((sum * half, abs * half.abs()))
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error_estimate: f64,
    /// ∫|f|, used as the scale for nearly cancelling integrals.
    pub l1_norm: f64,
    pub panels: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    /// Fine estimates on the two halves; they become the coarse values of the children.
    left: f64,
    right: f64,
    left_abs: f64,
    right_abs: f64,
    error: f64,
}

impl Panel {
    fn value(&self) -> f64 {
        self.left + self.right
    }

    fn abs(&self) -> f64 {
        self.left_abs + self.right_abs
    }
}

#[derive(Debug, PartialEq)]
struct HeapKey {
    error: f64,
    index: usize,
}

impl Eq for HeapKey {}

impl PartialOrd for HeapKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.index.cmp(&self.index))
    }
}

/// Integrate `f` over `[breakpoints[0], breakpoints[last]]`, starting with one
/// panel per breakpoint interval.
pub fn integrate<F>(mut f: F, breakpoints: &[f64], cfg: &QuadratureConfig) -> Result<Integral>
where
    F: FnMut(f64) -> Result<f64>,
{
    cfg.validate()?;
    if breakpoints.len() < 2 {
        return Err(PhaseError::InvalidParameter {
            name: "breakpoints",
            reason: "need at least two".into(),
        });
    }
    let rule = GaussRule::new(cfg.gauss_order);
    let make = |a: f64, b: f64, coarse: f64, f: &mut F| -> Result<Panel> {
        let m = 0.5 * (a + b);
        let (left, left_abs) = rule.apply(f, a, m)?;
        let (right, right_abs) = rule.apply(f, m, b)?;
        Ok(Panel {
            a,
            b,
            left,
            right,
            left_abs,
            right_abs,
            error: (left + right - coarse).abs(),
        })
    };

    let mut panels = Vec::with_capacity(breakpoints.len() * 4);
    for w in breakpoints.windows(2) {
        if w[1] <= w[0] || !w[0].is_finite() || !w[1].is_finite() {
            return Err(PhaseError::InvalidParameter {
                name: "breakpoints",
                reason: "must be finite and strictly increasing".into(),
            });
        }
        let (coarse, _) = rule.apply(&mut f, w[0], w[1])?;
        panels.push(make(w[0], w[1], coarse, &mut f)?);
    }

    let mut heap: BinaryHeap<HeapKey> = panels
        .iter()
        .enumerate()
        .map(|(index, p)| HeapKey { error: p.error, index })
        .collect();
    let mut value: f64 = panels.iter().map(Panel::value).sum();
    let mut l1: f64 = panels.iter().map(Panel::abs).sum();
    let mut error: f64 = panels.iter().map(|p| p.error).sum();

    loop {
        let target = cfg.relative_tolerance * value.abs().max(L1_FLOOR * l1);
        if error <= target {
            break;
        }
        if panels.len() >= cfg.max_subdivisions {
            return Err(PhaseError::NonConvergence {
                achieved: error,
                requested: target,
                subdivisions: panels.len(),
            });
        }
        let Some(HeapKey { index, .. }) = heap.pop() else {
            break;
        };
        let p = panels[index];
        let m = 0.5 * (p.a + p.b);
        let left = make(p.a, m, p.left, &mut f)?;
        let right = make(m, p.b, p.right, &mut f)?;
        value += left.value() + right.value() - p.value();
        l1 += left.abs() + right.abs() - p.abs();
        error += left.error + right.error - p.error;
        panels[index] = left;
        panels.push(right);
        heap.push(HeapKey {
            error: left.error,
            index,
        });
        heap.push(HeapKey {
            error: right.error,
            index: panels.len() - 1,
        });
        // Running sums drift; refresh them periodically.
        if panels.len() % 1024 == 0 {
            error = panels.iter().map(|p| p.error).sum();
        }
    }

    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    Ok(Integral {
        value: panels.iter().map(Panel::value).sum(),
        error_estimate: panels.iter().map(|p| p.error).sum(),
        l1_norm: panels.iter().map(Panel::abs).sum(),
        panels: panels.len(),
    })
}
