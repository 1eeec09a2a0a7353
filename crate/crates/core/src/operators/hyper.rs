use std::f64::consts::PI;

use rayon::prelude::*;

use super::check_columns;
use super::engine::ZonalSum;
use crate::error::Result;
use crate::point::SpherePoint;
use crate::quadrature::QuadratureRule;

/// `Σ_{ℓ=0}^{n} (2ℓ+1)/(4π) P_ℓ(t)`, the reproducing kernel of degree-`n`
/// polynomials on 𝕊², accumulated along the Legendre recurrence.
#[inline]
pub fn dirichlet_kernel(n: usize, t: f64) -> f64 {
    let t = t.clamp(-1.0, 1.0);
    let mut p0 = 1.0;
    let mut sum = 1.0;
    if n >= 1 {
        let mut p1 = t;
        sum += 3.0 * p1;
        for l in 1..n {
            let lf = l as f64;
            let p2 = ((2.0 * lf + 1.0) * t * p1 - lf * p0) / (lf + 1.0);
            p0 = p1;
            p1 = p2;
            sum += (2.0 * lf + 3.0) * p1;
        }
    }
    sum / (4.0 * PI)
}

/// [`dirichlet_kernel`] with the recurrence coefficients tabulated, so the
/// inner loop has no divisions.
#[derive(Debug, Clone)]
struct Dirichlet {
    /// `(2ℓ+1)/(ℓ+1)`, `ℓ/(ℓ+1)` for `ℓ = 1..n`.
    ab: Vec<(f64, f64)>,
    n: usize,
}

impl Dirichlet {
    fn new(n: usize) -> Self {
        let ab = (1..n.max(1))
            .map(|l| {
                let lf = l as f64;
                ((2.0 * lf + 1.0) / (lf + 1.0), lf / (lf + 1.0))
            })
            .collect();
        Dirichlet { ab, n }
    }

    #[inline]
    fn eval(&self, t: f64) -> f64 {
        if self.n == 0 {
            return 1.0 / (4.0 * PI);
        }
        let t = t.clamp(-1.0, 1.0);
        let (mut p0, mut p1) = (1.0, t);
        let mut sum = 1.0 + 3.0 * t;
        let mut w = 5.0;
        for &(a, b) in &self.ab {
            let p2 = a * t * p1 - b * p0;
            p0 = p1;
            p1 = p2;
            sum += w * p1;
            w += 2.0;
        }
        sum / (4.0 * PI)
    }
}

/// Discrete L₂ projection onto polynomials of degree `≤ n`.
#[derive(Debug, Clone)]
pub struct HyperInterpolant<'a> {
    rule: &'a QuadratureRule,
    degree: usize,
    samples: Vec<f64>,
    sum: ZonalSum,
    kernel: Dirichlet,
}

fn warn_order(rule: &QuadratureRule, n: usize) {
    if rule.order() < 2 * n {
        log::warn!("rule order {} < 2n = {}; hyperinterpolation is not a projection", rule.order(), 2 * n);
    }
}

pub fn hyper_build<'a>(
    rule: &'a QuadratureRule,
    n: usize,
    f: impl Fn(&SpherePoint) -> f64 + Sync,
) -> HyperInterpolant<'a> {
    let samples: Vec<f64> = rule.points().par_iter().map(&f).collect();
    HyperInterpolant::from_samples(rule, n, samples).expect("one sample per node")
}

impl<'a> HyperInterpolant<'a> {
    pub fn from_samples(rule: &'a QuadratureRule, n: usize, samples: Vec<f64>) -> Result<Self> {
        check_columns("hyper_build", rule, &[&samples])?;
        warn_order(rule, n);
        let sum = ZonalSum::new(rule, &[&samples], -1.0);
        Ok(HyperInterpolant { rule, degree: n, samples, sum, kernel: Dirichlet::new(n) })
    }

    pub fn rule(&self) -> &QuadratureRule {
        self.rule
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn eval(&self, x: &SpherePoint) -> f64 {
        self.sum.eval_one(x, |t| self.kernel.eval(t))
    }

    pub fn eval_batch(&self, points: &[SpherePoint]) -> Vec<f64> {
        self.sum.eval_batch(points, |t| self.kernel.eval(t)).pop().unwrap_or_default()
    }
}

/// Hyperinterpolants of several sample vectors, `[column][point]`.
pub fn hyper_eval_columns(
    rule: &QuadratureRule,
    n: usize,
    columns: &[&[f64]],
    points: &[SpherePoint],
) -> Result<Vec<Vec<f64>>> {
    check_columns("hyper_eval_columns", rule, columns)?;
    warn_order(rule, n);
    let sum = ZonalSum::new(rule, columns, -1.0);
    debug_assert_eq!(sum.ncols(), columns.len());
    let kernel = Dirichlet::new(n);
    Ok(sum.eval_batch(points, |t| kernel.eval(t)))
}
