use rayon::prelude::*;

use super::check_columns;
use super::engine::ZonalSum;
use crate::error::Result;
use crate::kernels::ZonalKernel;
use crate::point::SpherePoint;
use crate::quadrature::QuadratureRule;

/// `Σⱼ wⱼ f(xⱼ) φ_ρ(xⱼ·x)`.
#[derive(Debug, Clone)]
pub struct QuasiInterpolant<'a> {
    rule: &'a QuadratureRule,
    kernel: &'a ZonalKernel,
    samples: Vec<f64>,
    sum: ZonalSum,
}

/// Samples `f` at the rule nodes.
pub fn qi_build<'a>(
    rule: &'a QuadratureRule,
    kernel: &'a ZonalKernel,
    f: impl Fn(&SpherePoint) -> f64 + Sync,
) -> QuasiInterpolant<'a> {
    let samples: Vec<f64> = rule.points().par_iter().map(&f).collect();
    QuasiInterpolant::from_samples(rule, kernel, samples).expect("one sample per node")
}

impl<'a> QuasiInterpolant<'a> {
    pub fn from_samples(rule: &'a QuadratureRule, kernel: &'a ZonalKernel, samples: Vec<f64>) -> Result<Self> {
        check_columns("qi_build", rule, &[&samples])?;
        let sum = ZonalSum::new(rule, &[&samples], kernel.support_threshold());
        Ok(QuasiInterpolant { rule, kernel, samples, sum })
    }

    pub fn rule(&self) -> &QuadratureRule {
        self.rule
    }

    pub fn kernel(&self) -> &ZonalKernel {
        self.kernel
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn eval(&self, x: &SpherePoint) -> f64 {
        let k = self.kernel;
        self.sum.eval_one(x, |t| k.eval_clamped(t))
    }

    /// Values at many points, evaluated in parallel.
    pub fn eval_batch(&self, points: &[SpherePoint]) -> Vec<f64> {
        let k = self.kernel;
        self.sum.eval_batch(points, |t| k.eval_clamped(t)).pop().unwrap_or_default()
    }
}

/// Quasi-interpolants of several sample vectors sharing one rule and kernel,
/// evaluated with one kernel evaluation per node pair. Returns `[column][point]`.
pub fn qi_eval_columns(
    rule: &QuadratureRule,
    kernel: &ZonalKernel,
    columns: &[&[f64]],
    points: &[SpherePoint],
) -> Result<Vec<Vec<f64>>> {
    check_columns("qi_eval_columns", rule, columns)?;
    let sum = ZonalSum::new(rule, columns, kernel.support_threshold());
    Ok(sum.eval_batch(points, |t| kernel.eval_clamped(t)))
}
