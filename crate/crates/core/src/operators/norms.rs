use crate::error::{Error, Result};
use crate::quadrature::QuadratureRule;

/// Discrete error norms of `values - reference` at a set of evaluation nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    /// `√(Σ wⱼ eⱼ²)` with the evaluation rule's weights.
    pub l2: f64,
    pub rmse: f64,
    pub linf: f64,
    pub eval_points: usize,
}

impl ErrorReport {
    pub fn new(values: &[f64], reference: &[f64], eval_rule: &QuadratureRule) -> Result<Self> {
        let l2 = discrete_l2_error(values, reference, eval_rule)?;
        let rmse = rmse(values, reference)?;
        let linf = values.iter().zip(reference).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        Ok(ErrorReport { l2, rmse, linf, eval_points: values.len() })
    }
}

fn check_len(func: &'static str, a: usize, b: usize) -> Result<()> {
    if a == b && a > 0 {
        Ok(())
    } else {
        Err(Error::Precondition { func, msg: format!("length mismatch or empty input ({a} vs {b})") })
    }
}

/// `√(Σⱼ wⱼ (g(yⱼ) - g_ref(yⱼ))²)` from values at the evaluation rule's nodes.
pub fn discrete_l2_error(values: &[f64], reference: &[f64], eval_rule: &QuadratureRule) -> Result<f64> {
    check_len("discrete_l2_error", values.len(), reference.len())?;
    check_len("discrete_l2_error", values.len(), eval_rule.len())?;
    let s: f64 = values.iter().zip(reference).zip(eval_rule.weights()).map(|((a, b), w)| w * (a - b) * (a - b)).sum();
    Ok(s.sqrt())
}

/// Root-mean-square of pointwise differences.
pub fn rmse(values: &[f64], reference: &[f64]) -> Result<f64> {
    check_len("rmse", values.len(), reference.len())?;
    let s: f64 = values.iter().zip(reference).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok((s / values.len() as f64).sqrt())
}
