use super::CompensatedSum;
use crate::error::{domain, Result};

/// Terminating Gauss hypergeometric polynomial
/// `₂F₁(-n, b; c; z) = Σ_{k=0}^{n} (-1)^k C(n,k) (b)_k/(c)_k z^k`.
pub fn hyp2f1_terminating(n: usize, b: f64, c: f64, z: f64) -> Result<f64> {
    if !c.is_finite() || (c <= 0.0 && c.fract() == 0.0 && c >= -(n as f64)) {
        return Err(domain("hyp2f1_terminating", format!("c = {c} is a nonpositive integer")));
    }
    let mut sum = CompensatedSum::default();
    let mut term = 1.0;
    sum.add(term);
    for k in 0..n {
        let kf = k as f64;
        term *= -((n - k) as f64) / (kf + 1.0) * (b + kf) / (c + kf) * z;
        sum.add(term);
    }
    Ok(sum.value())
}
