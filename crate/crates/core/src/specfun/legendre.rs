use super::{Degree, ARG_TOLERANCE};
use crate::error::{domain, Result};

fn check_t(func: &'static str, t: f64) -> Result<f64> {
    if !t.is_finite() || t.abs() > 1.0 + ARG_TOLERANCE {
        return Err(domain(func, format!("|t| = {} exceeds 1", t.abs())));
    }
    Ok(t.clamp(-1.0, 1.0))
}

fn check_dim(func: &'static str, dim: usize) -> Result<()> {
    if dim < 3 {
        return Err(domain(func, format!("ambient dimension {dim} < 3")));
    }
    Ok(())
}

/// `dim`-dimensional Legendre polynomial `P_ℓ(dim; t)`, normalized so that `P_ℓ(dim; 1) = 1`.
///
/// Uses `(ℓ+dim-2) P_{ℓ+1} = (2ℓ+dim-2) t P_ℓ - ℓ P_{ℓ-1}`.
pub fn legendre_p(ell: Degree, dim: usize, t: f64) -> Result<f64> {
    check_dim("legendre_p", dim)?;
    let t = check_t("legendre_p", t)?;
    Ok(legendre_fill(ell, dim, t, |_, _| {}))
}

/// `[P_0(dim;t), ..., P_ellmax(dim;t)]` from a single recurrence pass.
pub fn legendre_p_sequence(ellmax: Degree, dim: usize, t: f64) -> Result<Vec<f64>> {
    check_dim("legendre_p_sequence", dim)?;
    let t = check_t("legendre_p_sequence", t)?;
    let mut out = vec![0.0; ellmax + 1];
    legendre_fill(ellmax, dim, t, |l, v| out[l] = v);
    Ok(out)
}

fn legendre_fill(ellmax: Degree, dim: usize, t: f64, mut sink: impl FnMut(usize, f64)) -> f64 {
    let q = dim as f64 - 2.0;
    let mut prev = 1.0;
    sink(0, prev);
    if ellmax == 0 {
        return prev;
    }
    let mut cur = t;
    sink(1, cur);
    for l in 1..ellmax {
        let lf = l as f64;
        let next = ((2.0 * lf + q) * t * cur - lf * prev) / (lf + q);
        prev = cur;
        cur = next;
        sink(l + 1, cur);
    }
    cur
}

/// Ratio-normalized Gegenbauer polynomial `D_n = n!/(2α)_n · C_n^{(α)}(x)`.
///
/// The normalization is folded into the recurrence
/// `(n+2α-1) D_n = 2(n+α-1) x D_{n-1} - (n-1) D_{n-2}`,
/// so no factorial or Pochhammer factor is ever formed and `D_n(1) = 1`.
pub fn gegenbauer_ratio_normalized(n: usize, alpha: f64, x: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(domain("gegenbauer_ratio_normalized", format!("alpha = {alpha} must be > 0")));
    }
    if !x.is_finite() {
        return Err(domain("gegenbauer_ratio_normalized", "non-finite argument"));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut cur = x;
    for k in 2..=n {
        let kf = k as f64;
        let next = (2.0 * (kf + alpha - 1.0) * x * cur - (kf - 1.0) * prev) / (kf + 2.0 * alpha - 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Dimension `N(d, ℓ)` of the space of degree-ℓ spherical harmonics on 𝕊ᵈ.
pub fn dim_sph_harm(d: usize, ell: Degree) -> Result<u64> {
    if d < 2 {
        return Err(domain("dim_sph_harm", format!("sphere dimension {d} < 2")));
    }
    if ell == 0 {
        return Ok(1);
    }
    if d == 2 {
        return Ok(2 * ell as u64 + 1);
    }
    // (2ℓ+d-1) (ℓ+d-2)! / (ℓ! (d-1)!) = (2ℓ+d-1)/(ℓ+d-1) · C(ℓ+d-1, d-1)
    let l = ell as u128;
    let d = d as u128;
    let mut binom: u128 = 1;
    for i in 1..=(d - 1) {
        binom = binom * (l + i) / i;
    }
    let n = (2 * l + d - 1) * binom / (l + d - 1);
    u64::try_from(n).map_err(|_| domain("dim_sph_harm", "result overflows u64"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn low_degree_values() {
        assert_eq!(legendre_p(0, 3, 0.7).unwrap(), 1.0);
        assert_eq!(legendre_p(1, 3, 0.7).unwrap(), 0.7);
        assert_abs_diff_eq!(legendre_p(2, 3, 0.5).unwrap(), -0.125, epsilon = 1e-15);
    }

    #[test]
    fn sequence_examples() {
        assert_eq!(legendre_p_sequence(2, 3, 1.0).unwrap(), vec![1.0, 1.0, 1.0]);
        let s = legendre_p_sequence(2, 3, 0.5).unwrap();
        assert_abs_diff_eq!(s[2], -0.125, epsilon = 1e-15);
        assert_eq!(s[1], 0.5);
        assert_eq!(legendre_p_sequence(0, 3, -1.0).unwrap(), vec![1.0]);
    }

    #[test]
    fn sequence_matches_pointwise() {
        for &t in &[-0.93, -0.2, 0.0, 0.41, 0.999] {
            let s = legendre_p_sequence(40, 4, t).unwrap();
            for (l, v) in s.iter().enumerate() {
                assert_eq!(*v, legendre_p(l, 4, t).unwrap());
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(legendre_p(3, 3, 1.01).is_err());
        assert!(legendre_p(3, 2, 0.1).is_err());
        assert!(legendre_p(3, 3, 1.0 + 1e-14).is_ok());
        assert!(legendre_p_sequence(3, 3, f64::NAN).is_err());
        assert!(gegenbauer_ratio_normalized(3, 0.0, 0.2).is_err());
        assert!(gegenbauer_ratio_normalized(3, -1.5, 0.2).is_err());
    }

    #[test]
    fn four_dimensional_legendre_is_chebyshev_u_ratio() {
        // P_ℓ(4; cos θ) = sin((ℓ+1)θ) / ((ℓ+1) sin θ)
        let theta: f64 = 0.83;
        for l in 0..30 {
            let expect = ((l as f64 + 1.0) * theta).sin() / ((l as f64 + 1.0) * theta.sin());
            assert_abs_diff_eq!(legendre_p(l, 4, theta.cos()).unwrap(), expect, epsilon = 1e-13);
        }
    }

    #[test]
    fn gegenbauer_examples() {
        assert_eq!(gegenbauer_ratio_normalized(0, 3.5, 0.9).unwrap(), 1.0);
        assert_abs_diff_eq!(gegenbauer_ratio_normalized(1, 3.5, 0.9).unwrap(), 0.9, epsilon = 1e-15);
    }

    /// Unnormalized Gegenbauer recurrence, small n only.
    fn gegenbauer_plain(n: usize, alpha: f64, x: f64) -> f64 {
        let mut prev = 1.0;
        if n == 0 {
            return prev;
        }
        let mut cur = 2.0 * alpha * x;
        for k in 2..=n {
            let kf = k as f64;
            let next = (2.0 * x * (kf + alpha - 1.0) * cur - (kf + 2.0 * alpha - 2.0) * prev) / kf;
            prev = cur;
            cur = next;
        }
        cur
    }

    #[test]
    fn gegenbauer_matches_unfolded_recurrence() {
        use crate::specfun::pochhammer;
        for &(alpha, x) in &[(1.0, 0.0), (1.0, 0.3), (2.5, -0.7), (3.5, 0.95), (0.25, 0.5)] {
            for n in 0..25 {
                let fact: f64 = (1..=n).map(|k| k as f64).product();
                let expect = fact / pochhammer(2.0 * alpha, n) * gegenbauer_plain(n, alpha, x);
                let got = gegenbauer_ratio_normalized(n, alpha, x).unwrap();
                assert_abs_diff_eq!(got, expect, epsilon = 1e-12 * expect.abs().max(1.0));
            }
        }
        // n=2, α=1, x=0: C_2^{(1)}(0) = -1, 2!/(2)_2 = 1/3
        assert_abs_diff_eq!(gegenbauer_ratio_normalized(2, 1.0, 0.0).unwrap(), -1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn gegenbauer_is_one_at_one_without_overflow() {
        for &alpha in &[0.5, 1.5, 3.5, 10.5, 40.0] {
            for n in [0usize, 1, 10, 150, 500, 2000] {
                let v = gegenbauer_ratio_normalized(n, alpha, 1.0).unwrap();
                assert_abs_diff_eq!(v, 1.0, epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn legendre_is_gegenbauer_special_case() {
        for dim in 3..7 {
            let alpha = (dim as f64 - 2.0) / 2.0;
            for l in 0..50 {
                let a = legendre_p(l, dim, 0.37).unwrap();
                let b = gegenbauer_ratio_normalized(l, alpha, 0.37).unwrap();
                assert_abs_diff_eq!(a, b, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn harmonic_dimensions() {
        assert_eq!(dim_sph_harm(2, 0).unwrap(), 1);
        assert_eq!(dim_sph_harm(2, 6).unwrap(), 13);
        assert_eq!(dim_sph_harm(3, 2).unwrap(), 9);
        // d=3: (ℓ+1)²
        for l in 0..40 {
            assert_eq!(dim_sph_harm(3, l).unwrap(), ((l + 1) * (l + 1)) as u64);
        }
        assert!(dim_sph_harm(1, 3).is_err());
    }
}
