//! Quadrature oracle for Fourier–Legendre coefficients.

use crate::quadrature::gauss_legendre_1d;
use crate::specfun::{legendre_p, Degree};

use super::{sphere_area, BaseFamily, ZonalKernel};

/// `ω_{d-1} ∫_{-1}^{1} φ(t) P_ℓ(d+1; t) (1-t²)^{(d-2)/2} dt` by panelled
/// Gauss–Legendre quadrature with `quad_order` nodes per panel.
///
/// The integral is taken in `θ = arccos t`, which removes the endpoint
/// singularity of the weight in odd dimensions. Panel edges sit on the kernel
/// support boundaries and on a geometric ladder in `θ` around the peak, and
/// panels are short enough to resolve the oscillation of `P_ℓ`.
pub fn flc_numeric(kernel: &ZonalKernel, ell: Degree, quad_order: usize) -> f64 {
    let d = kernel.dim();
    let g = gauss_legendre_1d(quad_order.max(2)).expect("quadrature order is positive");
    let edges = panel_edges(kernel, ell);
    let mut acc = 0.0;
    for w in edges.windows(2) {
        let (a, b) = (w[0], w[1]);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        let mut panel = 0.0;
        for (x, wt) in g.nodes.iter().zip(&g.weights) {
            let th = mid + half * x;
            let t = th.cos();
            let s = th.sin();
            let p = legendre_p(ell, d + 1, t).unwrap_or(0.0);
            panel += wt * kernel.eval_clamped(t) * p * s.powi(d as i32 - 1);
        }
        acc += half * panel;
    }
    sphere_area(d - 1) * acc
}

fn panel_edges(kernel: &ZonalKernel, ell: Degree) -> Vec<f64> {
    use std::f64::consts::PI;
    let mut cuts = vec![0.0, PI];
    let mut min_width = PI;
    for c in kernel.components() {
        // angular width of the peak
        let width = match c.family {
            BaseFamily::Poisson => c.rho,
            BaseFamily::Gaussian => c.rho,
            BaseFamily::CompactSupport { .. } => {
                let edge = 2.0 * (c.rho / 2.0).min(1.0).asin();
                cuts.push(edge);
                edge
            }
        };
        min_width = min_width.min(width);
    }
    let mut th = min_width / 16.0;
    while th < PI {
        cuts.push(th);
        th *= 2.0;
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);

    // split so that each panel covers at most ~1 oscillation of P_ℓ
    let max_len = (2.0 / (ell as f64 + 1.0)).min(0.25);
    let mut edges = vec![cuts[0]];
    for w in cuts.windows(2) {
        let n = ((w[1] - w[0]) / max_len).ceil().max(1.0) as usize;
        for k in 1..=n {
            edges.push(w[0] + (w[1] - w[0]) * k as f64 / n as f64);
        }
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{poisson_flc, KernelSpec};
    use approx::assert_abs_diff_eq;

    #[test]
    fn poisson_example() {
        let k = ZonalKernel::new(KernelSpec::poisson(0.5)).unwrap();
        assert_abs_diff_eq!(flc_numeric(&k, 2, 30), 0.25, epsilon = 1e-10);
    }

    #[test]
    fn closed_forms_match_quadrature() {
        let specs = [
            KernelSpec::poisson(0.1),
            KernelSpec::gaussian(0.05),
            KernelSpec::gaussian(0.4),
            KernelSpec::compact_support(0.3, 0),
            KernelSpec::compact_support(0.3, 2),
            KernelSpec::compact_support(1.2, 5),
            KernelSpec::compact_support(2.5, 3),
            KernelSpec::high_order_default(BaseFamily::Gaussian, 0.05, 3),
            KernelSpec::high_order(BaseFamily::CompactSupport { m: 2 }, 0.1, vec![0.5, 1.0, 1.5]),
        ];
        for s in specs {
            let k = ZonalKernel::new(s.clone()).unwrap();
            for ell in [0usize, 1, 2, 5, 17, 60, 150] {
                let closed = k.flc(ell).unwrap();
                let num = flc_numeric(&k, ell, 30);
                assert_abs_diff_eq!(closed, num, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn spec_oracle_examples() {
        let g = ZonalKernel::new(KernelSpec::gaussian(0.5)).unwrap();
        assert_abs_diff_eq!(flc_numeric(&g, 0, 400), -(-8.0f64).exp_m1(), epsilon = 1e-10);
        let p = ZonalKernel::new(KernelSpec::poisson(0.5)).unwrap();
        assert_abs_diff_eq!(flc_numeric(&p, 2, 200), 0.25, epsilon = 1e-10);
        let p = ZonalKernel::new(KernelSpec::poisson(0.1)).unwrap();
        assert_abs_diff_eq!(flc_numeric(&p, 10, 30), 0.9f64.powi(10), epsilon = 1e-8);
        // constant kernel: CS with m = 0 and full support
        let c = ZonalKernel::new(KernelSpec::compact_support(3.0, 0)).unwrap();
        assert_abs_diff_eq!(flc_numeric(&c, 1, 10), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn cs_branches_match_quadrature() {
        for m in 1..=3u32 {
            for &rho in &[0.1, 0.3, 0.6] {
                let k = ZonalKernel::new(KernelSpec::compact_support(rho, m)).unwrap();
                for ell in m as usize + 1..=m as usize + 20 {
                    let num = flc_numeric(&k, ell, 30);
                    assert_abs_diff_eq!(
                        crate::kernels::cs_flc_hypergeometric(ell, rho, m).unwrap(),
                        num,
                        epsilon = 1e-7
                    );
                    assert_abs_diff_eq!(crate::kernels::cs_flc_gegenbauer(ell, rho, m).unwrap(), num, epsilon = 1e-7);
                }
            }
        }
    }

    #[test]
    fn poisson_any_dimension() {
        for d in [3usize, 4, 5] {
            let k = ZonalKernel::new(KernelSpec::poisson(0.3).with_dim(d)).unwrap();
            for ell in 0..6 {
                assert_abs_diff_eq!(flc_numeric(&k, ell, 30), poisson_flc(ell, 0.7), epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn other_dimensions_fall_back_to_quadrature() {
        let k = ZonalKernel::new(KernelSpec::gaussian(0.3).with_dim(3)).unwrap();
        let v0 = k.flc(0).unwrap();
        // independent value from adaptive quadrature
        assert_abs_diff_eq!(v0, 0.965_214_426_930_084_6, epsilon = 1e-9);
        assert!(k.flc(4).unwrap() < v0);
    }
}
