//! Shared machinery for sums of the form `Σⱼ cⱼ g(xⱼ·x)`.

use std::ops::Range;

use rayon::prelude::*;

use crate::point::SpherePoint;
use crate::quadrature::QuadratureRule;

/// Rule nodes sorted by `z` with one or more coefficient columns.
///
/// When `t_min > -1` only nodes with `xⱼ·x ≥ t_min` can contribute; their `z`
/// lies in a band around the colatitude of `x`, found by binary search.
#[derive(Debug, Clone)]
pub(crate) struct ZonalSum {
    x: Vec<f64>,
    y: Vec<f64>,
    z: Vec<f64>,
    /// Row-major `[node][column]`.
    coef: Vec<f64>,
    ncols: usize,
    t_min: f64,
    /// Angular radius of the cap `{t ≥ t_min}`.
    beta: f64,
}

impl ZonalSum {
    /// Coefficients are `wⱼ · columns[c][j]`.
    pub fn new(rule: &QuadratureRule, columns: &[&[f64]], t_min: f64) -> Self {
        let n = rule.len();
        let ncols = columns.len();
        let mut order: Vec<usize> = (0..n).collect();
        let pts = rule.points();
        order.sort_by(|&a, &b| pts[a].z().total_cmp(&pts[b].z()).then(a.cmp(&b)));
        let mut x = Vec::with_capacity(n);
        let mut y = Vec::with_capacity(n);
        let mut z = Vec::with_capacity(n);
        let mut coef = Vec::with_capacity(n * ncols);
        for &j in &order {
            let [a, b, c] = pts[j].coords();
            x.push(a);
            y.push(b);
            z.push(c);
            let w = rule.weights()[j];
            for col in columns {
                coef.push(w * col[j]);
            }
        }
        let t_min = t_min.clamp(-1.0, 1.0);
        // small angular margin against rounding in the band test
        let beta = t_min.acos() + 1e-9;
        ZonalSum { x, y, z, coef, ncols, t_min, beta }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    fn band(&self, p: &SpherePoint) -> Range<usize> {
        if self.t_min <= -1.0 {
            return 0..self.z.len();
        }
        let theta = p.colatitude();
        let zlo = (theta + self.beta).min(std::f64::consts::PI).cos();
        let zhi = (theta - self.beta).max(0.0).cos();
        let lo = self.z.partition_point(|&v| v < zlo);
        let hi = self.z.partition_point(|&v| v <= zhi);
        lo..hi.max(lo)
    }

    /// `out[c] = Σⱼ coef[j][c] g(xⱼ·p)`, summed in `z` order.
    pub fn eval_into(&self, p: &SpherePoint, g: impl Fn(f64) -> f64, out: &mut [f64]) {
        out.iter_mut().for_each(|v| *v = 0.0);
        let [px, py, pz] = p.coords();
        for j in self.band(p) {
            let t = (self.x[j] * px + self.y[j] * py + self.z[j] * pz).clamp(-1.0, 1.0);
            if t < self.t_min {
                continue;
            }
            let k = g(t);
            if k == 0.0 {
                continue;
            }
            let row = &self.coef[j * self.ncols..(j + 1) * self.ncols];
            for (o, c) in out.iter_mut().zip(row) {
                *o += c * k;
            }
        }
    }

    pub fn eval_one(&self, p: &SpherePoint, g: impl Fn(f64) -> f64) -> f64 {
        debug_assert_eq!(self.ncols, 1);
        let mut out = [0.0];
        self.eval_into(p, g, &mut out);
        out[0]
    }

    /// All columns at all points, returned as `[column][point]`.
    pub fn eval_batch(&self, points: &[SpherePoint], g: impl Fn(f64) -> f64 + Sync) -> Vec<Vec<f64>> {
        let rows: Vec<Vec<f64>> = points
            .par_iter()
            .map(|p| {
                let mut out = vec![0.0; self.ncols];
                self.eval_into(p, &g, &mut out);
                out
            })
            .collect();
        let mut cols = vec![Vec::with_capacity(points.len()); self.ncols];
        for r in rows {
            for (c, v) in cols.iter_mut().zip(r) {
                c.push(v);
            }
        }
        cols
    }
}
