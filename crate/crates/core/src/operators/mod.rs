//! Quasi-interpolation, the hyperinterpolation baseline and discrete error norms.

mod engine;
mod hyper;
mod norms;
mod qi;

pub use hyper::{dirichlet_kernel, hyper_build, hyper_eval_columns, HyperInterpolant};
pub use norms::{discrete_l2_error, rmse, ErrorReport};
pub use qi::{qi_build, qi_eval_columns, QuasiInterpolant};

use crate::error::{Error, Result};
use crate::quadrature::QuadratureRule;

fn check_columns(func: &'static str, rule: &QuadratureRule, columns: &[&[f64]]) -> Result<()> {
    for c in columns {
        if c.len() != rule.len() {
            return Err(Error::Precondition {
                func,
                msg: format!("{} samples for a rule with {} nodes", c.len(), rule.len()),
            });
        }
    }
    Ok(())
}
