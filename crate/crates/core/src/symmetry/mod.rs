//! Constants of motion, the so_{κ1,κ2}(4) generators, the Runge–Lenz vector
//! and functional-independence tests.

pub mod constants;
pub mod generators;
pub mod lrl;

use nalgebra::DMatrix;

pub use constants::{constants, ConstantSet};
pub use generators::{so4_generators, verify_so4, verify_so4_generators, GeneratorSet};
pub use lrl::{lrl, lrl_from, verify_lrl_algebra, verify_lrl_vector, LrlVector, Scaled};

use crate::error::Result;
use crate::observable::Observable;
use crate::state::PhaseState;

/// Singular values below this fraction of the largest count as zero.
pub const RANK_RTOL: f64 = 1e-8;

/// Numerical rank of the Jacobian of `observables` at `s`.
pub fn independence_rank(observables: &[Observable], s: &PhaseState) -> Result<usize> {
    let mut rows = Vec::with_capacity(observables.len() * 6);
    for o in observables {
        o.check_chart(s)?;
        rows.extend_from_slice(&o.jet_at(&s.coords)?.eps);
    }
    if observables.is_empty() {
        return Ok(0);
    }
    let jac = DMatrix::from_row_slice(observables.len(), 6, &rows);
    let sv = jac.singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|&&v| v > RANK_RTOL * max).count())
}

#[cfg(test)]
mod tests;
