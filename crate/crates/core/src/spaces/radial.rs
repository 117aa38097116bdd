//! One-dimensional radial Hamiltonians left after separating `C^(2)` and `C^(3)`.
//!
//! ```text
//! H_cc(r, p_r) = ½ p_r² + c3/(2 κ2 S_z(r)²) - k C_z(r)/S_z(r)
//! H_nc(ρ, p_ρ) = ½ C_{-z}(ρ) (p_ρ² + c3/(κ2 S_{-z}(ρ)²) - 2k C_{-z}(ρ)/S_{-z}(ρ))
//! ```

use crate::error::{Error, Result};
use crate::kernel::ckappa;
use crate::spaces::hamiltonian::{radial_sine, HamiltonianSpec};
use crate::state::Chart;

#[derive(Debug, Clone)]
pub struct RadialReduction {
    pub chart: Chart,
    pub z: f64,
    pub kappa2: f64,
    pub k: f64,
    pub c3: f64,
}

pub fn radial_reduction(spec: &HamiltonianSpec, c3: f64) -> Result<RadialReduction> {
    if c3 < 0.0 {
        return Err(Error::InvalidArgument(format!("C3 must be nonnegative, got {c3}")));
    }
    let chart = spec.family.polar_chart().ok_or_else(|| {
        Error::InvalidArgument(format!("{} has no separated radial form", spec.family.name()))
    })?;
    Ok(RadialReduction {
        chart,
        z: spec.params.z,
        kappa2: spec.params.kappa2,
        k: spec.coupling(),
        c3,
    })
}

impl RadialReduction {
    pub fn hamiltonian(&self, x: f64, p: f64) -> Result<f64> {
        match self.chart {
            Chart::PolarConstant => {
                let s = radial_sine(self.z, x)?;
                let c = ckappa(self.z, x);
                Ok(0.5 * p * p + self.c3 / (2.0 * self.kappa2 * s * s) - self.k * c / s)
            }
            _ => {
                let s = radial_sine(-self.z, x)?;
                let c = ckappa(-self.z, x);
                Ok(0.5 * c * (p * p + self.c3 / (self.kappa2 * s * s) - 2.0 * self.k * c / s))
            }
        }
    }

    /// The radial Hamiltonian at zero radial momentum.
    pub fn effective_potential(&self, x: f64) -> Result<f64> {
        self.hamiltonian(x, 0.0)
    }

    /// Radial momentum squared at energy `e` (negative beyond a turning point).
    pub fn momentum_squared(&self, e: f64, x: f64) -> Result<f64> {
        let v = self.effective_potential(x)?;
        let coef = match self.chart {
            Chart::PolarConstant => 0.5,
            _ => 0.5 * ckappa(-self.z, x),
        };
        Ok((e - v) / coef)
    }

    /// Bisection for a root of `momentum_squared(e, ·)` in `[lo, hi]`.
    pub fn turning_point(&self, e: f64, lo: f64, hi: f64) -> Result<f64> {
        let f = |x: f64| self.momentum_squared(e, x);
        let (mut a, mut b) = (lo, hi);
        let (fa, fb) = (f(a)?, f(b)?);
        if fa.signum() == fb.signum() {
            return Err(Error::InvalidArgument(format!(
                "no sign change of p^2 on [{lo}, {hi}]"
            )));
        }
        let mut fa = fa;
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            let fm = f(m)?;
            if fm == 0.0 || (b - a) < 1e-15 * m.abs().max(1.0) {
                return Ok(m);
            }
            if fm.signum() == fa.signum() {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        Ok(0.5 * (a + b))
    }
}
