//! Metric coefficients of the two families in each chart.
//!
//! The normalization is the one the curvature formulas are stated in: the
//! Beltrami-like metric of the variable-curvature family is
//!
//! ```text
//! ds²_nc = 2 Σ_i e^{z(Σ_{j<i} q_j² - Σ_{j>i} q_j²)} dq_i² / sinhc(z q_i²)
//! ds²_cc = ds²_nc e^{-z q²}
//! ```
//!
//! which reads `2 dq²` when `z = 0`. The polar forms are
//! `ds²_cc = dr² + κ2 S_z(r)² (dθ² + S_κ2(θ)² dφ²)` and
//! `ds²_nc = (dρ² + κ2 S_{-z}(ρ)² (dθ² + S_κ2(θ)² dφ²)) / C_{-z}(ρ)`, each chart
//! being the pullback of the others.

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{ckappa, sinhc, skappa};
use crate::spaces::charts::CHART_EPS;
use crate::spaces::SpaceParams;
use crate::state::Chart;

/// Which of the two curved families a metric or curvature refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// Variable (non-constant) curvature.
    Nc,
    /// Constant curvature.
    Cc,
}

impl std::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nc" => Ok(Kind::Nc),
            "cc" => Ok(Kind::Cc),
            _ => Err(Error::InvalidArgument(format!("unknown curvature kind '{s}'"))),
        }
    }
}

fn diag(a: f64, b: f64, c: f64) -> Matrix3<f64> {
    Matrix3::from_diagonal(&nalgebra::Vector3::new(a, b, c))
}

fn angular_factor(params: &SpaceParams, theta: f64) -> Result<f64> {
    let s2 = skappa(params.kappa2, theta);
    if s2.abs() < CHART_EPS {
        return Err(Error::Singularity(format!("polar axis at theta = {theta}")));
    }
    Ok(s2 * s2)
}

pub fn metric(chart: Chart, kind: Kind, point: [f64; 3], params: &SpaceParams) -> Result<Matrix3<f64>> {
    let z = params.z;
    let g = match chart {
        Chart::BeltramiLike => {
            let a = point.map(|q| q * q);
            let g = diag(
                2.0 / sinhc(z * a[0]) * (-z * (a[1] + a[2])).exp(),
                2.0 / sinhc(z * a[1]) * (z * (a[0] - a[2])).exp(),
                2.0 / sinhc(z * a[2]) * (z * (a[0] + a[1])).exp(),
            );
            match kind {
                Kind::Nc => g,
                Kind::Cc => g * (-z * (a[0] + a[1] + a[2])).exp(),
            }
        }
        Chart::PolarVariable => {
            let rho = point[0];
            let s = skappa(-z, rho);
            if s.abs() < CHART_EPS {
                return Err(Error::Singularity("origin of the polar chart".into()));
            }
            let c = ckappa(-z, rho);
            if c <= 0.0 {
                return Err(Error::Singularity(format!("C_-z(rho) vanishes at rho = {rho}")));
            }
            let ang = params.kappa2 * s * s;
            let base = diag(1.0, ang, ang * angular_factor(params, point[1])?);
            match kind {
                Kind::Nc => base / c,
                Kind::Cc => base / (c * c),
            }
        }
        Chart::PolarConstant => {
            let r = point[0];
            let s = skappa(z, r);
            if s.abs() < CHART_EPS {
                return Err(Error::Singularity("pole of the polar chart".into()));
            }
            let ang = params.kappa2 * s * s;
            let base = diag(1.0, ang, ang * angular_factor(params, point[1])?);
            match kind {
                Kind::Cc => base,
                Kind::Nc => {
                    let c = ckappa(z, r);
                    if c <= 0.0 {
                        return Err(Error::Singularity(format!("C_z(r) vanishes at r = {r}")));
                    }
                    base / c
                }
            }
        }
    };
    if g.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain(format!("metric not finite at {point:?}")));
    }
    Ok(g)
}
