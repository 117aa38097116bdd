//! Sectional and scalar curvature from the metric alone.
//!
//! Christoffel symbols come from central differences of the metric, the
//! Riemann tensor from central differences of the Christoffels:
//!
//! ```text
//! R^a_bcd = ∂_c Γ^a_db - ∂_d Γ^a_cb + Γ^a_ce Γ^e_db - Γ^a_de Γ^e_cb
//! K_ij    = g_ia R^a_jij / (g_ii g_jj - g_ij²)        R = g^bd R^a_bad
//! ```
//!
//! The closed forms the numbers are compared against:
//!
//! ```text
//! constant curvature          K_ij = z,  K = 6z
//! variable, Beltrami-like     K12 = z/4 e^{-zq²}(1 + e^{2z q3²} - 2e^{2zq²})
//!                             K13 = z/4 e^{-zq²}(2 - e^{2z q3²} + e^{2z(q2²+q3²)} - 2e^{2zq²})
//!                             K23 = z/4 e^{-zq²}(2 - e^{2z(q2²+q3²)} - e^{2zq²})
//!                             K   = -5z sinh(z q²)
//! variable, polar             K12 = K13 = -½ z² S_{-z}(ρ)² / C_{-z}(ρ),  K23 = K12/2,  K = 5 K12
//! ```

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::kernel::{ckappa, skappa, tkappa};
use crate::spaces::metric::{metric, Kind};
use crate::spaces::SpaceParams;
use crate::state::Chart;

/// Finite-difference step for both differentiation passes.
pub const FD_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Curvatures {
    pub k12: f64,
    pub k13: f64,
    pub k23: f64,
    pub scalar: f64,
}

impl Curvatures {
    pub fn max_abs_diff(&self, other: &Curvatures) -> f64 {
        [
            self.k12 - other.k12,
            self.k13 - other.k13,
            self.k23 - other.k23,
            self.scalar - other.scalar,
        ]
        .iter()
        .fold(0.0, |m, d| m.max(d.abs()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureReport {
    pub numeric: Curvatures,
    /// Closed form for this chart and family, when one is known.
    pub closed: Option<Curvatures>,
}

type Christoffel = [[[f64; 3]; 3]; 3];

fn christoffel(chart: Chart, kind: Kind, x: [f64; 3], p: &SpaceParams, h: f64) -> Result<Christoffel> {
    let g = metric(chart, kind, x, p)?;
    let ginv = g.try_inverse().ok_or_else(|| {
        crate::Error::Singularity(format!("metric is not invertible at {x:?}"))
    })?;
    let mut dg = [Matrix3::zeros(); 3];
    for (c, d) in dg.iter_mut().enumerate() {
        let mut xp = x;
        let mut xm = x;
        xp[c] += h;
        xm[c] -= h;
        *d = (metric(chart, kind, xp, p)? - metric(chart, kind, xm, p)?) / (2.0 * h);
    }
    let mut gam = [[[0.0; 3]; 3]; 3];
    for (a, ga) in gam.iter_mut().enumerate() {
        for b in 0..3 {
            for c in 0..3 {
                let mut s = 0.0;
                for d in 0..3 {
                    s += ginv[(a, d)] * (dg[b][(d, c)] + dg[c][(d, b)] - dg[d][(b, c)]);
                }
                ga[b][c] = 0.5 * s;
            }
        }
    }
    Ok(gam)
}

/// Numerical sectional curvatures of the coordinate planes and the scalar curvature.
pub fn numeric_curvature(chart: Chart, kind: Kind, x: [f64; 3], p: &SpaceParams) -> Result<Curvatures> {
    let h = FD_STEP;
    let g = metric(chart, kind, x, p)?;
    let ginv = g.try_inverse().ok_or_else(|| {
        crate::Error::Singularity(format!("metric is not invertible at {x:?}"))
    })?;
    let gam = christoffel(chart, kind, x, p, h)?;
    let mut dgam = [[[[0.0; 3]; 3]; 3]; 3];
    for (c, dc) in dgam.iter_mut().enumerate() {
        let mut xp = x;
        let mut xm = x;
        xp[c] += h;
        xm[c] -= h;
        let gp = christoffel(chart, kind, xp, p, h)?;
        let gm = christoffel(chart, kind, xm, p, h)?;
        for a in 0..3 {
            for b in 0..3 {
                for e in 0..3 {
                    dc[a][b][e] = (gp[a][b][e] - gm[a][b][e]) / (2.0 * h);
                }
            }
        }
    }
    let riemann = |a: usize, b: usize, c: usize, d: usize| {
        let mut r = dgam[c][a][d][b] - dgam[d][a][c][b];
        for e in 0..3 {
            r += gam[a][c][e] * gam[e][d][b] - gam[a][d][e] * gam[e][c][b];
        }
        r
    };
    let sectional = |i: usize, j: usize| {
        let mut num = 0.0;
        for a in 0..3 {
            num += g[(i, a)] * riemann(a, j, i, j);
        }
        num / (g[(i, i)] * g[(j, j)] - g[(i, j)] * g[(i, j)])
    };
    let mut scalar = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            for d in 0..3 {
                scalar += ginv[(b, d)] * riemann(a, b, a, d);
            }
        }
    }
    Ok(Curvatures {
        k12: sectional(0, 1),
        k13: sectional(0, 2),
        k23: sectional(1, 2),
        scalar,
    })
}

/// Closed-form curvatures, or `None` where no formula is known.
pub fn closed_curvature(chart: Chart, kind: Kind, x: [f64; 3], p: &SpaceParams) -> Result<Option<Curvatures>> {
    let z = p.z;
    Ok(Some(match (kind, chart) {
        (Kind::Cc, _) => Curvatures {
            k12: z,
            k13: z,
            k23: z,
            scalar: 6.0 * z,
        },
        (Kind::Nc, Chart::BeltramiLike) => {
            let a = x.map(|q| q * q);
            let q2 = a[0] + a[1] + a[2];
            let pre = 0.25 * z * (-z * q2).exp();
            let e3 = (2.0 * z * a[2]).exp();
            let e23 = (2.0 * z * (a[1] + a[2])).exp();
            let e = (2.0 * z * q2).exp();
            Curvatures {
                k12: pre * (1.0 + e3 - 2.0 * e),
                k13: pre * (2.0 - e3 + e23 - 2.0 * e),
                k23: pre * (2.0 - e23 - e),
                scalar: -5.0 * z * (z * q2).sinh(),
            }
        }
        (Kind::Nc, polar) => {
            // z S_{-z}(ρ)² / C_{-z}(ρ), written through r on the constant-curvature chart
            let ratio = if polar == Chart::PolarVariable {
                let s = skappa(-z, x[0]);
                z * s * s / ckappa(-z, x[0])
            } else {
                let t = tkappa(z, x[0])?;
                z * t * t * ckappa(z, x[0])
            };
            let k12 = -0.5 * z * ratio;
            Curvatures {
                k12,
                k13: k12,
                k23: 0.5 * k12,
                scalar: 5.0 * k12,
            }
        }
    }))
}

pub fn curvature(chart: Chart, kind: Kind, x: [f64; 3], p: &SpaceParams) -> Result<CurvatureReport> {
    Ok(CurvatureReport {
        numeric: numeric_curvature(chart, kind, x, p)?,
        closed: closed_curvature(chart, kind, x, p)?,
    })
}
