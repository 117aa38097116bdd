//! Position maps between the three charts and the induced momentum transport.
//!
//! ```text
//! Beltrami (q)  ──►  flat-like x  ──►  polar variable (ρ, θ, φ)  ──►  polar constant (r, θ, φ)
//!
//! x1 = q1 √(2·exprel(2z q1²))                 Σ x² = (e^{2z q²} - 1)/z = S_{-z}(ρ)²
//! x2 = q2 √(e^{2z q1²}·2·exprel(2z q2²))      x3 = S_{-z}(ρ) C_κ2(θ)
//! x3 = q3 √(e^{2z(q1²+q2²)}·2·exprel(2z q3²)) x2 = S_{-z}(ρ) √κ2 S_κ2(θ) cos φ
//!                                             x1 = S_{-z}(ρ) √κ2 S_κ2(θ) sin φ
//! S_{-z}(ρ) = T_z(r),   C_{-z}(ρ) = 1/C_z(r)
//! ```
//!
//! The signs of `q` follow the octant of `(θ, φ)`, so the maps are one-to-one
//! away from the coordinate planes of the polar chart. Momenta transform by
//! `p_new = w·(∂q_old/∂q_new)ᵀ p_old` with the Jacobian taken by nested dual
//! numbers; `w = 2` from the Beltrami chart to either polar chart, `1/2` back,
//! and `1` between the two polar charts. With that weight the Hamiltonians of
//! every chart agree in value, and the pullback of the canonical bracket
//! picks up the same factor.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::kernel::{
    arc_skappa, arc_tkappa, ckappa, exprel, log1prel, skappa, tkappa, Dual, Scalar,
};
use crate::observable::Observable;
use crate::spaces::SpaceParams;
use crate::state::{Chart, PhaseState};

/// Chart-domain guard on `ρ`, `S_z(r)` and the polar-axis factor.
pub const CHART_EPS: f64 = 1e-8;

fn momentum_weight(c: Chart) -> f64 {
    if c.is_polar() {
        2.0
    } else {
        1.0
    }
}

fn require_beltrami_domain(params: &SpaceParams) -> Result<()> {
    if params.kappa2 > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "the Beltrami-like chart has no real polar image for kappa2 = {}",
            params.kappa2
        )))
    }
}

pub fn beltrami_to_flat<S: Scalar>(z: f64, q: [S; 3]) -> [S; 3] {
    let a = q.map(|v| v * v);
    let w1 = exprel(a[0] * (2.0 * z)) * 2.0;
    let w2 = (a[0] * (2.0 * z)).exp() * exprel(a[1] * (2.0 * z)) * 2.0;
    let w3 = ((a[0] + a[1]) * (2.0 * z)).exp() * exprel(a[2] * (2.0 * z)) * 2.0;
    [q[0] * w1.sqrt(), q[1] * w2.sqrt(), q[2] * w3.sqrt()]
}

pub fn flat_to_beltrami<S: Scalar>(z: f64, x: [S; 3]) -> Result<[S; 3]> {
    let x1s = x[0] * x[0];
    let x2s = x[1] * x[1];
    let d2 = x1s * z + 1.0;
    let d3 = (x1s + x2s) * z + 1.0;
    if d2.re() <= 0.0 || d3.re() <= 0.0 {
        return Err(Error::Domain("point lies beyond the Beltrami chart".into()));
    }
    let inv = |x: S, d: S| {
        let xs = x / d.sqrt();
        let w = xs * xs;
        xs * (log1prel(w * z) * 0.5).sqrt()
    };
    let q = [
        inv(x[0], S::cst(1.0)),
        inv(x[1], d2),
        inv(x[2], d3),
    ];
    if q.iter().any(|v| !v.re().is_finite()) {
        return Err(Error::Domain("point lies beyond the Beltrami chart".into()));
    }
    Ok(q)
}

pub fn flat_to_polar<S: Scalar>(params: &SpaceParams, x: [S; 3]) -> Result<[S; 3]> {
    require_beltrami_domain(params)?;
    let axial = x[0] * x[0] + x[1] * x[1];
    let u2 = axial + x[2] * x[2];
    if u2.re().sqrt() < CHART_EPS {
        return Err(Error::Singularity("origin of the polar chart (rho = 0)".into()));
    }
    if axial.re().sqrt() < CHART_EPS * u2.re().sqrt() {
        return Err(Error::Singularity("polar axis (sin(lambda2 theta) = 0)".into()));
    }
    let rho = arc_skappa(-params.z, u2.sqrt())?;
    let theta = axial.sqrt().atan2(x[2]) / params.kappa2.sqrt();
    let mut phi = x[0].atan2(x[1]);
    if phi.re() < 0.0 {
        phi = phi + TAU;
    }
    Ok([rho, theta, phi])
}

pub fn polar_to_flat<S: Scalar>(params: &SpaceParams, y: [S; 3]) -> Result<[S; 3]> {
    require_beltrami_domain(params)?;
    let u = skappa(-params.z, y[0]);
    let l2 = params.kappa2.sqrt();
    let s2 = skappa(params.kappa2, y[1]) * l2;
    let c2 = ckappa(params.kappa2, y[1]);
    Ok([u * s2 * y[2].sin(), u * s2 * y[2].cos(), u * c2])
}

/// `r = arcT_z(S_{-z}(ρ))`.
pub fn rho_to_r<S: Scalar>(z: f64, rho: S) -> Result<S> {
    arc_tkappa(z, skappa(-z, rho))
}

/// `ρ = arcS_{-z}(T_z(r))`; needs `C_z(r) > 0`.
pub fn r_to_rho<S: Scalar>(z: f64, r: S) -> Result<S> {
    if ckappa(z, r).re() <= 0.0 {
        return Err(Error::Domain(format!(
            "r = {} is beyond the hemisphere covered by the variable-curvature chart",
            r.re()
        )));
    }
    arc_skappa(-z, tkappa(z, r)?)
}

/// Positions of `to` as functions of the positions of `from`.
pub fn positions<S: Scalar>(from: Chart, to: Chart, params: &SpaceParams, q: [S; 3]) -> Result<[S; 3]> {
    use Chart::*;
    let z = params.z;
    match (from, to) {
        (a, b) if a == b => Ok(q),
        (BeltramiLike, PolarVariable) => flat_to_polar(params, beltrami_to_flat(z, q)),
        (PolarVariable, BeltramiLike) => flat_to_beltrami(z, polar_to_flat(params, q)?),
        (PolarVariable, PolarConstant) => Ok([rho_to_r(z, q[0])?, q[1], q[2]]),
        (PolarConstant, PolarVariable) => Ok([r_to_rho(z, q[0])?, q[1], q[2]]),
        (BeltramiLike, PolarConstant) => {
            let v = positions(BeltramiLike, PolarVariable, params, q)?;
            positions(PolarVariable, PolarConstant, params, v)
        }
        (PolarConstant, BeltramiLike) => {
            let v = positions(PolarConstant, PolarVariable, params, q)?;
            positions(PolarVariable, BeltramiLike, params, v)
        }
        _ => unreachable!(),
    }
}

/// Full phase-space transport of raw coordinates from chart `from` to `to`.
pub fn transform<S: Scalar>(from: Chart, to: Chart, params: &SpaceParams, x: &[S; 6]) -> Result<[S; 6]> {
    if from == to {
        return Ok(*x);
    }
    let q_to = positions(from, to, params, [x[0], x[1], x[2]])?;
    let seeds: [Dual<S>; 3] = std::array::from_fn(|i| Dual::variable(q_to[i], i));
    let back = positions(to, from, params, seeds)?;
    let w = momentum_weight(to) / momentum_weight(from);
    let mut out = [q_to[0], q_to[1], q_to[2], S::cst(0.0), S::cst(0.0), S::cst(0.0)];
    for i in 0..3 {
        let mut p = S::cst(0.0);
        for (a, b) in back.iter().enumerate() {
            p = p + b.eps[i] * x[3 + a];
        }
        out[3 + i] = p * w;
    }
    if out.iter().any(|v| !v.re().is_finite()) {
        return Err(Error::Singularity(format!("chart map {from:?} -> {to:?} degenerates here")));
    }
    Ok(out)
}

/// Moves a state into chart `target`.
pub fn convert(s: &PhaseState, params: &SpaceParams, target: Chart) -> Result<PhaseState> {
    if s.chart != target && (s.chart == Chart::BeltramiLike || target == Chart::BeltramiLike) {
        require_beltrami_domain(params)?;
    }
    Ok(PhaseState::new(target, transform(s.chart, target, params, &s.coords)?))
}

pub fn to_polar(s: &PhaseState, params: &SpaceParams, target: Chart) -> Result<PhaseState> {
    if s.chart != Chart::BeltramiLike {
        return Err(Error::ChartMismatch {
            expected: Chart::BeltramiLike,
            got: s.chart,
        });
    }
    if !target.is_polar() {
        return Err(Error::InvalidArgument("to_polar needs a polar target chart".into()));
    }
    convert(s, params, target)
}

pub fn from_polar(s: &PhaseState, params: &SpaceParams) -> Result<PhaseState> {
    if !s.chart.is_polar() {
        return Err(Error::InvalidArgument("from_polar needs a polar state".into()));
    }
    convert(s, params, Chart::BeltramiLike)
}

/// `f` re-expressed on chart `to`, i.e. `f ∘ T` with `T` the map from `to`
/// into the chart of `f`. Chart-free observables are returned unchanged.
pub fn transport(f: &Observable, params: &SpaceParams, to: Chart) -> Result<Observable> {
    let from = match f.chart() {
        None => return Ok(f.clone()),
        Some(c) if c == to => return Ok(f.clone()),
        Some(c) => c,
    };
    if from == Chart::BeltramiLike || to == Chart::BeltramiLike {
        require_beltrami_domain(params)?;
    }
    let inner = f.clone();
    let params = *params;
    Ok(Observable::new(f.name().to_string(), Some(to), move |x| {
        let y = transform::<Dual>(to, from, &params, x)?;
        inner.eval_dual(&y)
    }))
}
