//! Curvature-labelled trigonometry.
//!
//! `C_κ`, `S_κ`, `T_κ` interpolate the circular (κ > 0), parabolic (κ = 0) and
//! hyperbolic (κ < 0) functions, so a real label κ = λ² stands in for λ ∈ {1, 0, i}
//! without any complex arithmetic:
//!
//! ```text
//! C_κ(x) = cos(√κ x)         S_κ(x) = sin(√κ x)/√κ        κ > 0
//!        = 1                        = x                   κ = 0
//!        = cosh(√-κ x)              = sinh(√-κ x)/√-κ     κ < 0
//! ```
//!
//! They satisfy `C_κ² + κ S_κ² = 1`, `S_κ' = C_κ` and `C_κ' = -κ S_κ`.
//!
//! Every function here is generic over [`Scalar`], so the same code path
//! produces values, gradients and Hessians. Removable singularities are handled
//! by polynomial branches, which differentiate exactly like everything else.

use super::Scalar;
use crate::error::{Error, Result};

/// `|κ| x²` below which `S_κ` and the inverse functions switch to their Taylor series.
pub const TAYLOR_SWITCH: f64 = 1e-8;

/// `|T_κ|` is undefined once `|C_κ|` drops below this.
pub const POLE_EPS: f64 = 1e-14;

pub fn ckappa<S: Scalar>(kappa: f64, x: S) -> S {
    if kappa > 0.0 {
        (x * kappa.sqrt()).cos()
    } else if kappa < 0.0 {
        (x * (-kappa).sqrt()).cosh()
    } else {
        S::cst(1.0)
    }
}

pub fn skappa<S: Scalar>(kappa: f64, x: S) -> S {
    let xr = x.re();
    if kappa.abs() * xr * xr < TAYLOR_SWITCH {
        let x2 = x.sq();
        // x - κx³/6 + κ²x⁵/120
        x * (x2 * (x2 * (kappa * kappa / 120.0) - kappa / 6.0) + 1.0)
    } else if kappa > 0.0 {
        let s = kappa.sqrt();
        (x * s).sin() / s
    } else {
        let s = (-kappa).sqrt();
        (x * s).sinh() / s
    }
}

pub fn tkappa<S: Scalar>(kappa: f64, x: S) -> Result<S> {
    let c = ckappa(kappa, x);
    if c.re().abs() < POLE_EPS {
        return Err(Error::Pole {
            kappa,
            x: x.re(),
        });
    }
    Ok(skappa(kappa, x) / c)
}

/// Inverse of `S_κ` on the branch through the origin.
pub fn arc_skappa<S: Scalar>(kappa: f64, y: S) -> Result<S> {
    let yr = y.re();
    if kappa.abs() * yr * yr < TAYLOR_SWITCH {
        let y2 = y.sq();
        // y + κy³/6 + 3κ²y⁵/40
        Ok(y * (y2 * (y2 * (3.0 * kappa * kappa / 40.0) + kappa / 6.0) + 1.0))
    } else if kappa > 0.0 {
        let s = kappa.sqrt();
        if (s * yr).abs() > 1.0 {
            return Err(Error::Domain(format!(
                "S_kappa inverse out of range: kappa={kappa}, y={yr}"
            )));
        }
        Ok((y * s).asin() / s)
    } else {
        let s = (-kappa).sqrt();
        Ok((y * s).asinh() / s)
    }
}

/// Inverse of `T_κ` on the branch through the origin.
pub fn arc_tkappa<S: Scalar>(kappa: f64, y: S) -> Result<S> {
    let yr = y.re();
    if kappa.abs() * yr * yr < TAYLOR_SWITCH {
        let y2 = y.sq();
        // y - κy³/3 + κ²y⁵/5
        Ok(y * (y2 * (y2 * (kappa * kappa / 5.0) - kappa / 3.0) + 1.0))
    } else if kappa > 0.0 {
        let s = kappa.sqrt();
        Ok((y * s).atan() / s)
    } else {
        let s = (-kappa).sqrt();
        if (s * yr).abs() >= 1.0 {
            return Err(Error::Domain(format!(
                "T_kappa inverse out of range: kappa={kappa}, y={yr}"
            )));
        }
        Ok((y * s).atanh() / s)
    }
}

/// `sinh(u)/u`, continuous through `u = 0`.
pub fn sinhc<S: Scalar>(u: S) -> S {
    if u.re().abs() < 1e-2 {
        let u2 = u.sq();
        // 1 + u²/6 + u⁴/120 + u⁶/5040 + u⁸/362880
        u2 * (u2 * (u2 * (u2 / 362_880.0 + 1.0 / 5040.0) + 1.0 / 120.0) + 1.0 / 6.0) + 1.0
    } else {
        u.sinh() / u
    }
}

/// `(e^u - 1)/u`, continuous through `u = 0`.
pub fn exprel<S: Scalar>(u: S) -> S {
    if u.re().abs() < 1e-2 {
        // 1 + u/2 + u²/6 + u³/24 + u⁴/120 + u⁵/720 + u⁶/5040
        u * (u * (u * (u * (u * (u / 5040.0 + 1.0 / 720.0) + 1.0 / 120.0) + 1.0 / 24.0)
            + 1.0 / 6.0)
            + 0.5)
            + 1.0
    } else {
        u.exp_m1() / u
    }
}

/// `ln(1 + u)/u`, continuous through `u = 0`.
pub fn log1prel<S: Scalar>(u: S) -> S {
    if u.re().abs() < 1e-3 {
        // 1 - u/2 + u²/3 - u³/4 + u⁴/5 - u⁵/6
        u * (u * (u * (u * (u * (-1.0 / 6.0) + 0.2) - 0.25) + 1.0 / 3.0) - 0.5) + 1.0
    } else {
        u.ln_1p() / u
    }
}
