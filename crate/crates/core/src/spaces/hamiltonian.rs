//! The free and Kepler Hamiltonian families in every chart.
//!
//! All Hamiltonians use the doubled normalization `H = 2ℋ`. In the
//! Beltrami-like chart they are functions of the three-site generators:
//!
//! ```text
//! free, variable curvature    H = J+
//! free, constant curvature    H = J+ e^{z J-}
//! Kepler, variable curvature  H = J+ - 2γ √(2/E(J-)) e^{2z J-}
//! Kepler, constant curvature  H = J+ e^{z J-} - 2γ √(2/E(J-))
//! E(x) = (e^{2zx} - 1)/z
//! ```
//!
//! and in the geodesic polar charts (`κ1 = z`, `S2 = S_κ2(θ)`):
//!
//! ```text
//! H_cc = ½(p_r² + (p_θ² + p_φ²/S2²)/(κ2 S_z(r)²)) - k C_z(r)/S_z(r)
//! H_nc = ½ C_{-z}(ρ) (p_ρ² + (p_θ² + p_φ²/S2²)/(κ2 S_{-z}(ρ)²) - 2k C_{-z}(ρ)/S_{-z}(ρ))
//! ```

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coalgebra::three_site;
use crate::error::{Error, Result};
use crate::kernel::{ckappa, exprel, skappa, Dual, Scalar};
use crate::observable::Observable;
use crate::spaces::charts::CHART_EPS;
use crate::spaces::SpaceParams;
use crate::state::Chart;

/// Distance to a chart degeneracy at which integration stops.
pub const GUARD_EPS: f64 = 1e-6;

type ProfileFn = dyn Fn(Dual) -> Dual + Send + Sync;
type PotentialFn = dyn Fn(f64, Dual) -> Dual + Send + Sync;

/// `ℋ = ½ J+ f(z J-) + U(z, J-)` for user-supplied `f` and `U`.
#[derive(Clone)]
pub struct CustomFamily {
    pub name: String,
    f: Arc<ProfileFn>,
    u: Arc<PotentialFn>,
}

impl fmt::Debug for CustomFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomFamily").field("name", &self.name).finish()
    }
}

impl CustomFamily {
    pub fn new<F, U>(name: impl Into<String>, f: F, u: U) -> Self
    where
        F: Fn(Dual) -> Dual + Send + Sync + 'static,
        U: Fn(f64, Dual) -> Dual + Send + Sync + 'static,
    {
        CustomFamily {
            name: name.into(),
            f: Arc::new(f),
            u: Arc::new(u),
        }
    }

    /// Checks `f(z J-) → 1` and `U → -γ/√J-` as `z → 0`, comparing `z = 1e-10` with `z = 0`.
    pub fn check_flat_limit(&self, gamma: f64) -> Result<()> {
        for jm in [0.05, 0.3, 1.0, 2.5, 7.0] {
            let x = Dual::constant(jm);
            for z in [0.0, 1e-10] {
                let f = (self.f)(x * z).re;
                if (f - 1.0).abs() > 1e-8 {
                    return Err(Error::InvalidParams(format!(
                        "{}: f(z J-) = {f} at z = {z}, J- = {jm}; the flat limit needs 1",
                        self.name
                    )));
                }
                let u = (self.u)(z, x).re;
                let target = -gamma / jm.sqrt();
                if (u - target).abs() > 1e-8 * target.abs().max(1.0) {
                    return Err(Error::InvalidParams(format!(
                        "{}: U = {u} at z = {z}, J- = {jm}; the flat limit needs {target}",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub enum Family {
    FreeNC,
    FreeCC,
    KeplerNC,
    KeplerCC,
    Custom(CustomFamily),
}

/// Serializable name of the four closed-form families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    FreeNc,
    FreeCc,
    KeplerNc,
    KeplerCc,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::FreeNc,
        FamilyKind::FreeCc,
        FamilyKind::KeplerNc,
        FamilyKind::KeplerCc,
    ];

    pub fn family(self) -> Family {
        match self {
            FamilyKind::FreeNc => Family::FreeNC,
            FamilyKind::FreeCc => Family::FreeCC,
            FamilyKind::KeplerNc => Family::KeplerNC,
            FamilyKind::KeplerCc => Family::KeplerCC,
        }
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        match key.as_str() {
            "freenc" => Ok(FamilyKind::FreeNc),
            "freecc" => Ok(FamilyKind::FreeCc),
            "keplernc" => Ok(FamilyKind::KeplerNc),
            "keplercc" => Ok(FamilyKind::KeplerCc),
            _ => Err(Error::InvalidArgument(format!("unknown family '{s}'"))),
        }
    }
}

impl Family {
    pub fn name(&self) -> &str {
        match self {
            Family::FreeNC => "free-nc",
            Family::FreeCC => "free-cc",
            Family::KeplerNC => "kepler-nc",
            Family::KeplerCC => "kepler-cc",
            Family::Custom(c) => &c.name,
        }
    }

    pub fn is_kepler(&self) -> bool {
        matches!(self, Family::KeplerNC | Family::KeplerCC)
    }

    /// The geodesic polar chart with a closed form, if any.
    pub fn polar_chart(&self) -> Option<Chart> {
        match self {
            Family::FreeNC | Family::KeplerNC => Some(Chart::PolarVariable),
            Family::FreeCC | Family::KeplerCC => Some(Chart::PolarConstant),
            Family::Custom(_) => None,
        }
    }

    pub fn supports(&self, chart: Chart) -> bool {
        chart == Chart::BeltramiLike || self.polar_chart() == Some(chart)
    }
}

#[derive(Debug, Clone)]
pub struct HamiltonianSpec {
    pub family: Family,
    pub params: SpaceParams,
}

impl HamiltonianSpec {
    pub fn new(family: Family, params: SpaceParams) -> Result<Self> {
        params.validate()?;
        if let Family::Custom(c) = &family {
            c.check_flat_limit(params.gamma)?;
        }
        Ok(HamiltonianSpec { family, params })
    }

    /// Coupling actually entering the Hamiltonian (zero for free motion).
    pub fn coupling(&self) -> f64 {
        if self.family.is_kepler() {
            self.params.k()
        } else {
            0.0
        }
    }
}

/// Kepler factor `√(2/E(x))`, with `E(x) = 2x·exprel(2zx)`.
fn kepler_root<S: Scalar>(z: f64, x: S) -> S {
    (exprel(x * (2.0 * z)) * x).sqrt().recip()
}

pub(crate) fn angular<S: Scalar>(kappa2: f64, x: &[S; 6]) -> Result<S> {
    let s2 = skappa(kappa2, x[1]);
    if s2.re().abs() < CHART_EPS {
        return Err(Error::Singularity("polar axis (S_kappa2(theta) = 0)".into()));
    }
    Ok(x[4] * x[4] + x[5] * x[5] / (s2 * s2))
}

pub(crate) fn radial_sine<S: Scalar>(kappa: f64, x: S) -> Result<S> {
    let s = skappa(kappa, x);
    if s.re().abs() < CHART_EPS {
        return Err(Error::Singularity("pole of the polar chart (S = 0)".into()));
    }
    Ok(s)
}

/// `H_cc` on the constant-curvature polar chart.
pub fn h_polar_constant<S: Scalar>(p: &SpaceParams, k: f64, x: &[S; 6]) -> Result<S> {
    let s1 = radial_sine(p.z, x[0])?;
    let c1 = ckappa(p.z, x[0]);
    let ang = angular(p.kappa2, x)?;
    Ok((x[3] * x[3] + ang / (s1 * s1 * p.kappa2)) * 0.5 - c1 / s1 * k)
}

/// `H_nc` on the variable-curvature polar chart.
pub fn h_polar_variable<S: Scalar>(p: &SpaceParams, k: f64, x: &[S; 6]) -> Result<S> {
    let s = radial_sine(-p.z, x[0])?;
    let c = ckappa(-p.z, x[0]);
    let ang = angular(p.kappa2, x)?;
    Ok(c * (x[3] * x[3] + ang / (s * s * p.kappa2) - c / s * (2.0 * k)) * 0.5)
}

fn polar_guard(chart: Chart, p: SpaceParams) -> impl Fn(&[f64; 6]) -> Option<String> + Send + Sync {
    move |x: &[f64; 6]| {
        let (kappa, label) = match chart {
            Chart::PolarConstant => (p.z, "S_z(r)"),
            _ => (-p.z, "S_-z(rho)"),
        };
        if skappa(kappa, x[0]).abs() < GUARD_EPS {
            return Some(format!("{label} vanishes: radial coordinate {} reached the pole", x[0]));
        }
        if chart == Chart::PolarVariable && ckappa(-p.z, x[0]).abs() < GUARD_EPS {
            return Some(format!("C_-z(rho) vanishes at rho = {}", x[0]));
        }
        if skappa(p.kappa2, x[1]).abs() < GUARD_EPS {
            return Some(format!("theta = {} reached the polar axis", x[1]));
        }
        None
    }
}

/// The Hamiltonian of `spec` on `chart`, in the doubled normalization.
pub fn hamiltonian(spec: &HamiltonianSpec, chart: Chart) -> Result<Observable> {
    let fam = &spec.family;
    if !fam.supports(chart) {
        return Err(Error::UnsupportedChart {
            chart,
            what: format!("the {} Hamiltonian", fam.name()),
        });
    }
    let p = spec.params;
    let z = p.z;
    let k = spec.coupling();
    let gamma2 = 2.0 * p.gamma;
    let name = format!("H[{}]", fam.name());

    if chart != Chart::BeltramiLike {
        let eval = move |x: &[Dual; 6]| match chart {
            Chart::PolarConstant => h_polar_constant(&p, k, x),
            _ => h_polar_variable(&p, k, x),
        };
        return Ok(Observable::new(name, Some(chart), eval).with_guard(polar_guard(chart, p)));
    }

    let r = three_site(z);
    let (jm, jp) = (r.jminus, r.jplus);
    let h = match fam.clone() {
        Family::FreeNC => jp.renamed(name),
        Family::FreeCC => jp.zip(&jm, name, move |a, m| a * (m * z).exp()),
        Family::KeplerNC => jp.zip(&jm, name, move |a, m| {
            a - kepler_root(z, m) * (m * (2.0 * z)).exp() * gamma2
        }),
        Family::KeplerCC => jp.zip(&jm, name, move |a, m| {
            a * (m * z).exp() - kepler_root(z, m) * gamma2
        }),
        Family::Custom(c) => jp.zip(&jm, name, move |a, m| {
            a * (c.f)(m * z) + (c.u)(z, m) * 2.0
        }),
    };
    Ok(h)
}
