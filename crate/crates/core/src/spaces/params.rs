use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coupling used by the presets: `k = 2√2 γ = 1`.
pub const DEFAULT_GAMMA: f64 = 0.353_553_390_593_273_8;

/// Curvature and coupling parameters shared by every family.
///
/// `z = κ1` is the deformation (the constant curvature of the `cc` family),
/// `kappa2 = κ2` fixes the signature (Riemannian for κ2 > 0, Lorentzian for
/// κ2 < 0) and `gamma` is the Kepler coupling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceParams {
    pub z: f64,
    pub kappa2: f64,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
}

fn default_gamma() -> f64 {
    DEFAULT_GAMMA
}

impl SpaceParams {
    pub fn new(z: f64, kappa2: f64, gamma: f64) -> Result<Self> {
        let p = SpaceParams { z, kappa2, gamma };
        p.validate()?;
        Ok(p)
    }

    /// Parameters with the coupling given as `k` instead of `γ`.
    pub fn with_k(z: f64, kappa2: f64, k: f64) -> Result<Self> {
        Self::new(z, kappa2, k / (2.0 * std::f64::consts::SQRT_2))
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.z.is_finite() && self.kappa2.is_finite() && self.gamma.is_finite()) {
            return Err(Error::InvalidParams("parameters must be finite".into()));
        }
        if self.kappa2 == 0.0 {
            return Err(Error::InvalidParams(
                "kappa2 = 0 gives a degenerate metric".into(),
            ));
        }
        Ok(())
    }

    /// Kepler coupling `k = 2√2 γ`.
    pub fn k(&self) -> f64 {
        2.0 * std::f64::consts::SQRT_2 * self.gamma
    }

    pub fn is_riemannian(&self) -> bool {
        self.kappa2 > 0.0
    }
}

/// The six constant-curvature spaces, labelled by `(κ1, κ2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Spherical,
    Euclidean,
    Hyperbolic,
    AntiDeSitter,
    Minkowski,
    DeSitter,
}

impl Preset {
    pub const ALL: [Preset; 6] = [
        Preset::Spherical,
        Preset::Euclidean,
        Preset::Hyperbolic,
        Preset::AntiDeSitter,
        Preset::Minkowski,
        Preset::DeSitter,
    ];

    pub fn kappas(self) -> (f64, f64) {
        match self {
            Preset::Spherical => (1.0, 1.0),
            Preset::Euclidean => (0.0, 1.0),
            Preset::Hyperbolic => (-1.0, 1.0),
            Preset::AntiDeSitter => (1.0, -1.0),
            Preset::Minkowski => (0.0, -1.0),
            Preset::DeSitter => (-1.0, -1.0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::Spherical => "spherical",
            Preset::Euclidean => "euclidean",
            Preset::Hyperbolic => "hyperbolic",
            Preset::AntiDeSitter => "antidesitter",
            Preset::Minkowski => "minkowski",
            Preset::DeSitter => "desitter",
        }
    }

    pub fn params(self) -> SpaceParams {
        let (z, kappa2) = self.kappas();
        SpaceParams {
            z,
            kappa2,
            gamma: DEFAULT_GAMMA,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == key)
            .ok_or_else(|| Error::InvalidParams(format!("unknown preset '{s}'")))
    }
}
