use serde::{Deserialize, Serialize};

/// Coordinate chart of the six-dimensional phase space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Chart {
    /// `(q1, q2, q3, p1, p2, p3)`, the chart the coalgebra realization lives on.
    BeltramiLike,
    /// `(ρ, θ, φ, p_ρ, p_θ, p_φ)`, geodesic polar chart of the variable-curvature family.
    PolarVariable,
    /// `(r, θ, φ, p_r, p_θ, p_φ)`, geodesic polar chart of the constant-curvature family.
    PolarConstant,
}

impl Chart {
    pub fn coordinate_names(self) -> [&'static str; 6] {
        match self {
            Chart::BeltramiLike => ["q1", "q2", "q3", "p1", "p2", "p3"],
            Chart::PolarVariable => ["rho", "theta", "phi", "p_rho", "p_theta", "p_phi"],
            Chart::PolarConstant => ["r", "theta", "phi", "p_r", "p_theta", "p_phi"],
        }
    }

    pub fn is_polar(self) -> bool {
        !matches!(self, Chart::BeltramiLike)
    }

    pub fn name(self) -> &'static str {
        match self {
            Chart::BeltramiLike => "beltrami-like",
            Chart::PolarVariable => "polar-variable",
            Chart::PolarConstant => "polar-constant",
        }
    }
}

impl std::str::FromStr for Chart {
    type Err = crate::error::Error;

    /// Accepts the kebab-case names and the short forms `beltrami`, `pv`, `pc`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "beltrami-like" | "beltrami" => Ok(Chart::BeltramiLike),
            "polar-variable" | "pv" => Ok(Chart::PolarVariable),
            "polar-constant" | "pc" => Ok(Chart::PolarConstant),
            _ => Err(crate::error::Error::InvalidArgument(format!("unknown chart '{s}'"))),
        }
    }
}

/// A phase-space point tagged with the chart its coordinates refer to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseState {
    pub chart: Chart,
    pub coords: [f64; 6],
}

impl PhaseState {
    pub fn new(chart: Chart, coords: [f64; 6]) -> Self {
        PhaseState { chart, coords }
    }

    pub fn beltrami(q: [f64; 3], p: [f64; 3]) -> Self {
        Self::from_parts(Chart::BeltramiLike, q, p)
    }

    pub fn from_parts(chart: Chart, q: [f64; 3], p: [f64; 3]) -> Self {
        PhaseState {
            chart,
            coords: [q[0], q[1], q[2], p[0], p[1], p[2]],
        }
    }

    pub fn positions(&self) -> [f64; 3] {
        [self.coords[0], self.coords[1], self.coords[2]]
    }

    pub fn momenta(&self) -> [f64; 3] {
        [self.coords[3], self.coords[4], self.coords[5]]
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }
}
