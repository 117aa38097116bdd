//! Constants of motion of each family, in any chart the family supports.
//!
//! On the polar charts the coalgebra Casimirs read
//!
//! ```text
//! C2 = p_φ²     C2mid = (cos φ p_θ - sin φ (C_κ2(θ)/S_κ2(θ)) p_φ)²     C3 = p_θ² + p_φ²/S_κ2(θ)²
//! ```
//!
//! and on the Beltrami-like chart they are `4C12`, `4κ2 C23` and `4κ2 C123`.
//! The free constant-curvature motion adds `I2 = J03²`; the constant-curvature
//! Kepler system adds the three components of the Runge–Lenz vector.

use crate::coalgebra::casimirs;
use crate::error::{Error, Result};
use crate::kernel::{ckappa, Dual, Scalar};
use crate::observable::Observable;
use crate::spaces::hamiltonian::{angular, radial_sine};
use crate::spaces::{transport, Family, HamiltonianSpec, SpaceParams};
use crate::state::Chart;
use crate::symmetry::{lrl, so4_generators};

/// Named observables, in a fixed order.
#[derive(Debug, Clone, Default)]
pub struct ConstantSet {
    pub entries: Vec<(String, Observable)>,
}

impl ConstantSet {
    pub fn get(&self, name: &str) -> Option<&Observable> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, o)| o)
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn observables(&self) -> Vec<Observable> {
        self.entries.iter().map(|(_, o)| o.clone()).collect()
    }

    fn push(&mut self, name: &str, o: Observable) {
        self.entries.push((name.to_string(), o.renamed(name)));
    }
}

pub(crate) fn polar_casimirs(p: SpaceParams, chart: Chart) -> [Observable; 3] {
    let c = Some(chart);
    let k2 = p.kappa2;
    let c2 = Observable::new("C2", c, |x: &[Dual; 6]| Ok(x[5] * x[5]));
    let c2mid = Observable::new("C2mid", c, move |x: &[Dual; 6]| {
        let s2 = radial_sine(k2, x[1])?;
        let v = x[2].cos() * x[4] - x[2].sin() * (ckappa(k2, x[1]) / s2) * x[5];
        Ok(v * v)
    });
    let c3 = Observable::new("C3", c, move |x: &[Dual; 6]| angular(k2, x));
    [c2, c2mid, c3]
}

fn beltrami_casimirs(p: SpaceParams) -> [Observable; 3] {
    let set = casimirs(p.z);
    [
        set.c12.scaled(4.0),
        set.c23.scaled(4.0 * p.kappa2),
        set.c123.scaled(4.0 * p.kappa2),
    ]
}

pub fn constants(spec: &HamiltonianSpec, chart: Chart) -> Result<ConstantSet> {
    if !spec.family.supports(chart) {
        return Err(Error::UnsupportedChart {
            chart,
            what: format!("constants of {}", spec.family.name()),
        });
    }
    let p = spec.params;
    let [c2, c2mid, c3] = match chart {
        Chart::BeltramiLike => beltrami_casimirs(p),
        polar => polar_casimirs(p, polar),
    };
    let mut set = ConstantSet::default();
    set.push("C2", c2);
    set.push("C2mid", c2mid);
    set.push("C3", c3);
    match spec.family {
        Family::FreeCC => {
            let g = so4_generators(&p);
            set.push("I2", transport(&g.j03.square(), &p, chart)?);
        }
        Family::KeplerCC => {
            let l = lrl(&p);
            set.push("L1", transport(&l.l1, &p, chart)?);
            set.push("L2", transport(&l.l2, &p, chart)?);
            set.push("L3", transport(&l.l3, &p, chart)?);
        }
        _ => {}
    }
    Ok(set)
}
