//! Generators of so_{κ1,κ2}(4) on the constant-curvature polar chart.
//!
//! With `κ1 = z`, `C1/S1 = C_z(r)/S_z(r)`, `S2 = S_κ2(θ)`, `C2 = C_κ2(θ)`:
//!
//! ```text
//! J01 = C2 p_r - S2 (C1/S1) p_θ
//! J02 = κ2 S2 cos φ p_r + C2 cos φ (C1/S1) p_θ - sin φ (C1/S1)/S2 p_φ
//! J03 = κ2 S2 sin φ p_r + C2 sin φ (C1/S1) p_θ + cos φ (C1/S1)/S2 p_φ
//! J12 = cos φ p_θ - sin φ (C2/S2) p_φ
//! J13 = sin φ p_θ + cos φ (C2/S2) p_φ
//! J23 = p_φ
//! ```

use crate::error::Result;
use crate::kernel::{ckappa, Dual, Scalar};
use crate::observable::Observable;
use crate::report::{run_group, BracketReport, Check};
use crate::sampling;
use crate::spaces::hamiltonian::{radial_sine, GUARD_EPS};
use crate::spaces::{hamiltonian, Family, HamiltonianSpec, SpaceParams};
use crate::symmetry::constants::polar_casimirs;
use crate::state::Chart;

const CHART: Option<Chart> = Some(Chart::PolarConstant);

/// Trigonometric factors shared by all generator formulas.
pub(crate) struct Frame<S> {
    pub cot1: S,
    pub s2: S,
    pub c2: S,
    pub cf: S,
    pub sf: S,
}

pub(crate) fn frame<S: Scalar>(p: &SpaceParams, x: &[S; 6]) -> Result<Frame<S>> {
    let s1 = radial_sine(p.z, x[0])?;
    Ok(Frame {
        cot1: ckappa(p.z, x[0]) / s1,
        s2: radial_sine(p.kappa2, x[1])?,
        c2: ckappa(p.kappa2, x[1]),
        cf: x[2].cos(),
        sf: x[2].sin(),
    })
}

fn polar_guard(p: SpaceParams) -> impl Fn(&[f64; 6]) -> Option<String> + Send + Sync {
    move |x: &[f64; 6]| {
        if crate::kernel::skappa(p.z, x[0]).abs() < GUARD_EPS {
            Some(format!("S_z(r) vanishes at r = {}", x[0]))
        } else if crate::kernel::skappa(p.kappa2, x[1]).abs() < GUARD_EPS {
            Some(format!("theta = {} reached the polar axis", x[1]))
        } else {
            None
        }
    }
}

pub(crate) fn polar_observable<F>(name: &str, p: SpaceParams, f: F) -> Observable
where
    F: Fn(&Frame<Dual>, &[Dual; 6]) -> Dual + Send + Sync + 'static,
{
    Observable::new(name, CHART, move |x| {
        let fr = frame(&p, x)?;
        Ok(f(&fr, x))
    })
    .with_guard(polar_guard(p))
}

#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub j01: Observable,
    pub j02: Observable,
    pub j03: Observable,
    pub j12: Observable,
    pub j13: Observable,
    pub j23: Observable,
    pub params: SpaceParams,
}

pub fn so4_generators(params: &SpaceParams) -> GeneratorSet {
    let p = *params;
    let k2 = p.kappa2;
    GeneratorSet {
        j01: polar_observable("J01", p, |f, x| f.c2 * x[3] - f.s2 * f.cot1 * x[4]),
        j02: polar_observable("J02", p, move |f, x| {
            f.s2 * f.cf * x[3] * k2 + f.c2 * f.cf * f.cot1 * x[4] - f.sf * f.cot1 / f.s2 * x[5]
        }),
        j03: polar_observable("J03", p, move |f, x| {
            f.s2 * f.sf * x[3] * k2 + f.c2 * f.sf * f.cot1 * x[4] + f.cf * f.cot1 / f.s2 * x[5]
        }),
        j12: polar_observable("J12", p, |f, x| f.cf * x[4] - f.sf * (f.c2 / f.s2) * x[5]),
        j13: polar_observable("J13", p, |f, x| f.sf * x[4] + f.cf * (f.c2 / f.s2) * x[5]),
        j23: polar_observable("J23", p, |_, x| x[5]),
        params: p,
    }
}

impl GeneratorSet {
    pub fn all(&self) -> [(&'static str, &Observable); 6] {
        [
            ("J01", &self.j01),
            ("J02", &self.j02),
            ("J03", &self.j03),
            ("J12", &self.j12),
            ("J13", &self.j13),
            ("J23", &self.j23),
        ]
    }

    /// Returns a copy with one generator multiplied by `factor` (negative controls).
    pub fn perturbed(&self, name: &str, factor: f64) -> GeneratorSet {
        let mut g = self.clone();
        let slot = match name {
            "J01" => &mut g.j01,
            "J02" => &mut g.j02,
            "J03" => &mut g.j03,
            "J12" => &mut g.j12,
            "J13" => &mut g.j13,
            _ => &mut g.j23,
        };
        *slot = slot.scaled(factor).renamed(format!("{name} (perturbed)"));
        g
    }
}

fn so4_checks(g: &GeneratorSet) -> Vec<Check> {
    let k1 = g.params.z;
    let k2 = g.params.kappa2;
    let b = Check::bracket;
    let zero = Check::vanishing;
    vec![
        b("{J12,J13} = k2 J23", &g.j12, &g.j13, g.j23.scaled(k2)),
        b("{J12,J23} = -J13", &g.j12, &g.j23, g.j13.scaled(-1.0)),
        b("{J13,J23} = J12", &g.j13, &g.j23, g.j12.clone()),
        b("{J12,J01} = J02", &g.j12, &g.j01, g.j02.clone()),
        b("{J13,J01} = J03", &g.j13, &g.j01, g.j03.clone()),
        b("{J23,J02} = J03", &g.j23, &g.j02, g.j03.clone()),
        b("{J12,J02} = -k2 J01", &g.j12, &g.j02, g.j01.scaled(-k2)),
        b("{J13,J03} = -k2 J01", &g.j13, &g.j03, g.j01.scaled(-k2)),
        b("{J23,J03} = -J02", &g.j23, &g.j03, g.j02.scaled(-1.0)),
        b("{J01,J02} = k1 J12", &g.j01, &g.j02, g.j12.scaled(k1)),
        b("{J01,J03} = k1 J13", &g.j01, &g.j03, g.j13.scaled(k1)),
        b("{J02,J03} = k1 k2 J23", &g.j02, &g.j03, g.j23.scaled(k1 * k2)),
        zero("{J01,J23} = 0", &g.j01, &g.j23),
        zero("{J02,J13} = 0", &g.j02, &g.j13),
        zero("{J03,J12} = 0", &g.j03, &g.j12),
    ]
}

fn casimir_checks(g: &GeneratorSet) -> Vec<Check> {
    let p = g.params;
    let [c2, c2mid, c3] = polar_casimirs(p, Chart::PolarConstant);
    let spec = HamiltonianSpec {
        family: Family::FreeCC,
        params: p,
    };
    let h = hamiltonian(&spec, Chart::PolarConstant).expect("free family lives on the polar chart");
    let rot = &(&g.j12.square() + &g.j13.square()) + &g.j23.square().scaled(p.kappa2);
    let quad = &(&(&g.j01.square().scaled(p.kappa2) + &g.j02.square()) + &g.j03.square())
        + &rot.scaled(p.z);
    vec![
        Check::value("C2 = J23^2", &c2, &g.j23.square()),
        Check::value("C2mid = J12^2", &c2mid, &g.j12.square()),
        Check::value("C3 = J12^2 + J13^2 + k2 J23^2", &c3, &rot),
        Check::value("2 k2 H = k2 J01^2 + J02^2 + J03^2 + k1 C3", &h.scaled(2.0 * p.kappa2), &quad),
    ]
}

/// The fifteen so_{κ1,κ2}(4) brackets at seeded random polar states.
pub fn verify_so4_generators(g: &GeneratorSet, samples: usize, seed: u64) -> BracketReport {
    let pts = sampling::points(Chart::PolarConstant, &g.params, samples, seed);
    let mut report = BracketReport::new("so4");
    report.groups.push(run_group("so4", &so4_checks(g), &pts));
    report.groups.push(run_group("casimir-relations", &casimir_checks(g), &pts));
    report
}

pub fn verify_so4(params: &SpaceParams, samples: usize, seed: u64) -> BracketReport {
    verify_so4_generators(&so4_generators(params), samples, seed)
}
