//! The curved Runge–Lenz vector and its bracket tables.
//!
//! ```text
//! L1 = -J02 J12 - J03 J13 + k κ2 C_κ2(θ)
//! L2 =  J01 J12 - J03 J23 + k κ2 S_κ2(θ) cos φ
//! L3 =  J01 J13 + J02 J23 + k κ2 S_κ2(θ) sin φ
//! μ  = 2(z C3 - κ2 H)
//! ```
//!
//! The rescaled components `P1 = L1/λ2`, `P2 = λ2 L2`, `P3 = λ2 L3` carry odd
//! powers of `λ2 = √κ2`, which is imaginary on the Lorentzian spaces. Each
//! bracket `{λ2^a X, λ2^b Y} = c λ2^d Z` is therefore checked after dividing
//! by `λ2^min(a+b, d)`; the remaining exponents are even and only `κ2` appears.

use crate::observable::Observable;
use crate::report::{run_group, BracketReport, Check};
use crate::sampling;
use crate::spaces::{hamiltonian, Family, HamiltonianSpec, SpaceParams};
use crate::state::Chart;
use crate::symmetry::generators::polar_observable;
use crate::symmetry::{so4_generators, GeneratorSet};

/// `λ2^power · base`.
#[derive(Debug, Clone)]
pub struct Scaled {
    pub base: Observable,
    pub power: i32,
}

impl Scaled {
    /// The real observable, defined only when `κ2 > 0`.
    pub fn real(&self, kappa2: f64) -> Option<Observable> {
        (kappa2 > 0.0).then(|| self.base.scaled(kappa2.sqrt().powi(self.power)))
    }
}

#[derive(Debug, Clone)]
pub struct LrlVector {
    pub l1: Observable,
    pub l2: Observable,
    pub l3: Observable,
    /// `P1`, `P2`, `P3` as powers of `λ2` times `L1`, `L2`, `L3`.
    pub scaled: [Scaled; 3],
    pub mu: Observable,
    pub hamiltonian: Observable,
    pub generators: GeneratorSet,
}

pub fn lrl(params: &SpaceParams) -> LrlVector {
    lrl_from(&so4_generators(params))
}

/// Builds the vector from a given generator set (perturbed sets included).
pub fn lrl_from(g: &GeneratorSet) -> LrlVector {
    let p = g.params;
    let kk = p.k() * p.kappa2;
    let term1 = polar_observable("k k2 C2", p, move |f, _| f.c2 * kk);
    let term2 = polar_observable("k k2 S2 cos", p, move |f, _| f.s2 * f.cf * kk);
    let term3 = polar_observable("k k2 S2 sin", p, move |f, _| f.s2 * f.sf * kk);
    let l1 = (&term1 - &(&(&g.j02 * &g.j12) + &(&g.j03 * &g.j13))).renamed("L1");
    let l2 = (&(&(&g.j01 * &g.j12) - &(&g.j03 * &g.j23)) + &term2).renamed("L2");
    let l3 = (&(&(&g.j01 * &g.j13) + &(&g.j02 * &g.j23)) + &term3).renamed("L3");

    let spec = HamiltonianSpec {
        family: Family::KeplerCC,
        params: p,
    };
    let h = hamiltonian(&spec, Chart::PolarConstant).expect("Kepler family lives on the polar chart");
    let c3 = &(&g.j12.square() + &g.j13.square()) + &g.j23.square().scaled(p.kappa2);
    let mu = (&c3.scaled(2.0 * p.z) - &h.scaled(2.0 * p.kappa2)).renamed("mu");
    LrlVector {
        scaled: [
            Scaled { base: l1.clone(), power: -1 },
            Scaled { base: l2.clone(), power: 1 },
            Scaled { base: l3.clone(), power: 1 },
        ],
        l1,
        l2,
        l3,
        mu,
        hamiltonian: h,
        generators: g.clone(),
    }
}

/// `{λ2^a X, λ2^b Y} = coef · [μ] · λ2^c Z` in even form.
#[allow(clippy::too_many_arguments)]
fn even_check(
    label: &str,
    kappa2: f64,
    (x, a): (&Observable, i32),
    (y, b): (&Observable, i32),
    coef: f64,
    coef_power: i32,
    mu: Option<&Observable>,
    rhs: Option<(&Observable, i32)>,
) -> Check {
    let Some((z, e)) = rhs else {
        return Check::vanishing(label, x, y);
    };
    let d = coef_power + e;
    let m = (a + b).min(d);
    debug_assert!((a + b - m) % 2 == 0 && (d - m) % 2 == 0);
    let lhs_factor = kappa2.powi((a + b - m) / 2);
    let rhs_factor = coef * kappa2.powi((d - m) / 2);
    let rhs = match mu {
        Some(mu) => (mu * z).scaled(rhs_factor),
        None => z.scaled(rhs_factor),
    };
    Check::bracket(label, x, y, rhs).with_factor(lhs_factor)
}

fn higgs_checks(v: &LrlVector) -> Vec<Check> {
    let g = &v.generators;
    let k2 = g.params.kappa2;
    let j = |o: &Observable| (o.clone(), 0);
    let (j12, j13, j23) = (j(&g.j12), j(&g.j13), j(&g.j23));
    let p1 = (v.scaled[0].base.clone(), v.scaled[0].power);
    let p2 = (v.scaled[1].base.clone(), v.scaled[1].power);
    let p3 = (v.scaled[2].base.clone(), v.scaled[2].power);
    let mu = Some(&v.mu);
    let e = |label: &str,
             x: &(Observable, i32),
             y: &(Observable, i32),
             coef: f64,
             cp: i32,
             mu: Option<&Observable>,
             z: Option<&(Observable, i32)>| {
        even_check(label, k2, (&x.0, x.1), (&y.0, y.1), coef, cp, mu, z.map(|t| (&t.0, t.1)))
    };
    vec![
        e("{J12,J13} = k2 J23", &j12, &j13, 1.0, 2, None, Some(&j23)),
        e("{J12,J23} = -J13", &j12, &j23, -1.0, 0, None, Some(&j13)),
        e("{J13,J23} = J12", &j13, &j23, 1.0, 0, None, Some(&j12)),
        e("{J12,P1} = P2", &j12, &p1, 1.0, 0, None, Some(&p2)),
        e("{J13,P1} = P3", &j13, &p1, 1.0, 0, None, Some(&p3)),
        e("{J23,P2} = P3", &j23, &p2, 1.0, 0, None, Some(&p3)),
        e("{J12,P2} = -k2 P1", &j12, &p2, -1.0, 2, None, Some(&p1)),
        e("{J13,P3} = -k2 P1", &j13, &p3, -1.0, 2, None, Some(&p1)),
        e("{J23,P3} = -P2", &j23, &p3, -1.0, 0, None, Some(&p2)),
        e("{P1,P2} = mu J12", &p1, &p2, 1.0, 0, mu, Some(&j12)),
        e("{P1,P3} = mu J13", &p1, &p3, 1.0, 0, mu, Some(&j13)),
        e("{P2,P3} = mu k2 J23", &p2, &p3, 1.0, 2, mu, Some(&j23)),
        e("{P1,J23} = 0", &p1, &j23, 0.0, 0, None, None),
        e("{P2,J13} = 0", &p2, &j13, 0.0, 0, None, None),
        e("{P3,J12} = 0", &p3, &j12, 0.0, 0, None, None),
    ]
}

fn vector_checks(v: &LrlVector) -> Vec<Check> {
    let g = &v.generators;
    let k2 = g.params.kappa2;
    let b = Check::bracket;
    let zero = Check::vanishing;
    vec![
        b("{J12,L1} = k2 L2", &g.j12, &v.l1, v.l2.scaled(k2)),
        b("{J12,L2} = -L1", &g.j12, &v.l2, v.l1.scaled(-1.0)),
        zero("{J12,L3} = 0", &g.j12, &v.l3),
        b("{J13,L1} = k2 L3", &g.j13, &v.l1, v.l3.scaled(k2)),
        zero("{J13,L2} = 0", &g.j13, &v.l2),
        b("{J13,L3} = -L1", &g.j13, &v.l3, v.l1.scaled(-1.0)),
        zero("{J23,L1} = 0", &g.j23, &v.l1),
        b("{J23,L2} = L3", &g.j23, &v.l2, v.l3.clone()),
        b("{J23,L3} = -L2", &g.j23, &v.l3, v.l2.scaled(-1.0)),
    ]
}

fn lrl_bracket_checks(v: &LrlVector) -> Vec<Check> {
    let g = &v.generators;
    vec![
        Check::bracket("{L1,L2} = mu J12", &v.l1, &v.l2, &v.mu * &g.j12),
        Check::bracket("{L1,L3} = mu J13", &v.l1, &v.l3, &v.mu * &g.j13),
        Check::bracket("{L2,L3} = mu J23", &v.l2, &v.l3, &v.mu * &g.j23),
    ]
}

fn involution_checks(v: &LrlVector) -> Vec<Check> {
    let g = &v.generators;
    let k2 = g.params.kappa2;
    let h = &v.hamiltonian;
    let c2 = g.j23.square();
    let c2mid = g.j12.square();
    let c3 = &(&c2mid + &g.j13.square()) + &c2.scaled(k2);
    // J13² through the Casimirs, as in the coalgebra picture
    let j13sq = &(&c3 - &c2mid) - &c2.scaled(k2);
    let mut out = Vec::new();
    for (name, a, l, lname) in [
        ("J23^2", &c2, &v.l1, "L1"),
        ("J13^2", &j13sq, &v.l2, "L2"),
        ("J12^2", &c2mid, &v.l3, "L3"),
    ] {
        out.push(Check::vanishing(format!("{{{name},{lname}}} = 0"), a, l));
        out.push(Check::vanishing(format!("{{{name},H}} = 0"), a, h));
        out.push(Check::vanishing(format!("{{{lname},H}} = 0"), l, h));
    }
    out
}

/// Conservation, vector transformation, `{Li,Lj}` and the cubic table.
pub fn verify_lrl_vector(v: &LrlVector, samples: usize, seed: u64) -> BracketReport {
    let pts = sampling::points(Chart::PolarConstant, &v.generators.params, samples, seed);
    let h = &v.hamiltonian;
    let conservation = vec![
        Check::vanishing("{L1,H} = 0", &v.l1, h),
        Check::vanishing("{L2,H} = 0", &v.l2, h),
        Check::vanishing("{L3,H} = 0", &v.l3, h),
    ];
    let mut report = BracketReport::new("lrl");
    report.groups.push(run_group("conservation", &conservation, &pts));
    report.groups.push(run_group("vector", &vector_checks(v), &pts));
    report.groups.push(run_group("lrl-brackets", &lrl_bracket_checks(v), &pts));
    report.groups.push(run_group("higgs", &higgs_checks(v), &pts));
    report.groups.push(run_group("involution", &involution_checks(v), &pts));
    report
}

pub fn verify_lrl_algebra(params: &SpaceParams, samples: usize, seed: u64) -> BracketReport {
    verify_lrl_vector(&lrl(params), samples, seed)
}
