//! The deformed sl_z(2) Poisson coalgebra and its symplectic realizations.
//!
//! The one-site realization acts on `(q1, p1)`; the coproduct glues realizations
//! on disjoint canonical pairs, so joining three one-site copies yields the
//! three-site generators that all Hamiltonians in this crate are built from.
//!
//! ```text
//! {J3, J+} = 2 J+ cosh(z J-)    {J3, J-} = -2 sinh(z J-)/z    {J-, J+} = 4 J3
//! Δ(J-) = J- ⊗ 1 + 1 ⊗ J-       Δ(J_l) = J_l ⊗ e^{z J-} + e^{-z J-} ⊗ J_l
//! ```

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernel::{sinhc, Dual, Scalar};
use crate::observable::Observable;
use crate::report::{run_group, BracketReport, Check};
use crate::sampling;
use crate::state::{Chart, PhaseState};

const CHART: Option<Chart> = Some(Chart::BeltramiLike);

#[derive(Debug, Clone)]
pub struct Realization {
    /// Number of canonical pairs the generators depend on.
    pub sites: usize,
    /// Index of the first pair used (0 for `(q1, p1)`).
    pub offset: usize,
    pub z: f64,
    pub jminus: Observable,
    pub jplus: Observable,
    pub jthree: Observable,
}

pub fn one_site(z: f64) -> Realization {
    let jminus = Observable::new("J-", CHART, |x| Ok(x[0] * x[0]));
    let jplus = Observable::new("J+", CHART, move |x| {
        Ok(sinhc(x[0] * x[0] * z) * x[3] * x[3])
    });
    let jthree = Observable::new("J3", CHART, move |x| {
        Ok(sinhc(x[0] * x[0] * z) * x[0] * x[3])
    });
    Realization {
        sites: 1,
        offset: 0,
        z,
        jminus,
        jplus,
        jthree,
    }
}

fn shift_observable(f: &Observable, by: usize) -> Observable {
    let map = Arc::new(move |x: &[Dual; 6]| {
        let mut y = [Dual::constant(0.0); 6];
        for i in 0..3 - by {
            y[i] = x[i + by];
            y[i + 3] = x[i + 3 + by];
        }
        Ok(y)
    });
    f.pullback(CHART, map)
}

impl Realization {
    /// The same generators acting on pairs `offset + by ..`.
    pub fn shifted(&self, by: usize) -> Result<Realization> {
        if self.offset + self.sites + by > 3 {
            return Err(Error::InvalidArgument(format!(
                "cannot shift a {}-site realization at offset {} by {by}",
                self.sites, self.offset
            )));
        }
        Ok(Realization {
            sites: self.sites,
            offset: self.offset + by,
            z: self.z,
            jminus: shift_observable(&self.jminus, by),
            jplus: shift_observable(&self.jplus, by),
            jthree: shift_observable(&self.jthree, by),
        })
    }

    /// `J- sinhc(z J-) J+ - J3²`, the realization of the sl_z(2) Casimir.
    pub fn casimir(&self) -> Observable {
        let z = self.z;
        let (m, p, t) = (self.jminus.clone(), self.jplus.clone(), self.jthree.clone());
        Observable::new(format!("C({} sites)", self.sites), CHART, move |x| {
            let jm = m.eval_dual(x)?;
            let jp = p.eval_dual(x)?;
            let j3 = t.eval_dual(x)?;
            Ok(jm * sinhc(jm * z) * jp - j3 * j3)
        })
    }

    /// Returns a copy whose `J+` is multiplied by `factor` (negative controls).
    pub fn perturbed(&self, factor: f64) -> Realization {
        let mut r = self.clone();
        r.jplus = self.jplus.scaled(factor).renamed("J+ (perturbed)");
        r
    }
}

/// Coproduct of two realizations; `b` is moved onto the pairs following `a`.
pub fn coproduct_join(a: &Realization, b: &Realization) -> Result<Realization> {
    if a.z != b.z {
        return Err(Error::DeformationMismatch {
            left: a.z,
            right: b.z,
        });
    }
    if a.sites + b.sites > 3 {
        return Err(Error::InvalidArgument(format!(
            "a {}-site and a {}-site realization need more than three pairs",
            a.sites, b.sites
        )));
    }
    let target = a.offset + a.sites;
    if b.offset > target {
        return Err(Error::InvalidArgument(
            "right factor already sits beyond the left one".into(),
        ));
    }
    let b = b.shifted(target - b.offset)?;
    let z = a.z;

    let jminus = (&a.jminus + &b.jminus).renamed("J-");
    let leg = |al: &Observable, bl: &Observable, name: &str| {
        let (am, bm) = (a.jminus.clone(), b.jminus.clone());
        let (al, bl) = (al.clone(), bl.clone());
        Observable::new(name, CHART, move |x| {
            let left = al.eval_dual(x)? * (bm.eval_dual(x)? * z).exp();
            let right = (am.eval_dual(x)? * -z).exp() * bl.eval_dual(x)?;
            Ok(left + right)
        })
    };
    Ok(Realization {
        sites: a.sites + b.sites,
        offset: a.offset,
        z,
        jplus: leg(&a.jplus, &b.jplus, "J+"),
        jthree: leg(&a.jthree, &b.jthree, "J3"),
        jminus,
    })
}

/// Three one-site copies glued by the coproduct.
pub fn three_site(z: f64) -> Realization {
    let one = one_site(z);
    let two = coproduct_join(&one, &one).expect("two sites fit");
    coproduct_join(&two, &one).expect("three sites fit")
}

/// Two-site realization on the pairs `offset, offset + 1`.
pub fn two_site(z: f64, offset: usize) -> Result<Realization> {
    let one = one_site(z);
    coproduct_join(&one, &one)?.shifted(offset)
}

/// Closed-form Casimirs of the three-site realization on sites {1,2}, {2,3} and {1,2,3}.
#[derive(Debug, Clone)]
pub struct CasimirSet {
    pub c12: Observable,
    pub c23: Observable,
    pub c123: Observable,
}

fn pair_term<S: Scalar>(z: f64, x: &[S; 6], i: usize, j: usize) -> S {
    let l = x[i] * x[j + 3] - x[j] * x[i + 3];
    sinhc(x[i] * x[i] * z) * sinhc(x[j] * x[j] * z) * l * l
}

pub fn casimirs(z: f64) -> CasimirSet {
    let c12 = Observable::new("C12", CHART, move |x| {
        let a = [x[0] * x[0], x[1] * x[1]];
        Ok(pair_term(z, x, 0, 1) * ((a[1] - a[0]) * z).exp())
    });
    let c23 = Observable::new("C23", CHART, move |x| {
        let a = [x[1] * x[1], x[2] * x[2]];
        Ok(pair_term(z, x, 1, 2) * ((a[1] - a[0]) * z).exp())
    });
    let c123 = Observable::new("C123", CHART, move |x| {
        let a = [x[0] * x[0], x[1] * x[1], x[2] * x[2]];
        let t12 = pair_term(z, x, 0, 1) * ((a[1] - a[0] + a[2] * 2.0) * z).exp();
        let t13 = pair_term(z, x, 0, 2) * ((a[2] - a[0]) * z).exp();
        let t23 = pair_term(z, x, 1, 2) * ((a[2] - a[1] - a[0] * 2.0) * z).exp();
        Ok(t12 + t13 + t23)
    });
    CasimirSet { c12, c23, c123 }
}

/// Canonical bracket at raw coordinates, with the sum of absolute term sizes
/// used to scale residuals.
pub fn pbracket_at(f: &Observable, g: &Observable, x: &[f64; 6]) -> Result<(f64, f64)> {
    let df = f.jet_at(x)?.eps;
    let dg = g.jet_at(x)?.eps;
    let mut value = 0.0;
    let mut mag = 0.0;
    for i in 0..3 {
        let a = df[i] * dg[i + 3];
        let b = dg[i] * df[i + 3];
        value += a - b;
        mag += a.abs() + b.abs();
    }
    Ok((value, mag))
}

pub fn pbracket(f: &Observable, g: &Observable, s: &PhaseState) -> Result<f64> {
    f.check_chart(s)?;
    g.check_chart(s)?;
    Ok(pbracket_at(f, g, &s.coords)?.0)
}

fn sl2z_checks(r: &Realization) -> Vec<Check> {
    let z = r.z;
    let cosh_term = r.jplus.zip(&r.jminus, "2 J+ cosh(z J-)", move |p, m| {
        p * (m * z).cosh() * 2.0
    });
    let sinh_term = r
        .jminus
        .map("-2 sinh(z J-)/z", move |m| m * sinhc(m * z) * -2.0);
    vec![
        Check::bracket("{J3,J+} = 2 J+ cosh(z J-)", &r.jthree, &r.jplus, cosh_term),
        Check::bracket("{J3,J-} = -2 sinh(z J-)/z", &r.jthree, &r.jminus, sinh_term),
        Check::bracket("{J-,J+} = 4 J3", &r.jminus, &r.jplus, r.jthree.scaled(4.0)),
    ]
}

/// Checks the sl_z(2) bracket relations of `r` at seeded random points.
pub fn verify_sl2z(r: &Realization, samples: usize, seed: u64) -> BracketReport {
    let points = sampling::coalgebra_points(samples, seed);
    let mut report = BracketReport::new("sl2z");
    report
        .groups
        .push(run_group(&format!("sl2z-{}site", r.sites), &sl2z_checks(r), &points));
    report
}

/// Centrality, involution and closed-form identities of the Casimirs against
/// the three-site realization `r`.
pub fn verify_casimirs(r: &Realization, set: &CasimirSet, samples: usize, seed: u64) -> BracketReport {
    let points = sampling::coalgebra_points(samples, seed);
    let gens = [&r.jminus, &r.jplus, &r.jthree];
    let mut central = Vec::new();
    for (cname, c) in [("C12", &set.c12), ("C123", &set.c123), ("C23", &set.c23)] {
        for g in gens {
            central.push(Check::vanishing(format!("{{{cname},{}}} = 0", g.name()), c, g));
        }
    }
    let involution = vec![
        Check::vanishing("{C12,C123} = 0", &set.c12, &set.c123),
        Check::vanishing("{C23,C123} = 0", &set.c23, &set.c123),
    ];
    let mut closed = Vec::new();
    if let (Ok(r12), Ok(r23)) = (two_site(r.z, 0), two_site(r.z, 1)) {
        closed.push(Check::value("C12 = coproduct Casimir on sites 1,2", &set.c12, &r12.casimir()));
        closed.push(Check::value("C23 = coproduct Casimir on sites 2,3", &set.c23, &r23.casimir()));
    }
    closed.push(Check::value("C123 = coproduct Casimir on sites 1,2,3", &set.c123, &r.casimir()));

    let mut report = BracketReport::new("casimirs");
    report.groups.push(run_group("centrality", &central, &points));
    report.groups.push(run_group("involution", &involution, &points));
    report.groups.push(run_group("closed-form", &closed, &points));
    report
}
