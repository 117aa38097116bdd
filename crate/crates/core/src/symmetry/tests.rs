use super::*;
use crate::coalgebra::pbracket_at;
use crate::sampling;
use crate::spaces::{from_polar, hamiltonian, Family, FamilyKind, HamiltonianSpec, Preset, SpaceParams};
use crate::state::Chart;

fn params(z: f64, kappa2: f64) -> SpaceParams {
    SpaceParams::with_k(z, kappa2, 1.0).unwrap()
}

/// Cartesian momenta `(P_x1, P_x2, P_x3)` from flat spherical data with
/// `x1 = r sinθ sinφ`, `x2 = r sinθ cosφ`, `x3 = r cosθ`.
fn cartesian(x: &[f64; 6]) -> ([f64; 3], [f64; 3]) {
    let [r, th, ph, pr, pt, pf] = *x;
    let (st, ct, sp, cp) = (th.sin(), th.cos(), ph.sin(), ph.cos());
    let rhat = [st * sp, st * cp, ct];
    let that = [ct * sp, ct * cp, -st];
    let phat = [cp, -sp, 0.0];
    let pos = rhat.map(|v| v * r);
    let mom = std::array::from_fn(|i| pr * rhat[i] + pt / r * that[i] + pf / (r * st) * phat[i]);
    (pos, mom)
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

#[test]
fn j23_is_the_azimuthal_momentum() {
    let g = so4_generators(&params(0.4, 1.0));
    let x = [0.7, 1.0, 2.0, 0.1, 0.2, -0.9];
    assert_eq!(g.j23.value_at(&x).unwrap(), -0.9);
}

#[test]
fn flat_translations_are_cartesian_momenta() {
    let g = so4_generators(&params(0.0, 1.0));
    for x in sampling::points(Chart::PolarConstant, &g.params, 20, 4) {
        let (_, mom) = cartesian(&x);
        let j0 = [&g.j03, &g.j02, &g.j01].map(|j| j.value_at(&x).unwrap());
        for i in 0..3 {
            assert!((j0[i] - mom[i]).abs() < 1e-9);
        }
    }
}

#[test]
fn free_stackel_constant_is_a_squared_momentum_in_the_flat_limit() {
    let p = params(0.0, 1.0);
    let spec = HamiltonianSpec::new(Family::FreeCC, p).unwrap();
    let set = constants(&spec, Chart::PolarConstant).unwrap();
    let i2 = set.get("I2").unwrap();
    for x in sampling::points(Chart::PolarConstant, &p, 20, 8) {
        let (_, mom) = cartesian(&x);
        assert!((i2.value_at(&x).unwrap() - mom[0] * mom[0]).abs() < 1e-9);
    }
}

#[test]
fn flat_lrl_is_the_classical_runge_lenz_vector() {
    // L_i = -(p × (q × p) - k q̂) read along the axes (x3, x2, x1)
    let p = params(0.0, 1.0);
    let v = lrl(&p);
    for x in sampling::points(Chart::PolarConstant, &p, 20, 9) {
        let (pos, mom) = cartesian(&x);
        let r = x[0];
        let a = cross(mom, cross(pos, mom));
        let a: [f64; 3] = std::array::from_fn(|i| a[i] - pos[i] / r);
        let l = [&v.l1, &v.l2, &v.l3].map(|o| o.value_at(&x).unwrap());
        assert!((l[0] + a[2]).abs() < 1e-8);
        assert!((l[1] + a[1]).abs() < 1e-8);
        assert!((l[2] + a[0]).abs() < 1e-8);
    }
}

#[test]
fn so4_tables_close() {
    for (z, k2) in [(1.0, 1.0), (0.0, 1.0), (-1.0, -1.0)] {
        let r = verify_so4(&params(z, k2), 50, 1);
        assert!(r.max_residual() < 1e-9, "{z},{k2}: {:?}", r);
    }
    let g = so4_generators(&params(1.0, 1.0)).perturbed("J02", 1.01);
    assert!(verify_so4_generators(&g, 50, 1).max_residual() > 1e-3);
}

#[test]
fn lrl_tables_close_on_every_preset() {
    for preset in Preset::ALL {
        let r = verify_lrl_algebra(&preset.params(), 50, 2);
        assert!(r.max_residual() < 1e-8, "{preset}: {}", r.max_residual());
    }
    let g = so4_generators(&params(-1.0, -1.0)).perturbed("J02", 1.01);
    assert!(verify_lrl_vector(&lrl_from(&g), 50, 2).max_residual() > 1e-3);
}

#[test]
fn even_form_matches_real_scaling_when_lambda2_is_real() {
    let p = params(0.5, 2.0);
    let v = lrl(&p);
    let [p1, p2, _] = v.scaled.clone().map(|s| s.real(p.kappa2).unwrap());
    for x in sampling::points(Chart::PolarConstant, &p, 10, 3) {
        let (b, _) = pbracket_at(&p1, &p2, &x).unwrap();
        let rhs = v.mu.value_at(&x).unwrap() * v.generators.j12.value_at(&x).unwrap();
        assert!((b - rhs).abs() < 1e-9 * rhs.abs().max(1.0));
    }
    assert!(v.scaled[0].real(-1.0).is_none());
}

#[test]
fn constants_commute_with_their_hamiltonian_in_every_chart() {
    let mut pts_checked = 0;
    for fam in FamilyKind::ALL {
        let spec = HamiltonianSpec::new(fam.family(), params(0.4, 1.0)).unwrap();
        for chart in [Chart::BeltramiLike, spec.family.polar_chart().unwrap()] {
            let h = hamiltonian(&spec, chart).unwrap();
            let set = constants(&spec, chart).unwrap();
            for x in sampling::points(chart, &spec.params, 20, 6) {
                for (name, c) in &set.entries {
                    let Ok((b, mag)) = pbracket_at(c, &h, &x) else {
                        continue;
                    };
                    assert!(b.abs() / mag.max(1.0) < 1e-9, "{fam:?} {chart:?} {name}: {b}");
                    pts_checked += 1;
                }
            }
        }
    }
    assert!(pts_checked > 500);
}

#[test]
fn beltrami_constants_equal_polar_ones() {
    for fam in FamilyKind::ALL {
        let spec = HamiltonianSpec::new(fam.family(), params(0.3, 1.5)).unwrap();
        let polar = spec.family.polar_chart().unwrap();
        let cb = constants(&spec, Chart::BeltramiLike).unwrap();
        let cp = constants(&spec, polar).unwrap();
        for x in sampling::points(polar, &spec.params, 10, 12) {
            let s = crate::state::PhaseState::new(polar, x);
            let b = from_polar(&s, &spec.params).unwrap();
            for ((name, ob), (_, op)) in cb.entries.iter().zip(&cp.entries) {
                let (vb, vp) = (ob.value(&b).unwrap(), op.value(&s).unwrap());
                assert!((vb - vp).abs() < 1e-10 * vp.abs().max(1.0), "{fam:?} {name}: {vb} vs {vp}");
            }
        }
    }
}

#[test]
fn stackel_constant_is_lost_for_kepler() {
    let p = params(0.5, 1.0);
    let free = constants(&HamiltonianSpec::new(Family::FreeCC, p).unwrap(), Chart::PolarConstant).unwrap();
    let i2 = free.get("I2").unwrap();
    let spec = HamiltonianSpec::new(Family::KeplerCC, p).unwrap();
    let h = hamiltonian(&spec, Chart::PolarConstant).unwrap();
    let x = [0.8, 1.1, 0.7, 0.3, -0.4, 0.9];
    assert!(pbracket_at(i2, &h, &x).unwrap().0.abs() > 1e-3);
}

#[test]
fn momentum_scaling_of_quadratic_constants() {
    let spec = HamiltonianSpec::new(Family::KeplerCC, params(0.5, 1.0)).unwrap();
    let set = constants(&spec, Chart::PolarConstant).unwrap();
    let x = [0.8, 1.1, 0.7, 0.3, -0.4, 0.9];
    let x2 = [0.8, 1.1, 0.7, 0.6, -0.8, 1.8];
    for name in ["C2", "C2mid", "C3"] {
        let c = set.get(name).unwrap();
        assert!((c.value_at(&x2).unwrap() - 4.0 * c.value_at(&x).unwrap()).abs() < 1e-13);
    }
}

#[test]
fn rank_examples() {
    let spec = HamiltonianSpec::new(Family::KeplerCC, params(0.5, 1.0)).unwrap();
    let set = constants(&spec, Chart::PolarConstant).unwrap();
    let h = hamiltonian(&spec, Chart::PolarConstant).unwrap();
    let s = crate::state::PhaseState::new(Chart::PolarConstant, [0.8, 1.1, 0.7, 0.3, -0.4, 0.9]);
    let c = |n: &str| set.get(n).unwrap().clone();
    assert_eq!(independence_rank(&[c("C2"), c("C2mid"), c("C3"), h.clone()], &s).unwrap(), 4);
    assert_eq!(independence_rank(&[c("C2"), c("C2mid"), c("C3"), h, c("L1")], &s).unwrap(), 5);
    assert_eq!(independence_rank(&[c("C2"), c("C2"), c("C3")], &s).unwrap(), 2);
}
