//! Seeded sampling of regular phase-space points for each chart.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::spaces::SpaceParams;
use crate::state::Chart;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Coalgebra sampling: `q, p` uniform in `[-2, 2]`, resampled while any `|q_i| < 1e-3`.
pub fn coalgebra_point<R: Rng>(rng: &mut R) -> [f64; 6] {
    loop {
        let x: [f64; 6] = std::array::from_fn(|_| rng.random_range(-2.0..2.0));
        if x[..3].iter().all(|q| q.abs() >= 1e-3) {
            return x;
        }
    }
}

/// Positive-octant Beltrami point inside the polar charts' domain.
pub fn beltrami_octant_point<R: Rng>(rng: &mut R) -> [f64; 6] {
    let mut x = [0.0; 6];
    for q in &mut x[..3] {
        *q = rng.random_range(0.1..1.2);
    }
    for p in &mut x[3..] {
        *p = rng.random_range(-2.0..2.0);
    }
    x
}

fn radial_upper(curvature: f64) -> f64 {
    // keeps √|κ| x comfortably below π/2 so every chart factor stays regular
    if curvature.abs() > 0.0 {
        1.4f64.min(1.3 / curvature.abs().sqrt())
    } else {
        1.4
    }
}

fn theta_range(kappa2: f64) -> (f64, f64) {
    if kappa2 > 0.0 {
        let s = kappa2.sqrt();
        (0.2 / s, 2.9 / s)
    } else {
        (0.2, 1.5)
    }
}

/// Regular point of a polar chart; momenta uniform in `[-2, 2]`.
pub fn polar_point<R: Rng>(chart: Chart, params: &SpaceParams, rng: &mut R) -> [f64; 6] {
    let radial_hi = match chart {
        Chart::PolarConstant if params.z > 0.0 => radial_upper(params.z),
        Chart::PolarVariable if params.z < 0.0 => radial_upper(params.z),
        _ => 1.4,
    };
    let (th_lo, th_hi) = theta_range(params.kappa2);
    [
        rng.random_range(0.2..radial_hi),
        rng.random_range(th_lo..th_hi),
        rng.random_range(0.0..std::f64::consts::TAU),
        rng.random_range(-2.0..2.0),
        rng.random_range(-2.0..2.0),
        rng.random_range(-2.0..2.0),
    ]
}

pub fn point<R: Rng>(chart: Chart, params: &SpaceParams, rng: &mut R) -> [f64; 6] {
    match chart {
        Chart::BeltramiLike => beltrami_octant_point(rng),
        _ => polar_point(chart, params, rng),
    }
}

pub fn points(chart: Chart, params: &SpaceParams, n: usize, seed: u64) -> Vec<[f64; 6]> {
    let mut r = rng(seed);
    (0..n).map(|_| point(chart, params, &mut r)).collect()
}

pub fn coalgebra_points(n: usize, seed: u64) -> Vec<[f64; 6]> {
    let mut r = rng(seed);
    (0..n).map(|_| coalgebra_point(&mut r)).collect()
}
