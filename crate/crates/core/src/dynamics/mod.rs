//! Hamilton's equations from exact gradients and trajectory integration.
//!
//! The default integrator is the adaptive Dormand–Prince 8(5,3) pair with
//! Hairer's error norm; a fixed-step implicit midpoint rule is available for
//! long runs. Every accepted step is checked against the singularity guards
//! attached to the Hamiltonian and the monitors, and a run ends early with a
//! recorded [`Termination`] instead of an error.

mod export;
mod tableau;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::observable::Observable;
use crate::state::{Chart, PhaseState};

pub use export::{write_csv, CSV_FLOAT_DIGITS};

/// Hamilton's vector field `(∂H/∂p, -∂H/∂q)` at `s`.
pub fn rhs(h: &Observable, s: &PhaseState) -> Result<[f64; 6]> {
    h.check_chart(s)?;
    vector_field(h, &s.coords)
}

fn vector_field(h: &Observable, x: &[f64; 6]) -> Result<[f64; 6]> {
    let g = h.jet_at(x)?.eps;
    Ok([g[3], g[4], g[5], -g[0], -g[1], -g[2]])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Method {
    /// Adaptive Dormand–Prince 8(5,3).
    Dop853,
    /// Dormand–Prince 8(5,3) without error control, for convergence studies.
    Dop853Fixed { step: f64 },
    /// Implicit midpoint rule with a fixed step.
    ImplicitMidpoint { step: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_step: f64,
    pub t_end: f64,
    /// Record every `sample_stride`-th accepted step (the last state is always kept).
    pub sample_stride: usize,
    pub method: Method,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            rel_tol: 1e-12,
            abs_tol: 1e-12,
            max_step: f64::INFINITY,
            t_end: 1.0,
            sample_stride: 1,
            method: Method::Dop853,
        }
    }
}

impl IntegratorConfig {
    pub fn with_t_end(t_end: f64) -> Self {
        IntegratorConfig {
            t_end,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.to_string()));
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return bad("tolerances must be positive");
        }
        if !(self.max_step > 0.0) {
            return bad("max_step must be positive");
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return bad("t_end must be finite and nonnegative");
        }
        if self.sample_stride == 0 {
            return bad("sample_stride must be at least 1");
        }
        match self.method {
            Method::Dop853Fixed { step } | Method::ImplicitMidpoint { step } if !(step > 0.0) => {
                bad("fixed step must be positive")
            }
            _ => Ok(()),
        }
    }
}

/// How a run ended.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum Termination {
    Completed,
    /// A chart guard fired or an observable became undefined.
    Singularity { t: f64, reason: String },
    /// The step size fell below `1e-14·t_end`.
    StepUnderflow { t: f64, step: f64 },
}

impl Termination {
    pub fn is_completed(&self) -> bool {
        matches!(self, Termination::Completed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub name: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Drift {
    pub name: String,
    pub max_drift: f64,
    pub t_worst: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub chart: Chart,
    pub times: Vec<f64>,
    pub states: Vec<PhaseState>,
    /// One series per monitor, the Hamiltonian first.
    pub invariant_series: Vec<Series>,
    pub drift: Vec<Drift>,
    pub termination: Termination,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
}

impl Trajectory {
    pub fn last(&self) -> &PhaseState {
        self.states.last().expect("trajectories hold at least the initial state")
    }

    pub fn drift_of(&self, name: &str) -> Option<f64> {
        self.drift.iter().find(|d| d.name == name).map(|d| d.max_drift)
    }

    pub fn max_drift(&self) -> f64 {
        self.drift.iter().map(|d| d.max_drift).fold(0.0, f64::max)
    }
}

/// Per-monitor `max |m(t) - m(0)| / max(|m(0)|, 1)` and where it occurs.
pub fn drift_report(tr: &Trajectory) -> Vec<Drift> {
    tr.invariant_series
        .iter()
        .map(|s| {
            let m0 = s.values.first().copied().unwrap_or(0.0);
            let scale = m0.abs().max(1.0);
            let mut worst = (0.0, tr.times.first().copied().unwrap_or(0.0));
            for (v, t) in s.values.iter().zip(&tr.times) {
                let d = (v - m0).abs() / scale;
                if d > worst.0 || d.is_nan() {
                    worst = (if d.is_nan() { f64::INFINITY } else { d }, *t);
                }
            }
            Drift {
                name: s.name.clone(),
                max_drift: worst.0,
                t_worst: worst.1,
            }
        })
        .collect()
}

struct Recorder<'a> {
    monitors: Vec<&'a Observable>,
    tr: Trajectory,
}

impl<'a> Recorder<'a> {
    fn guard(&self, x: &[f64; 6]) -> Option<String> {
        self.monitors.iter().find_map(|m| m.guard_check(x))
    }

    fn values(&self, x: &[f64; 6]) -> std::result::Result<Vec<f64>, String> {
        self.monitors
            .iter()
            .map(|m| m.value_at(x).map_err(|e| format!("{} undefined: {e}", m.name())))
            .collect()
    }

    fn push(&mut self, t: f64, x: &[f64; 6]) -> std::result::Result<(), String> {
        let vals = self.values(x)?;
        self.tr.times.push(t);
        self.tr.states.push(PhaseState::new(self.tr.chart, *x));
        for (s, v) in self.tr.invariant_series.iter_mut().zip(vals) {
            s.values.push(v);
        }
        Ok(())
    }

    fn finish(mut self, termination: Termination) -> Trajectory {
        self.tr.termination = termination;
        self.tr.drift = drift_report(&self.tr);
        self.tr
    }
}

/// Integrates Hamilton's equations for `h` from `s0` over `[0, cfg.t_end]`.
///
/// `h` is always monitored, as the first series named `H`; every monitor must live on
/// the chart of `s0`.
pub fn integrate(h: &Observable, s0: &PhaseState, cfg: &IntegratorConfig, monitors: &[Observable]) -> Result<Trajectory> {
    cfg.validate()?;
    h.check_chart(s0)?;
    for m in monitors {
        m.check_chart(s0)?;
    }
    if !s0.is_finite() {
        return Err(Error::InvalidArgument("initial state is not finite".into()));
    }
    let mut all = vec![h];
    all.extend(monitors.iter());
    let mut rec = Recorder {
        tr: Trajectory {
            chart: s0.chart,
            times: Vec::new(),
            states: Vec::new(),
            invariant_series: all
                .iter()
                .enumerate()
                .map(|(i, m)| Series {
                    name: if i == 0 { "H".to_string() } else { m.name().to_string() },
                    values: Vec::new(),
                })
                .collect(),
            drift: Vec::new(),
            termination: Termination::Completed,
            accepted_steps: 0,
            rejected_steps: 0,
        },
        monitors: all,
    };
    if let Some(reason) = rec.guard(&s0.coords) {
        return Err(Error::Singularity(reason));
    }
    vector_field(h, &s0.coords)?;
    rec.push(0.0, &s0.coords).map_err(Error::Domain)?;

    let termination = match cfg.method {
        Method::Dop853 => run_dop853(h, s0.coords, cfg, None, &mut rec),
        Method::Dop853Fixed { step } => run_dop853(h, s0.coords, cfg, Some(step), &mut rec),
        Method::ImplicitMidpoint { step } => run_midpoint(h, s0.coords, cfg, step, &mut rec),
    };
    Ok(rec.finish(termination))
}

type Stages = [[f64; 6]; 12];

/// One DOP853 attempt: returns the new state and the two error vectors.
fn dop853_attempt(h: &Observable, y: &[f64; 6], k0: &[f64; 6], dt: f64) -> Result<([f64; 6], [f64; 6], [f64; 6])> {
    use tableau::{A, B, BHH, ER};
    let mut k: Stages = [[0.0; 6]; 12];
    k[0] = *k0;
    for i in 1..12 {
        let mut yi = *y;
        for (j, kj) in k.iter().enumerate().take(i) {
            let a = A[i][j];
            if a != 0.0 {
                for n in 0..6 {
                    yi[n] += dt * a * kj[n];
                }
            }
        }
        k[i] = vector_field(h, &yi)?;
    }
    let mut y1 = *y;
    let mut e5 = [0.0; 6];
    let mut e3 = [0.0; 6];
    for n in 0..6 {
        let mut inc = 0.0;
        let mut err = 0.0;
        for i in 0..12 {
            inc += B[i] * k[i][n];
            err += ER[i] * k[i][n];
        }
        y1[n] += dt * inc;
        e5[n] = err;
        e3[n] = inc - BHH[0] * k[0][n] - BHH[1] * k[8][n] - BHH[2] * k[11][n];
    }
    if y1.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("non-finite stage".into()));
    }
    Ok((y1, e5, e3))
}

fn hairer_norm(y0: &[f64; 6], y1: &[f64; 6], e5: &[f64; 6], e3: &[f64; 6], dt: f64, cfg: &IntegratorConfig) -> f64 {
    let (mut err, mut err2) = (0.0, 0.0);
    for n in 0..6 {
        let sk = cfg.abs_tol + cfg.rel_tol * y0[n].abs().max(y1[n].abs());
        err += (e5[n] / sk).powi(2);
        err2 += (e3[n] / sk).powi(2);
    }
    let mut deno = err + 0.01 * err2;
    if deno <= 0.0 {
        deno = 1.0;
    }
    dt.abs() * err * (1.0 / (6.0 * deno)).sqrt()
}

fn initial_step(h: &Observable, y: &[f64; 6], f0: &[f64; 6], cfg: &IntegratorConfig) -> f64 {
    let norm = |v: &[f64; 6]| {
        let s: f64 = (0..6)
            .map(|n| (v[n] / (cfg.abs_tol + cfg.rel_tol * y[n].abs())).powi(2))
            .sum();
        (s / 6.0).sqrt()
    };
    let (d0, d1) = (norm(y), norm(f0));
    let mut h0 = if d0 < 1e-10 || d1 < 1e-10 { 1e-6 } else { 0.01 * d0 / d1 };
    h0 = h0.min(cfg.max_step).min(cfg.t_end);
    let mut y1 = *y;
    for n in 0..6 {
        y1[n] += h0 * f0[n];
    }
    let h1 = match vector_field(h, &y1) {
        Ok(f1) => {
            let diff: [f64; 6] = std::array::from_fn(|n| f1[n] - f0[n]);
            let d2 = norm(&diff) / h0;
            if d1.max(d2) <= 1e-15 {
                (h0 * 1e-3).max(1e-6)
            } else {
                (0.01 / d1.max(d2)).powf(1.0 / 8.0)
            }
        }
        Err(_) => h0 * 0.1,
    };
    (100.0 * h0).min(h1).min(cfg.max_step).min(cfg.t_end)
}

fn accept(rec: &mut Recorder<'_>, t: f64, y: &[f64; 6], force: bool, cfg: &IntegratorConfig) -> Option<Termination> {
    rec.tr.accepted_steps += 1;
    if let Some(reason) = rec.guard(y) {
        let _ = rec.push(t, y);
        return Some(Termination::Singularity { t, reason });
    }
    if force || rec.tr.accepted_steps.is_multiple_of(cfg.sample_stride) {
        if let Err(reason) = rec.push(t, y) {
            return Some(Termination::Singularity { t, reason });
        }
    }
    None
}

fn run_dop853(h: &Observable, mut y: [f64; 6], cfg: &IntegratorConfig, fixed: Option<f64>, rec: &mut Recorder<'_>) -> Termination {
    let t_end = cfg.t_end;
    if t_end == 0.0 {
        return Termination::Completed;
    }
    let mut k0 = match vector_field(h, &y) {
        Ok(f) => f,
        Err(e) => return Termination::Singularity { t: 0.0, reason: e.to_string() },
    };
    let mut t = 0.0;
    let mut dt = fixed.unwrap_or_else(|| initial_step(h, &y, &k0, cfg));
    let dt_min = 1e-14 * t_end;
    let mut last_rejected = false;
    loop {
        let remaining = t_end - t;
        let is_last = dt >= remaining * (1.0 - 1e-12);
        if is_last {
            dt = remaining;
        }
        if fixed.is_none() && dt < dt_min && !is_last {
            return Termination::StepUnderflow { t, step: dt };
        }
        let attempt = dop853_attempt(h, &y, &k0, dt).and_then(|(y1, e5, e3)| {
            let k1 = vector_field(h, &y1)?;
            Ok((y1, e5, e3, k1))
        });
        let (y1, e5, e3, k1) = match attempt {
            Ok(v) => v,
            Err(e) => {
                if fixed.is_some() {
                    return Termination::Singularity { t, reason: e.to_string() };
                }
                rec.tr.rejected_steps += 1;
                dt *= 0.25;
                if dt < dt_min {
                    return Termination::StepUnderflow { t, step: dt };
                }
                last_rejected = true;
                continue;
            }
        };
        let err = if fixed.is_some() { 0.0 } else { hairer_norm(&y, &y1, &e5, &e3, dt, cfg) };
        if err <= 1.0 {
            t = if is_last { t_end } else { t + dt };
            y = y1;
            k0 = k1;
            if let Some(term) = accept(rec, t, &y, is_last, cfg) {
                return term;
            }
            if is_last {
                return Termination::Completed;
            }
            if fixed.is_none() {
                let fac11 = err.powf(1.0 / 8.0);
                let mut fac = (fac11 / 0.9).clamp(1.0 / 6.0, 1.0 / 0.333);
                if last_rejected {
                    fac = fac.max(1.0);
                }
                dt = (dt / fac).min(cfg.max_step);
            }
            last_rejected = false;
        } else {
            rec.tr.rejected_steps += 1;
            let fac11 = err.powf(1.0 / 8.0);
            dt /= (fac11 / 0.9).min(1.0 / 0.333);
            last_rejected = true;
        }
    }
}

fn run_midpoint(h: &Observable, mut y: [f64; 6], cfg: &IntegratorConfig, step: f64, rec: &mut Recorder<'_>) -> Termination {
    let t_end = cfg.t_end;
    let mut t = 0.0;
    while t < t_end {
        let is_last = t + step >= t_end * (1.0 - 1e-14);
        let dt = if is_last { t_end - t } else { step };
        // fixed-point iteration on the midpoint slope
        let mut f = match vector_field(h, &y) {
            Ok(f) => f,
            Err(e) => return Termination::Singularity { t, reason: e.to_string() },
        };
        let mut y1 = y;
        let mut converged = false;
        for _ in 0..100 {
            let next: [f64; 6] = std::array::from_fn(|n| y[n] + dt * f[n]);
            let delta = (0..6).map(|n| (next[n] - y1[n]).abs() / next[n].abs().max(1.0)).fold(0.0, f64::max);
            y1 = next;
            if delta < 1e-15 {
                converged = true;
                break;
            }
            let mid: [f64; 6] = std::array::from_fn(|n| 0.5 * (y[n] + y1[n]));
            f = match vector_field(h, &mid) {
                Ok(f) => f,
                Err(e) => return Termination::Singularity { t, reason: e.to_string() },
            };
        }
        if !converged {
            return Termination::StepUnderflow { t, step: dt };
        }
        y = y1;
        t = if is_last { t_end } else { t + dt };
        if let Some(term) = accept(rec, t, &y, is_last, cfg) {
            return term;
        }
    }
    Termination::Completed
}
