use std::collections::BTreeMap;
use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use curvkepler::coalgebra::{casimirs, three_site, verify_casimirs, verify_sl2z};
use curvkepler::dynamics::{drift_report, integrate, write_csv, Drift, IntegratorConfig, Method, Termination};
use curvkepler::report::BracketReport;
use curvkepler::sampling;
use curvkepler::spaces::{
    convert, curvature, hamiltonian, FamilyKind, HamiltonianSpec, Kind, Preset, SpaceParams, DEFAULT_GAMMA,
};
use curvkepler::symmetry::{
    constants, independence_rank, lrl_from, so4_generators, verify_so4_generators, verify_lrl_vector,
};
use curvkepler::{Chart, Observable, PhaseState};
use serde::Serialize;

use crate::config::{pick, FileConfig};
use crate::{Cli, Command, SpaceArgs};

pub const SCHEMA: u32 = 1;
const SEED_ENV: &str = "CURVKEPLER_SEED";

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

fn invalid(e: impl Display) -> Failure {
    Failure {
        code: 2,
        message: e.to_string(),
    }
}

fn io_failure(e: impl Display) -> Failure {
    Failure {
        code: 2,
        message: format!("cannot write output: {e}"),
    }
}

#[derive(Serialize)]
struct ParamsOut {
    z: f64,
    kappa2: f64,
    gamma: f64,
    k: f64,
}

impl From<&SpaceParams> for ParamsOut {
    fn from(p: &SpaceParams) -> Self {
        ParamsOut {
            z: p.z,
            kappa2: p.kappa2,
            gamma: p.gamma,
            k: p.k(),
        }
    }
}

fn seed(flag: Option<u64>, file: &FileConfig) -> Result<u64, Failure> {
    if let Some(s) = flag.or(file.seed) {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| invalid(format!("{SEED_ENV} is not an unsigned integer: '{v}'"))),
        Err(_) => Ok(0),
    }
}

fn space(a: &SpaceArgs, f: &FileConfig) -> Result<SpaceParams, Failure> {
    let gamma = pick(a.gamma, f.gamma, DEFAULT_GAMMA);
    let flags_give_raw = a.z.is_some() || a.kappa2.is_some();
    let preset = a.preset.clone().or(if flags_give_raw { None } else { f.preset.clone() });
    let params = match preset {
        Some(name) => {
            let (z, kappa2) = name.parse::<Preset>().map_err(invalid)?.kappas();
            SpaceParams::new(z, kappa2, gamma)
        }
        None => {
            let z = a
                .z
                .or(f.z)
                .ok_or_else(|| invalid("give either a preset or a value for z"))?;
            SpaceParams::new(z, pick(a.kappa2, f.kappa2, 1.0), gamma)
        }
    };
    params.map_err(invalid)
}

fn family(flag: &Option<String>, f: &FileConfig) -> Result<FamilyKind, Failure> {
    flag.clone()
        .or(f.family.clone())
        .ok_or_else(|| invalid("a family is required (free-nc, free-cc, kepler-nc, kepler-cc)"))?
        .parse()
        .map_err(invalid)
}

fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(io_failure),
        None => std::io::stdout().write_all(bytes).map_err(io_failure),
    }
}

fn json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut s = serde_json::to_vec_pretty(value).expect("report types serialize");
    s.push(b'\n');
    s
}

pub fn run(cli: Cli) -> Result<u8, Failure> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p).map_err(invalid)?,
        None => FileConfig::default(),
    };
    let seed = seed(cli.seed, &file)?;
    let out = cli.output.as_deref();
    match cli.command {
        Command::Verify {
            space: s,
            suite,
            samples,
            threshold,
            perturb,
        } => verify(
            &space(&s, &file)?,
            &pick(suite, file.suite.clone(), "all".into()),
            pick(samples, file.samples, 100),
            pick(threshold, file.threshold, 1e-8),
            perturb,
            seed,
            out,
        ),
        Command::Simulate {
            space: s,
            family: fam,
            state,
            state_chart,
            t_end,
            rel_tol,
            abs_tol,
            max_step,
            sample_stride,
            method,
            step,
            monitors,
            summary,
        } => {
            let params = space(&s, &file)?;
            let kind = family(&fam, &file)?;
            let defaults = IntegratorConfig::default();
            let method = match pick(method, file.method.clone(), "dop853".into()).as_str() {
                "dop853" => Method::Dop853,
                m @ ("midpoint" | "dop853-fixed") => {
                    let step = step
                        .or(file.step)
                        .ok_or_else(|| invalid(format!("method {m} needs a step")))?;
                    if m == "midpoint" {
                        Method::ImplicitMidpoint { step }
                    } else {
                        Method::Dop853Fixed { step }
                    }
                }
                other => return Err(invalid(format!("unknown method '{other}'"))),
            };
            let cfg = IntegratorConfig {
                rel_tol: pick(rel_tol, file.rel_tol, defaults.rel_tol),
                abs_tol: pick(abs_tol, file.abs_tol, defaults.abs_tol),
                max_step: pick(max_step, file.max_step, defaults.max_step),
                t_end: pick(t_end, file.t_end, 1.0),
                sample_stride: pick(sample_stride, file.sample_stride, 1),
                method,
            };
            let state = state
                .or(file.state.clone())
                .ok_or_else(|| invalid("an initial state is required"))?;
            let state_chart = state_chart.or(file.state_chart.clone());
            let monitors = pick(monitors, file.monitors.clone(), "constants".into());
            simulate(SimulateArgs {
                params,
                kind,
                state,
                state_chart,
                cfg,
                monitors,
                output: out,
                summary,
            })
        }
        Command::Curvature {
            space: s,
            kind,
            chart,
            lo,
            hi,
            n,
        } => {
            let params = space(&s, &file)?;
            let kind: Kind = pick(kind, file.kind.clone(), "cc".into()).parse().map_err(invalid)?;
            let chart: Chart = pick(chart, file.chart.clone(), "beltrami-like".into())
                .parse()
                .map_err(invalid)?;
            let (dlo, dhi) = if chart.is_polar() {
                (vec![0.3, 0.4, 0.3], vec![1.1, 2.6, 5.0])
            } else {
                (vec![0.2; 3], vec![1.0; 3])
            };
            let lo = pick(lo, file.lo.clone(), dlo);
            let hi = pick(hi, file.hi.clone(), dhi);
            curvature_scan(&params, kind, chart, &lo, &hi, pick(n, file.n, 5), out)
        }
        Command::Rank {
            space: s,
            family: fam,
            observables,
            samples,
        } => {
            let params = space(&s, &file)?;
            let kind = family(&fam, &file)?;
            let default_names = ["C2", "C2mid", "C3", "H"].map(String::from).to_vec();
            let names = pick(observables, file.observables.clone(), default_names);
            rank(&params, kind, &names, pick(samples, file.samples, 50), seed, out)
        }
        Command::ExportPresets => export_presets(out),
    }
}

#[derive(Serialize)]
struct VerifyOut<'a> {
    schema: u32,
    command: &'static str,
    suite: &'a str,
    params: ParamsOut,
    samples: usize,
    seed: u64,
    threshold: f64,
    perturb: Option<f64>,
    passed: bool,
    max_residual: f64,
    reports: Vec<BracketReport>,
}

fn verify(
    p: &SpaceParams,
    suite: &str,
    samples: usize,
    threshold: f64,
    perturb: Option<f64>,
    seed: u64,
    out: Option<&Path>,
) -> Result<u8, Failure> {
    if samples == 0 {
        return Err(invalid("samples must be positive"));
    }
    if !(threshold > 0.0) {
        return Err(invalid("threshold must be positive"));
    }
    let names: Vec<&str> = match suite {
        "all" => vec!["sl2z", "casimirs", "so4", "lrl"],
        s @ ("sl2z" | "casimirs" | "so4" | "lrl") => vec![s],
        other => return Err(invalid(format!("unknown suite '{other}'"))),
    };
    let mut realization = three_site(p.z);
    let mut gens = so4_generators(p);
    if let Some(f) = perturb {
        realization = realization.perturbed(f);
        gens = gens.perturbed("J02", f);
    }
    let reports: Vec<BracketReport> = names
        .iter()
        .map(|n| match *n {
            "sl2z" => verify_sl2z(&realization, samples, seed),
            "casimirs" => verify_casimirs(&realization, &casimirs(p.z), samples, seed),
            "so4" => verify_so4_generators(&gens, samples, seed),
            _ => verify_lrl_vector(&lrl_from(&gens), samples, seed),
        })
        .collect();
    let max_residual = reports.iter().map(|r| r.max_residual()).fold(0.0, f64::max);
    let passed = reports.iter().all(|r| r.passed(threshold));
    let body = VerifyOut {
        schema: SCHEMA,
        command: "verify",
        suite,
        params: p.into(),
        samples,
        seed,
        threshold,
        perturb,
        passed,
        max_residual,
        reports,
    };
    emit(out, &json(&body))?;
    Ok(if passed { 0 } else { 1 })
}

struct SimulateArgs<'a> {
    params: SpaceParams,
    kind: FamilyKind,
    state: Vec<f64>,
    state_chart: Option<String>,
    cfg: IntegratorConfig,
    monitors: String,
    output: Option<&'a Path>,
    summary: Option<PathBuf>,
}

#[derive(Serialize)]
struct SimulateOut<'a> {
    schema: u32,
    command: &'static str,
    family: FamilyKind,
    params: ParamsOut,
    chart: &'static str,
    config: &'a IntegratorConfig,
    termination: &'a Termination,
    samples: usize,
    accepted_steps: usize,
    rejected_steps: usize,
    drift: Vec<Drift>,
}

fn simulate(a: SimulateArgs<'_>) -> Result<u8, Failure> {
    a.cfg.validate().map_err(invalid)?;
    let spec = HamiltonianSpec::new(a.kind.family(), a.params).map_err(invalid)?;
    let chart = spec.family.polar_chart().expect("built-in families have a polar chart");
    let coords: [f64; 6] = a
        .state
        .as_slice()
        .try_into()
        .map_err(|_| invalid(format!("the state needs 6 coordinates, got {}", a.state.len())))?;
    let given: Chart = match &a.state_chart {
        Some(c) => c.parse().map_err(invalid)?,
        None => chart,
    };
    let s0 = convert(&PhaseState::new(given, coords), &a.params, chart).map_err(invalid)?;
    let h = hamiltonian(&spec, chart).map_err(invalid)?;
    h.value(&s0).map_err(invalid)?;
    let monitors: Vec<Observable> = match a.monitors.as_str() {
        "constants" => constants(&spec, chart).map_err(invalid)?.observables(),
        "none" => Vec::new(),
        other => return Err(invalid(format!("unknown monitor set '{other}'"))),
    };
    let tr = integrate(&h, &s0, &a.cfg, &monitors).map_err(invalid)?;

    let mut csv = Vec::new();
    write_csv(&tr, &mut csv).map_err(io_failure)?;
    emit(a.output, &csv)?;
    let body = SimulateOut {
        schema: SCHEMA,
        command: "simulate",
        family: a.kind,
        params: (&a.params).into(),
        chart: chart.name(),
        config: &a.cfg,
        termination: &tr.termination,
        samples: tr.times.len(),
        accepted_steps: tr.accepted_steps,
        rejected_steps: tr.rejected_steps,
        drift: drift_report(&tr),
    };
    let summary = json(&body);
    match (&a.summary, a.output) {
        (Some(p), _) => std::fs::write(p, &summary).map_err(io_failure)?,
        (None, Some(_)) => std::io::stdout().write_all(&summary).map_err(io_failure)?,
        (None, None) => std::io::stderr().write_all(&summary).map_err(io_failure)?,
    }
    match &tr.termination {
        Termination::Completed => Ok(0),
        Termination::Singularity { t, reason } => {
            eprintln!("stopped at t = {t}: {reason}");
            Ok(3)
        }
        Termination::StepUnderflow { t, step } => {
            eprintln!("stopped at t = {t}: step size {step:e} underflowed near a singularity");
            Ok(3)
        }
    }
}

fn curvature_scan(
    p: &SpaceParams,
    kind: Kind,
    chart: Chart,
    lo: &[f64],
    hi: &[f64],
    n: usize,
    out: Option<&Path>,
) -> Result<u8, Failure> {
    if lo.len() != 3 || hi.len() != 3 {
        return Err(invalid("grid bounds need three values each"));
    }
    if n == 0 {
        return Err(invalid("the grid needs at least one point per axis"));
    }
    let axis = |k: usize, i: usize| {
        if n == 1 {
            lo[k]
        } else {
            lo[k] + (hi[k] - lo[k]) * i as f64 / (n - 1) as f64
        }
    };
    let fmt = |v: f64| format!("{v:.16e}");
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["x1", "x2", "x3", "K12", "K13", "K23", "K", "K_closed", "abs_diff"])
        .map_err(io_failure)?;
    let mut worst: Option<f64> = None;
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let x = [axis(0, i), axis(1, j), axis(2, l)];
                let rep = curvature(chart, kind, x, p)
                    .map_err(|e| invalid(format!("grid point {x:?} is not regular: {e}")))?;
                let c = rep.numeric;
                let mut row = vec![fmt(x[0]), fmt(x[1]), fmt(x[2]), fmt(c.k12), fmt(c.k13), fmt(c.k23), fmt(c.scalar)];
                match rep.closed {
                    Some(cl) => {
                        let d = c.max_abs_diff(&cl);
                        worst = Some(worst.unwrap_or(0.0).max(d));
                        row.push(fmt(cl.scalar));
                        row.push(fmt(d));
                    }
                    None => row.extend([String::new(), String::new()]),
                }
                w.write_record(&row).map_err(io_failure)?;
            }
        }
    }
    let mut last = vec![String::new(); 9];
    last[0] = "max_abs_diff".into();
    last[8] = worst.map(fmt).unwrap_or_default();
    w.write_record(&last).map_err(io_failure)?;
    let bytes = w.into_inner().map_err(io_failure)?;
    emit(out, &bytes)?;
    Ok(0)
}

#[derive(Serialize)]
struct RankOut<'a> {
    schema: u32,
    command: &'static str,
    family: FamilyKind,
    params: ParamsOut,
    observables: &'a [String],
    samples: usize,
    seed: u64,
    expected_rank: usize,
    modal_rank: usize,
    histogram: BTreeMap<usize, usize>,
    passed: bool,
}

fn rank(p: &SpaceParams, kind: FamilyKind, names: &[String], samples: usize, seed: u64, out: Option<&Path>) -> Result<u8, Failure> {
    if samples == 0 || names.is_empty() {
        return Err(invalid("rank needs at least one sample and one observable"));
    }
    let spec = HamiltonianSpec::new(kind.family(), *p).map_err(invalid)?;
    let chart = spec.family.polar_chart().expect("built-in families have a polar chart");
    let set = constants(&spec, chart).map_err(invalid)?;
    let h = hamiltonian(&spec, chart).map_err(invalid)?;
    let obs: Vec<Observable> = names
        .iter()
        .map(|n| match n.as_str() {
            "H" => Ok(h.clone()),
            other => set.get(other).cloned().ok_or_else(|| {
                invalid(format!("{other} is not available for {}; choose from H, {}", spec.family.name(), set.names().join(", ")))
            }),
        })
        .collect::<Result<_, _>>()?;
    let mut histogram = BTreeMap::new();
    for x in sampling::points(chart, p, samples, seed) {
        let r = independence_rank(&obs, &PhaseState::new(chart, x)).map_err(invalid)?;
        *histogram.entry(r).or_insert(0) += 1;
    }
    let modal_rank = histogram
        .iter()
        .max_by_key(|(r, c)| (**c, std::cmp::Reverse(**r)))
        .map(|(r, _)| *r)
        .unwrap_or(0);
    let expected_rank = names.len();
    let passed = modal_rank == expected_rank;
    let body = RankOut {
        schema: SCHEMA,
        command: "rank",
        family: kind,
        params: p.into(),
        observables: names,
        samples,
        seed,
        expected_rank,
        modal_rank,
        histogram,
        passed,
    };
    emit(out, &json(&body))?;
    if !passed {
        eprintln!("modal rank {modal_rank} differs from the {expected_rank} requested functions");
    }
    Ok(if passed { 0 } else { 1 })
}

#[derive(Serialize)]
struct PresetOut {
    name: &'static str,
    z: f64,
    kappa2: f64,
    gamma: f64,
    k: f64,
    riemannian: bool,
}

#[derive(Serialize)]
struct PresetsOut {
    schema: u32,
    command: &'static str,
    presets: Vec<PresetOut>,
}

fn export_presets(out: Option<&Path>) -> Result<u8, Failure> {
    let presets = Preset::ALL
        .iter()
        .map(|p| {
            let s = p.params();
            PresetOut {
                name: p.name(),
                z: s.z,
                kappa2: s.kappa2,
                gamma: s.gamma,
                k: s.k(),
                riemannian: s.is_riemannian(),
            }
        })
        .collect();
    emit(
        out,
        &json(&PresetsOut {
            schema: SCHEMA,
            command: "export-presets",
            presets,
        }),
    )?;
    Ok(0)
}
