//! Differentiable scalar fields on phase space.
//!
//! An [`Observable`] is an immutable closure over six dual-number inputs.
//! Evaluating it on seeded inputs yields the value and the exact gradient in
//! one pass; observables compose with ordinary arithmetic and with chart maps.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernel::Dual;
use crate::state::{Chart, PhaseState};

type EvalFn = dyn Fn(&[Dual; 6]) -> Result<Dual> + Send + Sync;
type GuardFn = dyn Fn(&[f64; 6]) -> Option<String> + Send + Sync;
/// A phase-space map evaluated on dual numbers.
pub type PhaseMap = Arc<dyn Fn(&[Dual; 6]) -> Result<[Dual; 6]> + Send + Sync>;

#[derive(Clone)]
pub struct Observable {
    name: Arc<str>,
    chart: Option<Chart>,
    eval: Arc<EvalFn>,
    guard: Option<Arc<GuardFn>>,
}

impl fmt::Debug for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Observable")
            .field("name", &self.name)
            .field("chart", &self.chart)
            .finish()
    }
}

impl Observable {
    pub fn new<F>(name: impl Into<String>, chart: Option<Chart>, f: F) -> Self
    where
        F: Fn(&[Dual; 6]) -> Result<Dual> + Send + Sync + 'static,
    {
        Observable {
            name: name.into().into(),
            chart,
            eval: Arc::new(f),
            guard: None,
        }
    }

    /// The coordinate function picking out slot `slot` (0..3 positions, 3..6 momenta).
    pub fn coordinate(chart: Option<Chart>, slot: usize) -> Self {
        assert!(slot < 6, "phase space has six coordinates");
        let name = match chart {
            Some(c) => c.coordinate_names()[slot].to_string(),
            None => format!("x{slot}"),
        };
        Observable::new(name, chart, move |x| Ok(x[slot]))
    }

    pub fn constant(value: f64) -> Self {
        Observable::new(format!("{value}"), None, move |_| Ok(Dual::constant(value)))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn chart(&self) -> Option<Chart> {
        self.chart
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into().into();
        self
    }

    /// Attaches a singularity guard consulted by the integrator.
    pub fn with_guard<G>(mut self, guard: G) -> Self
    where
        G: Fn(&[f64; 6]) -> Option<String> + Send + Sync + 'static,
    {
        self.guard = Some(Arc::new(guard));
        self
    }

    pub fn guard_check(&self, x: &[f64; 6]) -> Option<String> {
        self.guard.as_ref().and_then(|g| g(x))
    }

    pub fn check_chart(&self, s: &PhaseState) -> Result<()> {
        match self.chart {
            Some(expected) if expected != s.chart => Err(Error::ChartMismatch {
                expected,
                got: s.chart,
            }),
            _ => Ok(()),
        }
    }

    pub fn eval_dual(&self, x: &[Dual; 6]) -> Result<Dual> {
        let v = (self.eval)(x)?;
        if !v.re.is_finite() || v.eps.iter().any(|e| !e.is_finite()) {
            return Err(Error::Domain(format!(
                "{} is not finite at {:?}",
                self.name,
                x.map(|d| d.re)
            )));
        }
        Ok(v)
    }

    pub fn value_at(&self, x: &[f64; 6]) -> Result<f64> {
        let v = (self.eval)(&Dual::constants(x))?;
        if !v.re.is_finite() {
            return Err(Error::Domain(format!("{} is not finite at {x:?}", self.name)));
        }
        Ok(v.re)
    }

    pub fn value(&self, s: &PhaseState) -> Result<f64> {
        self.check_chart(s)?;
        self.value_at(&s.coords)
    }

    /// Value and exact gradient at raw coordinates.
    pub fn jet_at(&self, x: &[f64; 6]) -> Result<Dual> {
        self.eval_dual(&Dual::seed(x))
    }

    pub fn scaled(&self, c: f64) -> Observable {
        let inner = self.clone();
        Observable::new(format!("{c}*{}", self.name), self.chart, move |x| {
            Ok(inner.eval_dual(x)? * c)
        })
    }

    pub fn map<F>(&self, name: impl Into<String>, f: F) -> Observable
    where
        F: Fn(Dual) -> Dual + Send + Sync + 'static,
    {
        let inner = self.clone();
        Observable::new(name, self.chart, move |x| Ok(f(inner.eval_dual(x)?)))
    }

    pub fn zip<F>(&self, other: &Observable, name: impl Into<String>, f: F) -> Observable
    where
        F: Fn(Dual, Dual) -> Dual + Send + Sync + 'static,
    {
        let a = self.clone();
        let b = other.clone();
        Observable::new(name, self.chart.or(other.chart), move |x| {
            Ok(f(a.eval_dual(x)?, b.eval_dual(x)?))
        })
    }

    pub fn square(&self) -> Observable {
        self.map(format!("{}^2", self.name), |v| v * v)
    }

    /// `self ∘ map`, relabelled to the chart the map starts from.
    pub fn pullback(&self, chart: Option<Chart>, map: PhaseMap) -> Observable {
        let inner = self.clone();
        Observable::new(self.name.to_string(), chart, move |x| {
            let y = map(x)?;
            inner.eval_dual(&y)
        })
    }
}

fn binary(a: &Observable, b: &Observable, op: &str, f: fn(Dual, Dual) -> Dual) -> Observable {
    a.zip(b, format!("({} {op} {})", a.name, b.name), f)
}

impl Add for &Observable {
    type Output = Observable;
    fn add(self, o: &Observable) -> Observable {
        binary(self, o, "+", |x, y| x + y)
    }
}

impl Sub for &Observable {
    type Output = Observable;
    fn sub(self, o: &Observable) -> Observable {
        binary(self, o, "-", |x, y| x - y)
    }
}

impl Mul for &Observable {
    type Output = Observable;
    fn mul(self, o: &Observable) -> Observable {
        binary(self, o, "*", |x, y| x * y)
    }
}

impl Add for Observable {
    type Output = Observable;
    fn add(self, o: Observable) -> Observable {
        &self + &o
    }
}

impl Sub for Observable {
    type Output = Observable;
    fn sub(self, o: Observable) -> Observable {
        &self - &o
    }
}

impl Mul for Observable {
    type Output = Observable;
    fn mul(self, o: Observable) -> Observable {
        &self * &o
    }
}

impl Mul<f64> for &Observable {
    type Output = Observable;
    fn mul(self, c: f64) -> Observable {
        self.scaled(c)
    }
}

impl Neg for &Observable {
    type Output = Observable;
    fn neg(self) -> Observable {
        self.map(format!("-{}", self.name), |v| -v)
    }
}
