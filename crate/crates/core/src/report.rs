//! Randomized verification of Poisson-bracket tables.
//!
//! A suite is a list of [`Check`]s evaluated at seeded sample points; the
//! worst residual per identity is collected into a [`BracketReport`] that
//! serializes to the JSON shape used by the CLI.

use serde::{Deserialize, Serialize};

use crate::coalgebra::pbracket_at;
use crate::observable::Observable;

/// One identity to check pointwise.
#[derive(Debug, Clone)]
pub enum Check {
    /// `factor · {a, b} = rhs`.
    Bracket {
        label: String,
        a: Observable,
        b: Observable,
        factor: f64,
        rhs: Observable,
    },
    /// `lhs = rhs` as plain values.
    Value {
        label: String,
        lhs: Observable,
        rhs: Observable,
    },
}

impl Check {
    pub fn bracket(label: impl Into<String>, a: &Observable, b: &Observable, rhs: Observable) -> Self {
        Check::Bracket {
            label: label.into(),
            a: a.clone(),
            b: b.clone(),
            factor: 1.0,
            rhs,
        }
    }

    pub fn vanishing(label: impl Into<String>, a: &Observable, b: &Observable) -> Self {
        Self::bracket(label, a, b, Observable::constant(0.0))
    }

    pub fn value(label: impl Into<String>, lhs: &Observable, rhs: &Observable) -> Self {
        Check::Value {
            label: label.into(),
            lhs: lhs.clone(),
            rhs: rhs.clone(),
        }
    }

    pub fn with_factor(self, f: f64) -> Self {
        match self {
            Check::Bracket {
                label, a, b, rhs, ..
            } => Check::Bracket {
                label,
                a,
                b,
                factor: f,
                rhs,
            },
            other => other,
        }
    }

    pub fn label(&self) -> &str {
        match self {
            Check::Bracket { label, .. } | Check::Value { label, .. } => label,
        }
    }

    /// Scaled residual at `x`; evaluation failures count as infinitely bad.
    pub fn residual(&self, x: &[f64; 6]) -> f64 {
        self.try_residual(x).unwrap_or(f64::INFINITY)
    }

    fn try_residual(&self, x: &[f64; 6]) -> crate::Result<f64> {
        match self {
            Check::Bracket {
                a, b, factor, rhs, ..
            } => {
                let (br, mag) = pbracket_at(a, b, x)?;
                let r = rhs.value_at(x)?;
                let scale = 1f64.max(factor.abs() * mag).max(r.abs());
                Ok((factor * br - r).abs() / scale)
            }
            Check::Value { lhs, rhs, .. } => {
                let l = lhs.value_at(x)?;
                let r = rhs.value_at(x)?;
                Ok((l - r).abs() / 1f64.max(l.abs()).max(r.abs()))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub samples: usize,
    pub max_residual: f64,
    pub worst_point: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportGroup {
    pub group: String,
    pub identities: Vec<IdentityReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketReport {
    pub suite: String,
    pub groups: Vec<ReportGroup>,
}

impl BracketReport {
    pub fn new(suite: impl Into<String>) -> Self {
        BracketReport {
            suite: suite.into(),
            groups: Vec::new(),
        }
    }

    pub fn identities(&self) -> impl Iterator<Item = &IdentityReport> {
        self.groups.iter().flat_map(|g| g.identities.iter())
    }

    pub fn max_residual(&self) -> f64 {
        self.identities()
            .map(|i| i.max_residual)
            .fold(0.0, |acc, r| if r.is_nan() { f64::INFINITY } else { acc.max(r) })
    }

    pub fn passed(&self, threshold: f64) -> bool {
        self.max_residual() < threshold
    }

    pub fn group(&self, name: &str) -> Option<&ReportGroup> {
        self.groups.iter().find(|g| g.group == name)
    }

    pub fn identity(&self, label: &str) -> Option<&IdentityReport> {
        self.identities().find(|i| i.identity == label)
    }

    pub fn merge(&mut self, other: BracketReport) {
        self.groups.extend(other.groups);
    }
}

/// Evaluates every check at every point; ties keep the earliest point.
pub fn run_group(group: &str, checks: &[Check], points: &[[f64; 6]]) -> ReportGroup {
    let identities = checks
        .iter()
        .map(|c| {
            let mut worst = (f64::NEG_INFINITY, [f64::NAN; 6]);
            for x in points {
                let r = c.residual(x);
                if r > worst.0 || r.is_nan() {
                    worst = (if r.is_nan() { f64::INFINITY } else { r }, *x);
                }
            }
            IdentityReport {
                identity: c.label().to_string(),
                samples: points.len(),
                max_residual: worst.0.max(0.0),
                worst_point: worst.1.to_vec(),
            }
        })
        .collect();
    ReportGroup {
        group: group.to_string(),
        identities,
    }
}
