use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use super::SuiteConfig;
use crate::error::HeunError;
use crate::numerics::Cx;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Protocol {
    Derivative,
    Quadrature,
    Transcription,
    Formula,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SkipReason {
    Resonant,
    Constraint,
    Convergence,
    Domain,
}

impl SkipReason {
    pub fn from_error(e: &HeunError) -> Self {
        match e {
            HeunError::Resonance { .. } => SkipReason::Resonant,
            HeunError::Constraint { .. } => SkipReason::Constraint,
            HeunError::Convergence { .. } => SkipReason::Convergence,
            HeunError::Domain(_) | HeunError::InvalidInstance(_) | HeunError::Parse(_) => SkipReason::Domain,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped { reason: SkipReason, detail: String },
    Flagged { note: String },
}

impl Status {
    pub fn is_pass(&self) -> bool {
        matches!(self, Status::Pass)
    }

    pub fn skipped(e: &HeunError) -> Self {
        Status::Skipped { reason: SkipReason::from_error(e), detail: e.to_string() }
    }
}

/// Outcome of one check, or of a sweep of draws reduced to its worst draw.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub subject: String,
    pub protocol: Protocol,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed_mode: Option<String>,
    #[serde(serialize_with = "ser_params")]
    pub params: Vec<Cx>,
    #[serde(serialize_with = "ser_floats")]
    pub grid: Vec<f64>,
    #[serde(serialize_with = "ser_float")]
    pub max_abs_err: f64,
    #[serde(serialize_with = "ser_float")]
    pub max_rel_err: f64,
    #[serde(serialize_with = "ser_float")]
    pub scale: f64,
    #[serde(serialize_with = "ser_float")]
    pub tolerance: f64,
    pub status: Status,
    pub draws: usize,
    pub failures: usize,
    pub skipped: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    pub(crate) fn new(subject: impl Into<String>, protocol: Protocol, params: Vec<Cx>, tolerance: f64) -> Self {
        CheckReport {
            subject: subject.into(),
            protocol,
            seed_mode: None,
            params,
            grid: Vec::new(),
            max_abs_err: 0.0,
            max_rel_err: 0.0,
            scale: 1.0,
            tolerance,
            status: Status::Pass,
            draws: 1,
            failures: 0,
            skipped: 0,
            note: None,
        }
    }

    /// Fills in errors and derives the status from the tolerance.
    pub(crate) fn finish(mut self, max_abs_err: f64, scale: f64) -> Self {
        self.max_abs_err = max_abs_err;
        self.scale = scale;
        self.max_rel_err = max_abs_err / scale;
        if !self.max_rel_err.is_finite() {
            self.status = Status::Flagged { note: "non-finite residual".into() };
            self.failures = 1;
        } else if self.max_rel_err <= self.tolerance {
            self.status = Status::Pass;
        } else {
            self.status = Status::Fail;
            self.failures = 1;
        }
        self
    }

    pub(crate) fn skip(mut self, e: &HeunError) -> Self {
        self.status = Status::skipped(e);
        self.skipped = 1;
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status.is_pass()
    }

    /// Reduces per-draw reports of one subject to a single record carrying the worst draw.
    pub(crate) fn aggregate(reports: Vec<CheckReport>) -> Option<CheckReport> {
        let draws = reports.len();
        let failures = reports.iter().map(|r| r.failures).sum();
        let skipped = reports.iter().map(|r| r.skipped).sum();
        let evaluated: Vec<&CheckReport> =
            reports.iter().filter(|r| !matches!(r.status, Status::Skipped { .. })).collect();
        let worst = evaluated
            .iter()
            .copied()
            .max_by(|a, b| {
                let key = |r: &CheckReport| if r.max_rel_err.is_nan() { f64::INFINITY } else { r.max_rel_err };
                key(a).total_cmp(&key(b))
            })
            .or_else(|| reports.first())?;
        let mut out = worst.clone();
        out.draws = draws;
        out.failures = failures;
        out.skipped = skipped;
        if let Some(bad) = reports.iter().find(|r| matches!(r.status, Status::Flagged { .. })) {
            out.status = bad.status.clone();
        } else if failures > 0 {
            out.status = Status::Fail;
        } else if evaluated.is_empty() {
            out.status = worst.status.clone();
        } else {
            out.status = Status::Pass;
        }
        Some(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub flagged: usize,
    pub identities: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub checks: Vec<CheckReport>,
    pub summary: Summary,
}

impl SuiteReport {
    pub(crate) fn assemble(config: SuiteConfig, checks: Vec<CheckReport>, identities: usize) -> Self {
        let count = |f: fn(&Status) -> bool| checks.iter().filter(|c| f(&c.status)).count();
        let summary = Summary {
            total: checks.len(),
            pass: count(|s| matches!(s, Status::Pass)),
            fail: count(|s| matches!(s, Status::Fail)),
            skipped: count(|s| matches!(s, Status::Skipped { .. })),
            flagged: count(|s| matches!(s, Status::Flagged { .. })),
            identities,
        };
        SuiteReport { config, checks, summary }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialisation is infallible")
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckReport> {
        self.checks.iter().filter(|c| matches!(c.status, Status::Fail))
    }
}

/// Seventeen significant digits; non-finite values become `null`.
pub(crate) fn float_raw(v: f64) -> Box<RawValue> {
    let text = if v.is_finite() { format!("{v:.16e}") } else { "null".to_string() };
    RawValue::from_string(text).expect("formatted float is valid JSON")
}

pub(crate) fn ser_float<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    float_raw(*v).serialize(s)
}

pub(crate) fn ser_floats<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&float_raw(*x))?;
    }
    seq.end()
}

fn ser_params<S: Serializer>(v: &[Cx], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        seq.serialize_element(&[float_raw(z.re), float_raw(z.im)])?;
    }
    seq.end()
}
