use super::{lift, nonpositive_integer, sum_series, SpecialFnConfig};
use crate::error::{HeunError, Result};
use crate::numerics::{Cx, Jet, ONE};

const HYP1F1_CAP: f64 = 4.0;
const HYP2F1_CAP: f64 = 0.9;

pub(crate) fn hyp1f1_series(a: Cx, b: Cx, z: Cx, cfg: &SpecialFnConfig) -> Result<Cx> {
    if nonpositive_integer(b) {
        return Err(HeunError::domain(format!("1F1 lower parameter {b} is a non-positive integer")));
    }
    sum_series(ONE, |n| (a + n as f64) / ((b + n as f64) * (n + 1) as f64) * z, cfg, "1F1")
}

/// Kummer's function `₁F₁(a; b; z)` by its power series, `|z| ≤ 4`.
pub fn hyp1f1(a: Cx, b: Cx, z: Cx) -> Result<Cx> {
    hyp1f1_with(a, b, z, &SpecialFnConfig::default())
}

pub fn hyp1f1_with(a: Cx, b: Cx, z: Cx, cfg: &SpecialFnConfig) -> Result<Cx> {
    cfg.validate()?;
    if z.norm() > HYP1F1_CAP {
        return Err(HeunError::domain(format!("1F1 argument {z} outside |z| <= {HYP1F1_CAP}")));
    }
    hyp1f1_series(a, b, z, cfg)
}

/// Gauss's function `₂F₁(a, b; c; z)` by its power series, `|z| ≤ 0.9`.
pub fn hyp2f1(a: Cx, b: Cx, c: Cx, z: Cx) -> Result<Cx> {
    hyp2f1_with(a, b, c, z, &SpecialFnConfig::default())
}

pub fn hyp2f1_with(a: Cx, b: Cx, c: Cx, z: Cx, cfg: &SpecialFnConfig) -> Result<Cx> {
    cfg.validate()?;
    if nonpositive_integer(c) {
        return Err(HeunError::domain(format!("2F1 lower parameter {c} is a non-positive integer")));
    }
    if z.norm() > HYP2F1_CAP {
        return Err(HeunError::domain(format!("2F1 argument {z} outside |z| <= {HYP2F1_CAP}")));
    }
    sum_series(
        ONE,
        |n| {
            let nf = n as f64;
            (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z
        },
        cfg,
        "2F1",
    )
}

/// `₁F₁(a; b; ·)` composed with a jet, via `d^k/dz^k ₁F₁ = (a)_k/(b)_k ₁F₁(a+k; b+k; z)`.
pub fn hyp1f1_jet(a: Cx, b: Cx, arg: &Jet) -> Result<Jet> {
    lift(arg, |z0, order| {
        let mut out = Vec::with_capacity(order + 1);
        let mut pre = ONE;
        for k in 0..=order {
            let kf = k as f64;
            out.push(pre * hyp1f1(a + kf, b + kf, z0)?);
            pre *= (a + kf) / ((b + kf) * (kf + 1.0));
        }
        Ok(out)
    })
}

/// `₂F₁(a, b; c; ·)` composed with a jet.
pub fn hyp2f1_jet(a: Cx, b: Cx, c: Cx, arg: &Jet) -> Result<Jet> {
    lift(arg, |z0, order| {
        let mut out = Vec::with_capacity(order + 1);
        let mut pre = ONE;
        for k in 0..=order {
            let kf = k as f64;
            out.push(pre * hyp2f1(a + kf, b + kf, c + kf, z0)?);
            pre *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0));
        }
        Ok(out)
    })
}
