use super::report::{CheckReport, Protocol};
use crate::catalog::IdentityInstance;
use crate::derivs::{self, Der2Root, FormulaId};
use crate::error::{HeunError, Result};
use crate::heun::{ParamSet, Solution};
use crate::numerics::{c, integrate_adaptive_with, QuadConfig, ONE};

/// `n` equally spaced points covering `[a, b]`.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![0.5 * (a + b)],
        _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
    }
}

fn instance_report(inst: &IdentityInstance, protocol: Protocol, tol: f64) -> CheckReport {
    let mut r = CheckReport::new(inst.id().tag(), protocol, inst.params().values(), tol);
    r.seed_mode = Some(inst.seed_mode().label().to_string());
    r
}

/// Jet-derivative residual `max |F'(x) − I(x)| / max(1, max |I|)` over `grid`.
pub fn check_derivative(inst: &IdentityInstance, grid: &[f64], tol: f64) -> CheckReport {
    let mut report = instance_report(inst, Protocol::Derivative, tol);
    report.grid = grid.to_vec();
    let run = || -> Result<(f64, f64)> {
        let mut worst = 0.0f64;
        let mut scale = 1.0f64;
        for &x in grid {
            let (i, f) = inst.pair_jet(c(x, 0.0), 1)?;
            let r = (f.derivative(1) - i.value()).norm();
            worst = if r.is_nan() { f64::NAN } else { worst.max(r) };
            scale = scale.max(i.value().norm());
        }
        Ok((worst, scale))
    };
    match run() {
        Ok((worst, scale)) => report.finish(worst, scale),
        Err(e) => report.skip(&e),
    }
}

/// Two-point residual `|∫_a^b I − (F(b) − F(a))| / (1 + |F(b) − F(a)|)`.
pub fn check_quadrature(inst: &IdentityInstance, a: f64, b: f64, tol: f64) -> CheckReport {
    let mut report = instance_report(inst, Protocol::Quadrature, tol);
    report.grid = vec![a, b];
    let run = || -> Result<(f64, f64)> {
        let df = inst.antiderivative(b)? - inst.antiderivative(a)?;
        if a == b {
            return Ok((df.norm(), 1.0));
        }
        let cfg = QuadConfig { abs_tol: 1e-13, rel_tol: 1e-10, max_depth: 30 };
        let q = integrate_adaptive_with(|x| inst.integrand(x), a, b, &cfg)?;
        Ok(((q.value - df).norm(), 1.0 + df.norm()))
    };
    match run() {
        Ok((err, scale)) => report.finish(err, scale),
        Err(e) => report.skip(&e),
    }
}

/// Agreement of the printed pair with the generic construction, scaled by
/// `max(1, max |generic|)`.
pub fn check_transcription(inst: &IdentityInstance, grid: &[f64], tol: f64) -> CheckReport {
    let mut report = instance_report(inst, Protocol::Transcription, tol);
    report.grid = grid.to_vec();
    let run = || -> Result<(f64, f64)> {
        let mut worst = 0.0f64;
        let mut scale = 1.0f64;
        for &x in grid {
            let (i, f) = inst.pair_jet(c(x, 0.0), 0)?;
            let (gi, gf) = inst.generic_pair(x)?;
            let r = (i.value() - gi).norm().max((f.value() - gf).norm());
            worst = if r.is_nan() { f64::NAN } else { worst.max(r) };
            scale = scale.max(gi.norm()).max(gf.norm());
        }
        Ok((worst, scale))
    };
    match run() {
        Ok((worst, scale)) => report.finish(worst, scale),
        Err(e) => report.skip(&e),
    }
}

fn formula_value(fid: FormulaId, params: &ParamSet, x: f64) -> Result<num_complex::Complex64> {
    let xc = c(x, 0.0);
    match (fid, params) {
        (FormulaId::DhcAt0, ParamSet::Ch(p)) => derivs::dhc_at0(p),
        (FormulaId::DhcCase1, ParamSet::Ch(p)) => derivs::dhc_case1(p, xc),
        (FormulaId::DhcCase2, ParamSet::Ch(p)) => derivs::dhc_case2(p, xc, Der2Root::MinusOne),
        (FormulaId::DhcCase2S1, ParamSet::Ch(p)) => derivs::dhc_case2_s1(p, xc),
        (FormulaId::DhbAt0, ParamSet::Bc(p)) => derivs::dhb_at0(p),
        (FormulaId::DhbHyp, ParamSet::Bc(p)) => {
            let zero = c(0.0, 0.0);
            if p.beta != zero || p.delta != zero {
                return Err(HeunError::constraint("β = δ = 0", format!("β = {}, δ = {}", p.beta, p.delta)));
            }
            derivs::dhb_hyp(p.alpha, p.gamma, xc)
        }
        (FormulaId::DhbCase, ParamSet::Bc(p)) => derivs::dhb_case(p, xc),
        (fid, ps) => Err(HeunError::constraint("family", format!("{fid} cannot take {} parameters", ps.family()))),
    }
}

/// Closed-form derivative against coefficient 1 of the solution's Taylor jet.
/// The formulas at the origin are compared with the series coefficient `c₁`.
pub fn check_formula(fid: FormulaId, params: &ParamSet, grid: &[f64], tol: f64) -> CheckReport {
    let mut report = CheckReport::new(fid.tag(), Protocol::Formula, params.values(), tol);
    let at_origin = matches!(fid, FormulaId::DhcAt0 | FormulaId::DhbAt0);
    report.grid = if at_origin { vec![0.0] } else { grid.to_vec() };
    let run = || -> Result<(f64, f64)> {
        let sol = Solution::new(*params)?;
        let mut worst = 0.0f64;
        let mut scale = 1.0f64;
        for &x in &report.grid {
            let closed = formula_value(fid, params, x)?;
            let reference = if at_origin {
                sol.coeffs0().get(1).copied().unwrap_or(ONE)
            } else {
                sol.jet(c(x, 0.0), 1)?.derivative(1)
            };
            let r = (closed - reference).norm();
            worst = if r.is_nan() { f64::NAN } else { worst.max(r) };
            scale = scale.max(reference.norm());
        }
        Ok((worst, scale))
    };
    match run() {
        Ok((worst, scale)) => report.finish(worst, scale),
        Err(e) => report.skip(&e),
    }
}
