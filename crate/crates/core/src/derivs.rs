//! Closed-form first derivatives of confluent and biconfluent Heun functions.
//!
//! Dependent parameters must be supplied by the caller; ties are checked to
//! `1e-12` absolute and rejected with [`HeunError::Constraint`] beyond that.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{HeunError, Result};
use crate::heun::{BcParams, ChParams, ParamSet, Solution};
use crate::numerics::{c, powc, Branch, Cx, ONE, ZERO};
use crate::special::hyp1f1;

const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormulaId {
    #[serde(rename = "DHC_AT0")]
    DhcAt0,
    #[serde(rename = "DHC_CASE1")]
    DhcCase1,
    #[serde(rename = "DHC_CASE2")]
    DhcCase2,
    /// The second degenerate case with the root `s = +1` and its normalising constant.
    #[serde(rename = "DHC_CASE2_S1")]
    DhcCase2S1,
    #[serde(rename = "DHB_AT0")]
    DhbAt0,
    #[serde(rename = "DHB_HYP")]
    DhbHyp,
    #[serde(rename = "DHB_CASE")]
    DhbCase,
}

impl FormulaId {
    pub const ALL: [FormulaId; 7] = [
        FormulaId::DhcAt0,
        FormulaId::DhcCase1,
        FormulaId::DhcCase2,
        FormulaId::DhcCase2S1,
        FormulaId::DhbAt0,
        FormulaId::DhbHyp,
        FormulaId::DhbCase,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            FormulaId::DhcAt0 => "DHC_AT0",
            FormulaId::DhcCase1 => "DHC_CASE1",
            FormulaId::DhcCase2 => "DHC_CASE2",
            FormulaId::DhcCase2S1 => "DHC_CASE2_S1",
            FormulaId::DhbAt0 => "DHB_AT0",
            FormulaId::DhbHyp => "DHB_HYP",
            FormulaId::DhbCase => "DHB_CASE",
        }
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FormulaId {
    type Err = HeunError;
    fn from_str(s: &str) -> Result<Self> {
        FormulaId::ALL
            .into_iter()
            .find(|f| f.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| HeunError::Parse(format!("unknown formula '{s}'")))
    }
}

/// Root of the indicial step in the second degenerate case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Der2Root {
    MinusOne,
    MinusOneMinusBeta,
}

fn tie(name: &str, got: Cx, want: Cx) -> Result<()> {
    let gap = (got - want).norm();
    if gap > TIE_TOL || !gap.is_finite() {
        return Err(HeunError::constraint(name, format!("off by {gap:.3e}")));
    }
    Ok(())
}

fn ch_solution(p: ChParams, x: Cx) -> Result<Cx> {
    Ok(Solution::new(ParamSet::Ch(p))?.eval(x)?.0)
}

fn bc_solution(p: BcParams, x: Cx) -> Result<Cx> {
    Ok(Solution::new(ParamSet::Bc(p))?.eval(x)?.0)
}

/// `H_c'(0) = ((1+γ-α)β + γ - α + 2η) / (2(1+β))`.
pub fn dhc_at0(p: &ChParams) -> Result<Cx> {
    let den = 2.0 * (ONE + p.beta);
    if den.norm() < TIE_TOL {
        return Err(HeunError::domain("H_c'(0) undefined for beta = -1"));
    }
    Ok(((ONE + p.gamma - p.alpha) * p.beta + p.gamma - p.alpha + 2.0 * p.eta) / den)
}

/// `δ` forced by the first degenerate case.
pub fn case1_delta(alpha: Cx, beta: Cx, gamma: Cx) -> Cx {
    -(beta + gamma + 2.0) * alpha / 2.0
}

/// `η` forced by the second degenerate case.
pub fn case2_eta(alpha: Cx, beta: Cx, gamma: Cx) -> Cx {
    (beta + 1.0) * alpha / 2.0 - (gamma + 1.0) * beta / 2.0 - gamma / 2.0
}

/// Parameters of the shifted function in the first degenerate case.
pub fn case1_shifted(p: &ChParams) -> ChParams {
    ChParams::new(
        p.alpha,
        p.beta + 1.0,
        p.gamma + 1.0,
        -(p.beta + p.gamma) * p.alpha / 2.0,
        p.beta / 2.0 + p.gamma / 2.0 - p.alpha / 2.0 + 0.5 + p.eta,
    )
}

/// Derivative in the first degenerate case `δ = -(β+γ+2)α/2`.
pub fn dhc_case1(p: &ChParams, x: Cx) -> Result<Cx> {
    tie("case 1: delta = -(beta+gamma+2)alpha/2", p.delta, case1_delta(p.alpha, p.beta, p.gamma))?;
    Ok(dhc_at0(p)? * ch_solution(case1_shifted(p), x)?)
}

fn case2_shifted(p: &ChParams, s: Cx) -> ChParams {
    ChParams::new(
        p.alpha,
        2.0 * s + p.beta,
        p.gamma + 1.0,
        p.alpha / 2.0 + p.delta,
        (p.alpha - p.gamma) * p.beta / 2.0 + p.alpha / 2.0 - p.gamma / 2.0 + 0.5,
    )
}

/// The second degenerate case as printed: `x^s H_c(α, 2s+β, γ+1, α/2+δ, …; x)`.
pub fn dhc_case2(p: &ChParams, x: Cx, root: Der2Root) -> Result<Cx> {
    tie("case 2: eta = (beta+1)alpha/2 - (gamma+1)beta/2 - gamma/2", p.eta, case2_eta(p.alpha, p.beta, p.gamma))?;
    let s = match root {
        Der2Root::MinusOne => c(-1.0, 0.0),
        Der2Root::MinusOneMinusBeta => {
            if p.beta.re >= -1.0 {
                return Err(HeunError::constraint("s = -1-beta needs Re(beta) < -1", format!("beta = {}", p.beta)));
            }
            -ONE - p.beta
        }
    };
    if x == ZERO {
        return Err(HeunError::domain("x^s is singular at x = 0"));
    }
    Ok(powc(x, s, Branch::Upper) * ch_solution(case2_shifted(p, s), x)?)
}

/// The second degenerate case with `s = +1`: `H_c''(0) · x · H_c(α, β+2, γ+1, α/2+δ, …; x)`,
/// where `H_c''(0) = M/(2(β+2))` and `M = (β+γ+2)α + 2δ`.
pub fn dhc_case2_s1(p: &ChParams, x: Cx) -> Result<Cx> {
    tie("case 2: eta = (beta+1)alpha/2 - (gamma+1)beta/2 - gamma/2", p.eta, case2_eta(p.alpha, p.beta, p.gamma))?;
    let den = 2.0 * (p.beta + 2.0);
    if den.norm() < TIE_TOL {
        return Err(HeunError::domain("normalising constant undefined for beta = -2"));
    }
    Ok(p.m_coef() / den * x * ch_solution(case2_shifted(p, ONE), x)?)
}

/// `H_b'(0) = (δ + β(α+1)) / (2(1+α))`.
pub fn dhb_at0(p: &BcParams) -> Result<Cx> {
    let den = 2.0 * (ONE + p.alpha);
    if den.norm() < TIE_TOL {
        return Err(HeunError::domain("H_b'(0) undefined for alpha = -1"));
    }
    Ok(p.a2() / den)
}

/// Derivative of `H_b(α, 0, γ, 0; x) = ₁F₁((α+2-γ)/4; 1+α/2; x²)`.
pub fn dhb_hyp(alpha: Cx, gamma: Cx, x: Cx) -> Result<Cx> {
    let a2 = alpha + 2.0;
    if a2.norm() < TIE_TOL {
        return Err(HeunError::domain("formula undefined for alpha = -2"));
    }
    let pre = (a2 - gamma) * x / a2;
    if pre == ZERO {
        return Ok(ZERO);
    }
    Ok(pre * hyp1f1((alpha + 6.0 - gamma) / 4.0, 2.0 + alpha / 2.0, x * x)?)
}

/// Derivative when `γ = α + 2`: `H_b'(0) · H_b(α+1, β, α-1, β+δ; x)`.
pub fn dhb_case(p: &BcParams, x: Cx) -> Result<Cx> {
    tie("gamma = alpha + 2", p.gamma, p.alpha + 2.0)?;
    let k = dhb_at0(p)?;
    if k == ZERO {
        return Ok(ZERO);
    }
    Ok(k * bc_solution(BcParams::new(p.alpha + 1.0, p.beta, p.alpha - 1.0, p.beta + p.delta), x)?)
}
