use serde::{Deserialize, Serialize};

use super::{HChoice, IdentityId};
use crate::heun::{BcParams, ChParams, DcParams, ParamSet, TcParams};
use crate::numerics::{c, Cx};

const TIE_TOL: f64 = 1e-12;

/// Which closed form an `h` with a three-way case split takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeltaCase {
    Positive,
    Zero,
    Negative,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub constraint: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
    /// The canonical normalisation at the origin does not exist; arbitrary seeds still work.
    pub resonant: bool,
    pub delta_case: Option<DeltaCase>,
}

struct Checker {
    violations: Vec<Violation>,
}

impl Checker {
    fn tie(&mut self, name: &str, value: Cx, required: Cx) {
        if (value - required).norm() > TIE_TOL {
            self.violations.push(Violation {
                constraint: name.to_string(),
                detail: format!("off by {:.3e}", (value - required).norm()),
            });
        }
    }

    fn nonzero(&mut self, name: &str, value: Cx) {
        if value.norm() <= TIE_TOL {
            self.violations.push(Violation { constraint: name.to_string(), detail: "vanishes".into() });
        }
    }

    fn not_in(&mut self, name: &str, value: Cx, set: impl IntoIterator<Item = f64>) {
        for s in set {
            if (value - s).norm() <= TIE_TOL {
                self.violations.push(Violation { constraint: name.to_string(), detail: format!("equals {s}") });
            }
        }
    }

    fn fail(&mut self, name: &str, detail: impl Into<String>) {
        self.violations.push(Violation { constraint: name.to_string(), detail: detail.into() });
    }
}

fn negative_integer(z: Cx) -> bool {
    let r = z.re.round();
    r <= -1.0 && (z - r).norm() < TIE_TOL
}

fn positive_integer(z: Cx) -> bool {
    let r = z.re.round();
    r >= 1.0 && (z - r).norm() < TIE_TOL
}

fn real_sign_case(d: Cx, params_real: bool) -> DeltaCase {
    if !params_real {
        return DeltaCase::Negative;
    }
    if d.re.abs() <= TIE_TOL {
        DeltaCase::Zero
    } else if d.re > 0.0 {
        DeltaCase::Positive
    } else {
        DeltaCase::Negative
    }
}

pub(crate) fn ch_h3_consts(p: &ChParams) -> (Cx, Cx, Cx, Cx) {
    let cc = p.alpha * 2.0;
    let b = p.beta + p.gamma + 2.0 - p.alpha;
    let a = -(p.beta + 1.0) * 2.0;
    (a, b, cc, a * cc - b * b)
}

pub(crate) fn bc_h3_delta(p: &BcParams) -> Cx {
    -(p.alpha + 1.0) * 2.0 - p.beta * p.beta / 4.0
}

pub(crate) fn ch_bessel_eta0(p: &ChParams) -> Cx {
    (p.beta + 1.0) * p.alpha / 2.0 - (p.gamma + 1.0) * p.beta / 2.0 - p.gamma / 2.0
}

pub(crate) fn ch_bessel_omega_sq(p: &ChParams) -> Cx {
    p.alpha * 2.0 * (p.beta + p.gamma + 2.0) + p.delta * 4.0
}

/// Checks the parameter ties and nondegeneracy conditions of one entry.
pub fn validity(id: IdentityId, params: &ParamSet, hchoice: Option<&HChoice>) -> ValidityReport {
    use IdentityId::*;
    let mut ck = Checker { violations: Vec::new() };
    let mut resonant = false;
    let mut delta_case = None;

    if params.family() != id.family() {
        ck.fail("family", format!("{id} needs {} parameters, got {}", id.family(), params.family()));
        return ValidityReport { ok: false, violations: ck.violations, resonant, delta_case };
    }
    if id.is_elementary() {
        if let Some(h) = hchoice {
            if !(h.rho.norm().is_finite() && h.k.norm().is_finite()) {
                ck.fail("h choice", "non-finite ρ or k");
            }
        }
    }

    match *params {
        ParamSet::Ch(p) => {
            resonant = negative_integer(p.beta);
            match id {
                ChZeroDer1 => {
                    ck.tie("δ = −(β+γ+2)α/2", p.delta, -(p.beta + p.gamma + 2.0) * p.alpha / 2.0);
                    ck.not_in("β ≠ −1", p.beta, [-1.0]);
                    ck.nonzero("N ≠ 0", p.n_coef());
                }
                ChStanjel => {
                    ck.tie("α = 0", p.alpha, c(0.0, 0.0));
                    ck.tie("β = −1", p.beta, c(-1.0, 0.0));
                    ck.tie("γ = 0", p.gamma, c(0.0, 0.0));
                    ck.tie("η = 1/2", p.eta, c(0.5, 0.0));
                    ck.nonzero("δ ≠ 0", p.delta);
                    resonant = true;
                }
                ChHyp => {
                    ck.tie("α = 0", p.alpha, c(0.0, 0.0));
                    if positive_integer(p.beta) {
                        ck.fail("β ∉ {1, 2, 3, …}", format!("β = {}", p.beta.re));
                    }
                }
                ChH3 => {
                    ck.nonzero("α ≠ 0", p.alpha);
                    let (_, _, _, d) = ch_h3_consts(&p);
                    let case = real_sign_case(d, params.is_real());
                    if !params.is_real() && d.norm() <= TIE_TOL {
                        ck.fail("Δ ≠ 0 for complex parameters", "Δ vanishes");
                    }
                    delta_case = Some(case);
                }
                ChBessel => {
                    ck.tie("η = η₀ = (1+β)α/2 − (1+γ)β/2 − γ/2", p.eta, ch_bessel_eta0(&p));
                    ck.nonzero("Ω ≠ 0", ch_bessel_omega_sq(&p));
                }
                ChConj => ck.nonzero("η ≠ 0", p.eta),
                _ => {}
            }
        }
        ParamSet::Bc(p) => {
            resonant = negative_integer(p.alpha);
            match id {
                BcZeroSpc => {
                    ck.tie("γ = α + 2", p.gamma, p.alpha + 2.0);
                    ck.not_in("α ∉ {−1, 1}", p.alpha, [-1.0, 1.0]);
                    ck.not_in("α ≠ −2", p.alpha, [-2.0]);
                    ck.nonzero("δ + β(α+1) ≠ 0", p.a2());
                }
                BcErfi => {
                    ck.tie("α = −1", p.alpha, c(-1.0, 0.0));
                    resonant = true;
                }
                BcH3 => {
                    let d = bc_h3_delta(&p);
                    let case = real_sign_case(d, params.is_real());
                    if case == DeltaCase::Zero && p.beta.re >= -4.0 && p.beta.re <= 0.0 {
                        ck.fail("Δ = 0 requires β ∈ ℝ∖[−4,0]", format!("β = {}", p.beta.re));
                    }
                    if !params.is_real() && d.norm() <= TIE_TOL {
                        ck.fail("Δ ≠ 0 for complex parameters", "Δ vanishes");
                    }
                    delta_case = Some(case);
                }
                _ => {}
            }
        }
        ParamSet::Dc(p) => match id {
            DcLog | DcH3 => ck.tie("α = 0", p.alpha, c(0.0, 0.0)),
            DcConj => ck.nonzero("γ ≠ 0", p.gamma),
            _ => {}
        },
        ParamSet::Tc(p) => match id {
            TcGamma => ck.tie("γ = 0", p.gamma, c(0.0, 0.0)),
            TcH3 => {
                let case = if p.gamma.norm() <= TIE_TOL {
                    DeltaCase::Zero
                } else if params.is_real() && p.gamma.re > 0.0 {
                    DeltaCase::Positive
                } else {
                    DeltaCase::Negative
                };
                delta_case = Some(case);
            }
            TcConj => ck.nonzero("α ≠ 0", p.alpha),
            _ => {}
        },
    }

    ValidityReport { ok: ck.violations.is_empty(), violations: ck.violations, resonant, delta_case }
}

/// Overwrites the tied parameters of an entry so the ties hold exactly.
pub fn apply_ties(id: IdentityId, params: &ParamSet) -> ParamSet {
    use IdentityId::*;
    let zero = c(0.0, 0.0);
    match (*params, id) {
        (ParamSet::Ch(p), ChZeroDer1) => {
            ParamSet::Ch(ChParams { delta: -(p.beta + p.gamma + 2.0) * p.alpha / 2.0, ..p })
        }
        (ParamSet::Ch(p), ChStanjel) => {
            ParamSet::Ch(ChParams { alpha: zero, beta: c(-1.0, 0.0), gamma: zero, eta: c(0.5, 0.0), ..p })
        }
        (ParamSet::Ch(p), ChHyp) => ParamSet::Ch(ChParams { alpha: zero, ..p }),
        (ParamSet::Ch(p), ChBessel) => ParamSet::Ch(ChParams { eta: ch_bessel_eta0(&p), ..p }),
        (ParamSet::Bc(p), BcZeroSpc) => ParamSet::Bc(BcParams { gamma: p.alpha + 2.0, ..p }),
        (ParamSet::Bc(p), BcErfi) => ParamSet::Bc(BcParams { alpha: c(-1.0, 0.0), ..p }),
        (ParamSet::Dc(p), DcLog | DcH3) => ParamSet::Dc(DcParams { alpha: zero, ..p }),
        (ParamSet::Tc(p), TcGamma) => ParamSet::Tc(TcParams { gamma: zero, ..p }),
        (other, _) => other,
    }
}

/// Distance from the parameters to the closest excluded set of an entry, used to
/// keep random draws away from degenerate configurations.
pub(crate) fn exclusion_distance(id: IdentityId, params: &ParamSet) -> f64 {
    use IdentityId::*;
    let int_dist = |z: Cx, set: &[f64]| set.iter().map(|&s| (z - s).norm()).fold(f64::INFINITY, f64::min);
    let neg_ints: Vec<f64> = (1..=6).map(|k| -(k as f64)).collect();
    let pos_ints: Vec<f64> = (1..=6).map(|k| k as f64).collect();
    let mut d = f64::INFINITY;
    match *params {
        ParamSet::Ch(p) => {
            if id != ChStanjel {
                d = d.min(int_dist(p.beta, &neg_ints));
            }
            match id {
                ChZeroDer1 => d = d.min(p.n_coef().norm()),
                ChStanjel => d = d.min(p.delta.norm()),
                ChHyp => d = d.min(int_dist(p.beta, &pos_ints)),
                ChH3 => {
                    d = d.min(p.alpha.norm());
                    if !params.is_real() {
                        d = d.min(ch_h3_consts(&p).3.norm());
                    }
                }
                ChBessel => d = d.min(ch_bessel_omega_sq(&p).norm()),
                ChConj => d = d.min(p.eta.norm()),
                _ => {}
            }
        }
        ParamSet::Bc(p) => {
            if id != BcErfi {
                d = d.min(int_dist(p.alpha, &neg_ints));
            }
            match id {
                BcZeroSpc => {
                    d = d.min(int_dist(p.alpha, &[-2.0, -1.0, 1.0]));
                    d = d.min(p.a2().norm());
                }
                BcH3 if !params.is_real() => d = d.min(bc_h3_delta(&p).norm()),
                _ => {}
            }
        }
        ParamSet::Dc(p) => {
            if id == DcConj {
                d = d.min(p.gamma.norm());
            }
        }
        ParamSet::Tc(p) => match id {
            TcConj => d = d.min(p.alpha.norm()),
            TcH3 => d = d.min(p.gamma.norm()),
            _ => {}
        },
    }
    d
}
