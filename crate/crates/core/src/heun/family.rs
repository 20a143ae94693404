use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{HeunError, Result};
use crate::numerics::{c, Branch, Cx, Jet, ONE, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "CH")]
    Ch,
    #[serde(rename = "BC")]
    Bc,
    #[serde(rename = "DC")]
    Dc,
    #[serde(rename = "TC")]
    Tc,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Ch, Family::Bc, Family::Dc, Family::Tc];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Ch => "CH",
            Family::Bc => "BC",
            Family::Dc => "DC",
            Family::Tc => "TC",
        }
    }

    pub fn param_count(self) -> usize {
        match self {
            Family::Ch => 5,
            Family::Bc | Family::Dc => 4,
            Family::Tc => 3,
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::Ch => &["alpha", "beta", "gamma", "delta", "eta"],
            Family::Bc | Family::Dc => &["alpha", "beta", "gamma", "delta"],
            Family::Tc => &["alpha", "beta", "gamma"],
        }
    }

    /// Finite singular points of the equation.
    pub fn singularities(self) -> &'static [f64] {
        match self {
            Family::Ch => &[0.0, 1.0],
            Family::Bc => &[0.0],
            Family::Dc => &[-1.0, 1.0],
            Family::Tc => &[],
        }
    }

    /// Radius of convergence of the local solution at 0.
    pub fn radius(self) -> f64 {
        match self {
            Family::Ch | Family::Dc => 1.0,
            Family::Bc | Family::Tc => f64::INFINITY,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = HeunError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "CH" => Ok(Family::Ch),
            "BC" => Ok(Family::Bc),
            "DC" => Ok(Family::Dc),
            "TC" => Ok(Family::Tc),
            _ => Err(HeunError::Parse(format!("unknown family '{s}' (expected CH, BC, DC or TC)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChParams {
    pub alpha: Cx,
    pub beta: Cx,
    pub gamma: Cx,
    pub delta: Cx,
    pub eta: Cx,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BcParams {
    pub alpha: Cx,
    pub beta: Cx,
    pub gamma: Cx,
    pub delta: Cx,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DcParams {
    pub alpha: Cx,
    pub beta: Cx,
    pub gamma: Cx,
    pub delta: Cx,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TcParams {
    pub alpha: Cx,
    pub beta: Cx,
    pub gamma: Cx,
}

impl ChParams {
    pub fn new(alpha: Cx, beta: Cx, gamma: Cx, delta: Cx, eta: Cx) -> Self {
        ChParams { alpha, beta, gamma, delta, eta }
    }

    /// Coefficient of `x` in the numerator of `q`.
    pub fn m_coef(&self) -> Cx {
        (self.beta + self.gamma + 2.0) * self.alpha + 2.0 * self.delta
    }

    /// Constant term of the numerator of `q`.
    pub fn n_coef(&self) -> Cx {
        -(self.beta + 1.0) * self.alpha + (self.gamma + 1.0) * self.beta + 2.0 * self.eta + self.gamma
    }
}

impl BcParams {
    pub fn new(alpha: Cx, beta: Cx, gamma: Cx, delta: Cx) -> Self {
        BcParams { alpha, beta, gamma, delta }
    }

    /// `2(γ-α-2)`.
    pub fn a1(&self) -> Cx {
        2.0 * (self.gamma - self.alpha - 2.0)
    }

    /// `δ + β(α+1)`.
    pub fn a2(&self) -> Cx {
        self.delta + self.beta * (self.alpha + 1.0)
    }
}

impl DcParams {
    pub fn new(alpha: Cx, beta: Cx, gamma: Cx, delta: Cx) -> Self {
        DcParams { alpha, beta, gamma, delta }
    }
}

impl TcParams {
    pub fn new(alpha: Cx, beta: Cx, gamma: Cx) -> Self {
        TcParams { alpha, beta, gamma }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamSet {
    Ch(ChParams),
    Bc(BcParams),
    Dc(DcParams),
    Tc(TcParams),
}

impl ParamSet {
    pub fn family(&self) -> Family {
        match self {
            ParamSet::Ch(_) => Family::Ch,
            ParamSet::Bc(_) => Family::Bc,
            ParamSet::Dc(_) => Family::Dc,
            ParamSet::Tc(_) => Family::Tc,
        }
    }

    pub fn values(&self) -> Vec<Cx> {
        match *self {
            ParamSet::Ch(p) => vec![p.alpha, p.beta, p.gamma, p.delta, p.eta],
            ParamSet::Bc(p) => vec![p.alpha, p.beta, p.gamma, p.delta],
            ParamSet::Dc(p) => vec![p.alpha, p.beta, p.gamma, p.delta],
            ParamSet::Tc(p) => vec![p.alpha, p.beta, p.gamma],
        }
    }

    pub fn from_values(family: Family, v: &[Cx]) -> Result<Self> {
        if v.len() != family.param_count() {
            return Err(HeunError::Parse(format!(
                "{family} takes {} parameters ({}), got {}",
                family.param_count(),
                family.param_names().join(", "),
                v.len()
            )));
        }
        Ok(match family {
            Family::Ch => ParamSet::Ch(ChParams::new(v[0], v[1], v[2], v[3], v[4])),
            Family::Bc => ParamSet::Bc(BcParams::new(v[0], v[1], v[2], v[3])),
            Family::Dc => ParamSet::Dc(DcParams::new(v[0], v[1], v[2], v[3])),
            Family::Tc => ParamSet::Tc(TcParams::new(v[0], v[1], v[2])),
        })
    }

    pub fn from_reals(family: Family, v: &[f64]) -> Result<Self> {
        let v: Vec<Cx> = v.iter().map(|&r| c(r, 0.0)).collect();
        Self::from_values(family, &v)
    }

    pub fn is_real(&self) -> bool {
        self.values().iter().all(|z| z.im == 0.0)
    }

    /// Evaluates the integrating factor `f = exp(∫p)` as a jet.
    pub fn f_jet(&self, x: &Jet, branch: Branch) -> Result<Jet> {
        match *self {
            ParamSet::Ch(p) => {
                let a = x.powc(p.beta + 1.0, branch)?;
                let b = (x - ONE).powc(p.gamma + 1.0, branch)?;
                Ok(a * b * (x * p.alpha).exp())
            }
            ParamSet::Bc(p) => {
                let a = x.powc(p.alpha + 1.0, branch)?;
                Ok(a * (-(x * x) - x * p.beta).exp())
            }
            ParamSet::Dc(p) => {
                let d = x * x - ONE;
                let e = (x * p.alpha).try_div(&d)?.exp();
                Ok(d * e)
            }
            ParamSet::Tc(p) => Ok((-(x * x * x) - x * p.gamma).exp()),
        }
    }

    /// `p` and `q` of the normalised equation `y'' + p y' + q y = 0` as jets.
    pub fn pq_jet(&self, x: &Jet) -> Result<(Jet, Jet)> {
        let ode = ode_from_family(self);
        let a = ode.a.eval_jet(x);
        Ok((ode.b.eval_jet(x).try_div(&a)?, ode.c.eval_jet(x).try_div(&a)?))
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values().into_iter().map(crate::numerics::fmt_cx).collect();
        write!(f, "{}({})", self.family(), vals.join(", "))
    }
}

/// Polynomial with coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly(pub SmallVec<[Cx; 8]>);

impl Poly {
    pub fn new(coeffs: impl IntoIterator<Item = Cx>) -> Self {
        Poly(coeffs.into_iter().collect())
    }

    pub fn coeffs(&self) -> &[Cx] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> Cx {
        self.0.get(k).copied().unwrap_or(ZERO)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().rposition(|&z| z != ZERO).unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&z| z == ZERO)
    }

    pub fn eval(&self, x: Cx) -> Cx {
        self.0.iter().rev().fold(ZERO, |acc, &a| acc * x + a)
    }

    pub fn eval_jet(&self, x: &Jet) -> Jet {
        self.0.iter().rev().fold(x.constant_like(ZERO), |acc, &a| acc * x + a)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![ZERO; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Coefficients of `P(x0 + t)` in powers of `t`.
    pub fn shift(&self, x0: Cx) -> Poly {
        let mut a: Vec<Cx> = self.0.to_vec();
        let n = a.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let next = a[j + 1];
                a[j] += x0 * next;
            }
        }
        Poly::new(a)
    }
}

/// `A y'' + B y' + C y = 0` with polynomial coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyODE {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    pub sing: Vec<Cx>,
}

impl PolyODE {
    pub fn shift(&self, x0: Cx) -> PolyODE {
        PolyODE {
            a: self.a.shift(x0),
            b: self.b.shift(x0),
            c: self.c.shift(x0),
            sing: self.sing.iter().map(|s| s - x0).collect(),
        }
    }

    pub fn distance_to_singularity(&self, x: Cx) -> f64 {
        self.sing.iter().map(|s| (s - x).norm()).fold(f64::INFINITY, f64::min)
    }
}

/// Builds the polynomial form of a family's equation with denominators cleared.
pub fn ode_from_family(params: &ParamSet) -> PolyODE {
    let r = |v: f64| c(v, 0.0);
    match *params {
        ParamSet::Ch(p) => PolyODE {
            a: Poly::new([ZERO, r(-1.0), ONE]),
            b: Poly::new([-(p.beta + 1.0), p.beta + p.gamma + 2.0 - p.alpha, p.alpha]),
            c: Poly::new([p.n_coef() / 2.0, p.m_coef() / 2.0]),
            sing: vec![ZERO, ONE],
        },
        ParamSet::Bc(p) => PolyODE {
            a: Poly::new([ZERO, ONE]),
            b: Poly::new([p.alpha + 1.0, -p.beta, r(-2.0)]),
            c: Poly::new([-p.a2() / 2.0, p.gamma - p.alpha - 2.0]),
            sing: vec![ZERO],
        },
        ParamSet::Dc(p) => {
            let x2m1 = Poly::new([r(-1.0), ZERO, ONE]);
            let a = x2m1.mul(&x2m1).mul(&x2m1);
            let cubic = Poly::new([-p.alpha, r(-2.0), -p.alpha, r(2.0)]);
            PolyODE {
                a,
                b: cubic.mul(&x2m1),
                c: Poly::new([p.delta, p.gamma + 2.0 * p.alpha, p.beta]),
                sing: vec![r(-1.0), ONE],
            }
        }
        ParamSet::Tc(p) => PolyODE {
            a: Poly::new([ONE]),
            b: Poly::new([-p.gamma, ZERO, r(-3.0)]),
            c: Poly::new([p.alpha, p.beta - 3.0]),
            sing: vec![],
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_matches_evaluation() {
        let p = Poly::new([c(1.0, 0.0), c(-2.0, 0.5), c(0.0, 0.0), c(3.0, 0.0)]);
        let x0 = c(0.4, -0.1);
        let s = p.shift(x0);
        for t in [c(0.0, 0.0), c(0.3, 0.0), c(-0.2, 0.7)] {
            assert!((s.eval(t) - p.eval(x0 + t)).norm() < 1e-14);
        }
    }

    #[test]
    fn tc_coefficients() {
        let ps = ParamSet::from_reals(Family::Tc, &[1.0, 3.0, 0.5]).unwrap();
        let ode = ode_from_family(&ps);
        assert_eq!(ode.a.coeffs(), &[ONE]);
        assert_eq!(ode.b.coeffs(), &[c(-0.5, 0.0), ZERO, c(-3.0, 0.0)]);
        assert_eq!(ode.c.coeffs(), &[c(1.0, 0.0), ZERO]);
        assert!(ode.sing.is_empty());
    }

    #[test]
    fn family_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.tag().parse::<Family>().unwrap(), f);
        }
        assert!("XX".parse::<Family>().is_err());
    }
}
