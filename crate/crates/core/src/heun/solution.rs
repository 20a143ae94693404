use super::continuation::{local_jet, max_step, propagate, AnchoredSolution};
use super::family::{ode_from_family, Family, ParamSet, PolyODE};
use super::recurrence::{series_solution, Terms};
use crate::error::{HeunError, Result};
use crate::numerics::{c, Cx, Jet, ONE, ZERO};

/// Initial data for the local solution at 0; `y1 = None` means recurrence-determined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeedPair {
    pub y0: Cx,
    pub y1: Option<Cx>,
}

fn negative_integer(z: Cx) -> Option<usize> {
    let r = z.re.round();
    if r <= -1.0 && (z - r).norm() < 1e-12 && -r <= 1e6 {
        Some(-r as usize)
    } else {
        None
    }
}

/// Normalisation of the canonical local solution.
pub fn seeds_for(params: &ParamSet) -> Result<SeedPair> {
    match *params {
        ParamSet::Ch(p) => match negative_integer(p.beta) {
            Some(index) => Err(HeunError::Resonance { index }),
            None => Ok(SeedPair { y0: ONE, y1: None }),
        },
        ParamSet::Bc(p) => match negative_integer(p.alpha) {
            Some(index) => Err(HeunError::Resonance { index }),
            None => Ok(SeedPair { y0: ONE, y1: None }),
        },
        ParamSet::Dc(_) | ParamSet::Tc(_) => Ok(SeedPair { y0: ONE, y1: Some(ZERO) }),
    }
}

/// The canonical local solution at the origin with its cached Taylor coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    params: ParamSet,
    ode: PolyODE,
    coeffs0: Vec<Cx>,
    radius: f64,
    direct: f64,
}

impl Solution {
    pub fn new(params: ParamSet) -> Result<Self> {
        let seeds = seeds_for(&params)?;
        let ode = ode_from_family(&params);
        let family = params.family();
        let radius = family.radius();
        let direct = if radius.is_finite() { 0.7 * radius } else { 1.0 };
        let coeffs0 = series_solution(&ode, seeds.y0, seeds.y1, Terms::Auto { rmax: direct })?;
        Ok(Solution { params, ode, coeffs0, radius, direct })
    }

    pub fn family(&self) -> Family {
        self.params.family()
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn ode(&self) -> &PolyODE {
        &self.ode
    }

    pub fn coeffs0(&self) -> &[Cx] {
        &self.coeffs0
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    fn sum(&self, x: Cx) -> (Cx, Cx) {
        let mut y = ZERO;
        let mut dy = ZERO;
        for (k, &ck) in self.coeffs0.iter().enumerate().rev() {
            y = y * x + ck;
            if k >= 1 {
                dy = dy * x + ck * k as f64;
            }
        }
        (y, dy)
    }

    pub fn eval(&self, x: Cx) -> Result<(Cx, Cx)> {
        let r = x.norm();
        if r <= self.direct {
            return Ok(self.sum(x));
        }
        let start = x * (self.direct / r);
        let (y, dy) = self.sum(start);
        propagate(&self.ode, start, y, dy, x, max_step(self.family()))
    }

    pub fn jet(&self, x0: Cx, order: usize) -> Result<Jet> {
        if x0 == ZERO {
            let mut co: Vec<Cx> = self.coeffs0.iter().copied().take(order + 1).collect();
            if co.len() < order + 1 {
                let seeds = seeds_for(&self.params)?;
                co = series_solution(&self.ode, seeds.y0, seeds.y1, Terms::Fixed(order))?;
            }
            return Ok(Jet::new(x0, co));
        }
        let (y, dy) = self.eval(x0)?;
        local_jet(&self.ode, x0, y, dy, order)
    }
}

/// `(y, y')` of the canonical local solution at `x`.
pub fn heun_eval(sol: &Solution, x: Cx) -> Result<(Cx, Cx)> {
    sol.eval(x)
}

pub fn heun_jet(sol: &Solution, x0: Cx, order: usize) -> Result<Jet> {
    sol.jet(x0, order)
}

/// Normalised residual `(A y'' + B y' + C y) / max(1, |A y''|, |B y'|, |C y|)` at the jet's basepoint.
pub fn ode_residual(params: &ParamSet, yjet: &Jet) -> Cx {
    let ode = ode_from_family(params);
    let x0 = yjet.basepoint();
    let t2 = ode.a.eval(x0) * yjet.derivative(2);
    let t1 = ode.b.eval(x0) * yjet.derivative(1);
    let t0 = ode.c.eval(x0) * yjet.value();
    let norm = 1.0f64.max(t2.norm()).max(t1.norm()).max(t0.norm());
    (t2 + t1 + t0) / norm
}

/// Either the canonical local solution or one fixed at an interior anchor.
#[derive(Debug, Clone, PartialEq)]
pub enum SolutionHandle {
    Canonical(Solution),
    Anchored(AnchoredSolution),
}

impl SolutionHandle {
    pub fn canonical(params: ParamSet) -> Result<Self> {
        Ok(SolutionHandle::Canonical(Solution::new(params)?))
    }

    pub fn anchored(params: ParamSet, anchor: f64, y0: Cx, y1: Cx) -> Result<Self> {
        Ok(SolutionHandle::Anchored(AnchoredSolution::new(params, anchor, y0, y1)?))
    }

    pub fn params(&self) -> &ParamSet {
        match self {
            SolutionHandle::Canonical(s) => s.params(),
            SolutionHandle::Anchored(s) => s.params(),
        }
    }

    pub fn eval(&self, x: Cx) -> Result<(Cx, Cx)> {
        match self {
            SolutionHandle::Canonical(s) => s.eval(x),
            SolutionHandle::Anchored(s) => s.eval(x),
        }
    }

    pub fn jet(&self, x0: Cx, order: usize) -> Result<Jet> {
        match self {
            SolutionHandle::Canonical(s) => s.jet(x0, order),
            SolutionHandle::Anchored(s) => s.jet(x0, order),
        }
    }

    pub fn eval_real(&self, x: f64) -> Result<(Cx, Cx)> {
        self.eval(c(x, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ch_toy_value() {
        let ps = ParamSet::from_reals(Family::Ch, &[0.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        let sol = Solution::new(ps).unwrap();
        let (y, dy) = sol.eval(c(0.1, 0.0)).unwrap();
        assert!((y - 1.108_135_086_276_726).norm() < 1e-15);
        assert!((dy - 1.169_617_810_113_379).norm() < 1e-14);
    }

    #[test]
    fn tc_at_origin() {
        let ps = ParamSet::from_reals(Family::Tc, &[1.0, 3.0, 0.0]).unwrap();
        let (y, dy) = heun_eval(&Solution::new(ps).unwrap(), ZERO).unwrap();
        assert_eq!((y, dy), (ONE, ZERO));
    }

    #[test]
    fn resonant_canonical_rejected() {
        let ps = ParamSet::from_reals(Family::Bc, &[-2.0, 0.3, 0.1, 0.2]).unwrap();
        assert_eq!(Solution::new(ps).unwrap_err(), HeunError::Resonance { index: 2 });
    }

    #[test]
    fn jet_at_origin_is_series() {
        let ps = ParamSet::from_reals(Family::Ch, &[0.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        let sol = Solution::new(ps).unwrap();
        let j = sol.jet(ZERO, 4).unwrap();
        assert_eq!(j.coeffs(), &sol.coeffs0()[..5]);
    }

    #[test]
    fn continuation_beyond_direct_radius_is_smooth() {
        let ps = ParamSet::from_reals(Family::Ch, &[0.5, 0.3, -0.2, 0.1, 0.4]).unwrap();
        let sol = Solution::new(ps).unwrap();
        let (y_in, _) = sol.eval(c(0.7 - 1e-9, 0.0)).unwrap();
        let (y_out, _) = sol.eval(c(0.7 + 1e-9, 0.0)).unwrap();
        assert!((y_in - y_out).norm() < 1e-8);
    }
}
