use super::family::{ode_from_family, Family, ParamSet, PolyODE};
use super::recurrence::Recurrence;
use crate::error::{HeunError, Result};
use crate::numerics::{c, Cx, Jet, ZERO};

const STEP_FRACTION: f64 = 0.4;
const MIN_ORDER: usize = 20;
const MAX_ORDER: usize = 80;
const STEP_BUDGET: usize = 20_000;

/// Distance from `s` to the segment `[a, b]`.
fn segment_distance(a: Cx, b: Cx, s: Cx) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (s - a).norm();
    }
    let t = (((s - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (a + d * t - s).norm()
}

/// One Taylor hop of length `h` (complex) from a regular point.
fn taylor_hop(ode: &PolyODE, x: Cx, y: Cx, dy: Cx, h: Cx) -> Result<(Cx, Cx)> {
    let local = ode.shift(x);
    let mut rec = Recurrence::new(&local, y, Some(dy))?;
    let hn = h.norm();
    let mut val = y + dy * h;
    let mut der = dy;
    let mut hp = h; // h^(k-1)
    let mut quiet = 0;
    let scale = y.norm().max((dy * h).norm());
    for k in 2..=MAX_ORDER {
        let ck = rec.advance()?;
        der += ck * k as f64 * hp;
        hp *= h;
        let term = ck * hp;
        val += term;
        let mag = term.norm();
        if !mag.is_finite() {
            return Err(HeunError::convergence("Taylor step overflowed", None));
        }
        let floor = 1e-17 * scale.max(val.norm()).max(der.norm() * hn);
        if mag <= floor {
            quiet += 1;
        } else {
            quiet = 0;
        }
        if k >= MIN_ORDER && quiet >= 3 {
            break;
        }
    }
    Ok((val, der))
}

/// Propagates `(y, y')` from `from` to `to` along the straight segment.
pub(crate) fn propagate(ode: &PolyODE, from: Cx, y: Cx, dy: Cx, to: Cx, max_step: f64) -> Result<(Cx, Cx)> {
    for &s in &ode.sing {
        if segment_distance(from, to, s) < 1e-12 {
            return Err(HeunError::domain(format!("path from {from} to {to} meets the singular point {s}")));
        }
    }
    let (mut x, mut y, mut dy) = (from, y, dy);
    for _ in 0..STEP_BUDGET {
        let remaining = to - x;
        let rn = remaining.norm();
        if rn == 0.0 {
            return Ok((y, dy));
        }
        let room = STEP_FRACTION * ode.distance_to_singularity(x);
        let step = room.min(max_step);
        let (h, last) = if rn <= step { (remaining, true) } else { (remaining * (step / rn), false) };
        let (ny, ndy) = taylor_hop(ode, x, y, dy, h)?;
        y = ny;
        dy = ndy;
        if last {
            return Ok((y, dy));
        }
        x += h;
    }
    Err(HeunError::convergence(format!("continuation from {from} to {to} exhausted its step budget"), Some(y)))
}

/// Step cap for families without a finite singularity in reach.
pub(crate) fn max_step(family: Family) -> f64 {
    match family {
        Family::Ch | Family::Dc => f64::INFINITY,
        Family::Bc | Family::Tc => 0.5,
    }
}

/// Carries the solution with `(y, y')(x0) = seeds` to `x1` by Taylor stepping.
pub fn continue_solution(params: &ParamSet, x0: f64, seeds: (Cx, Cx), x1: f64) -> Result<(Cx, Cx)> {
    let ode = ode_from_family(params);
    if ode.distance_to_singularity(c(x0, 0.0)) < 1e-12 {
        return Err(HeunError::domain(format!("x0 = {x0} is a singular point")));
    }
    propagate(&ode, c(x0, 0.0), seeds.0, seeds.1, c(x1, 0.0), max_step(params.family()))
}

/// A solution fixed by its value and derivative at an interior anchor point.
#[derive(Debug, Clone, PartialEq)]
pub struct AnchoredSolution {
    params: ParamSet,
    ode: PolyODE,
    anchor: Cx,
    y0: Cx,
    y1: Cx,
    /// Precomputed `(x, y, y')` on the real axis, sorted by `x`.
    checkpoints: Vec<(f64, Cx, Cx)>,
}

impl AnchoredSolution {
    pub fn new(params: ParamSet, anchor: f64, y0: Cx, y1: Cx) -> Result<Self> {
        let ode = ode_from_family(&params);
        let anchor = c(anchor, 0.0);
        if ode.distance_to_singularity(anchor) < 1e-12 {
            return Err(HeunError::domain(format!("anchor {anchor} is a singular point")));
        }
        Ok(AnchoredSolution { params, ode, anchor, y0, y1, checkpoints: Vec::new() })
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn anchor(&self) -> Cx {
        self.anchor
    }

    pub fn seeds(&self) -> (Cx, Cx) {
        (self.y0, self.y1)
    }

    /// Stores values every `spacing` along the real interval `[lo, hi]`, which must
    /// contain the anchor and no singular point. Later evaluations on the interval
    /// start from the nearest stored point.
    pub fn with_checkpoints(mut self, lo: f64, hi: f64, spacing: f64) -> Result<Self> {
        let a = self.anchor.re;
        if self.anchor.im != 0.0 || a < lo || a > hi || !(spacing > 0.0) {
            return Err(HeunError::domain(format!("checkpoints need a real anchor inside [{lo}, {hi}]")));
        }
        let step = max_step(self.params.family());
        let mut pts = vec![(a, self.y0, self.y1)];
        for dir in [-1.0, 1.0] {
            let (mut x, mut y, mut dy) = (a, self.y0, self.y1);
            loop {
                let next = if dir > 0.0 { (x + spacing).min(hi) } else { (x - spacing).max(lo) };
                if next == x {
                    break;
                }
                (y, dy) = propagate(&self.ode, c(x, 0.0), y, dy, c(next, 0.0), step)?;
                x = next;
                pts.push((x, y, dy));
            }
        }
        pts.sort_by(|p, q| p.0.total_cmp(&q.0));
        self.checkpoints = pts;
        Ok(self)
    }

    pub fn eval(&self, x: Cx) -> Result<(Cx, Cx)> {
        let step = max_step(self.params.family());
        if x.im == 0.0 && !self.checkpoints.is_empty() {
            let first = self.checkpoints[0].0;
            let last = self.checkpoints[self.checkpoints.len() - 1].0;
            if x.re >= first && x.re <= last {
                let i = self.checkpoints.partition_point(|p| p.0 < x.re);
                let pick = match (i.checked_sub(1), self.checkpoints.get(i)) {
                    (Some(j), Some(q)) if (x.re - self.checkpoints[j].0) < (q.0 - x.re) => self.checkpoints[j],
                    (_, Some(q)) => *q,
                    (Some(j), None) => self.checkpoints[j],
                    (None, None) => unreachable!("checkpoints are non-empty"),
                };
                return propagate(&self.ode, c(pick.0, 0.0), pick.1, pick.2, x, step);
            }
        }
        propagate(&self.ode, self.anchor, self.y0, self.y1, x, step)
    }

    pub fn jet(&self, x0: Cx, order: usize) -> Result<Jet> {
        let (y, dy) = self.eval(x0)?;
        local_jet(&self.ode, x0, y, dy, order)
    }
}

/// Jet at a regular point from `(y, y')` there.
pub(crate) fn local_jet(ode: &PolyODE, x0: Cx, y: Cx, dy: Cx, order: usize) -> Result<Jet> {
    if ode.distance_to_singularity(x0) < 1e-12 {
        return Err(HeunError::domain(format!("jet requested at the singular point {x0}")));
    }
    let local = ode.shift(x0);
    let mut rec = Recurrence::new(&local, y, Some(dy))?;
    while rec.c.len() < order + 1 {
        rec.advance()?;
    }
    let coeffs = rec.c.iter().copied().take(order + 1).chain(std::iter::repeat(ZERO)).take(order + 1);
    Ok(Jet::new(x0, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ONE;

    #[test]
    fn zero_seeds_stay_zero() {
        let ps = ParamSet::from_reals(Family::Ch, &[0.3, 0.2, 0.1, 0.5, 0.4]).unwrap();
        let (y, dy) = continue_solution(&ps, 0.3, (ZERO, ZERO), 0.8).unwrap();
        assert_eq!((y, dy), (ZERO, ZERO));
    }

    #[test]
    fn tc_constant() {
        let ps = ParamSet::from_reals(Family::Tc, &[0.0, 3.0, 0.0]).unwrap();
        let (y, dy) = continue_solution(&ps, 0.0, (ONE, ZERO), 1.2).unwrap();
        assert!((y - 1.0).norm() < 1e-15 && dy.norm() < 1e-15);
    }

    #[test]
    fn blocked_path() {
        let ps = ParamSet::from_reals(Family::Dc, &[0.3, 0.2, 0.1, 0.5]).unwrap();
        assert!(matches!(continue_solution(&ps, 0.0, (ONE, ZERO), 1.5), Err(HeunError::Domain(_))));
    }

    #[test]
    fn exponential_via_tc() {
        // TC with gamma = 0, alpha = 0, beta = 3 has y'' - 3x^2 y' = 0: y' = e^{x^3}
        let ps = ParamSet::from_reals(Family::Tc, &[0.0, 3.0, 0.0]).unwrap();
        let (_, dy) = continue_solution(&ps, 0.0, (ZERO, ONE), 1.1).unwrap();
        assert!((dy - (1.1f64).powi(3).exp()).norm() < 1e-12 * dy.norm());
    }
}
