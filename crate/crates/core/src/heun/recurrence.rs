use super::family::PolyODE;
use crate::error::{HeunError, Result};
use crate::numerics::{Cx, ZERO};

/// Truncation rule for series generation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Terms {
    /// Exactly `n + 1` coefficients `c_0..=c_n`.
    Fixed(usize),
    /// Stop once `|c_n| rmax^n < 1e-16 · scale` for five consecutive `n` (cap 500).
    Auto { rmax: f64 },
}

const AUTO_CAP: usize = 500;
const AUTO_MIN: usize = 12;

/// Streaming Taylor-coefficient generator for `A y'' + B y' + C y = 0` at `t = 0`.
///
/// At an ordinary point (`A(0) ≠ 0`) the equation for `t^n` determines `c_{n+2}`.
/// At a regular singular point with `A(0) = 0 ≠ A'(0)` it determines `c_{n+1}`
/// (the exponent-zero Frobenius solution).
pub(crate) struct Recurrence<'a> {
    ode: &'a PolyODE,
    singular: bool,
    seed1: Option<Cx>,
    pub(crate) c: Vec<Cx>,
}

impl<'a> Recurrence<'a> {
    pub(crate) fn new(ode: &'a PolyODE, c0: Cx, c1: Option<Cx>) -> Result<Self> {
        let a0 = ode.a.coeff(0);
        let a1 = ode.a.coeff(1);
        if a0 != ZERO {
            let c1 = c1.ok_or_else(|| HeunError::domain("an ordinary point needs both y(0) and y'(0)"))?;
            return Ok(Recurrence { ode, singular: false, seed1: None, c: vec![c0, c1] });
        }
        if a1 == ZERO {
            return Err(HeunError::domain("expansion point is not a regular singular point"));
        }
        Ok(Recurrence { ode, singular: true, seed1: c1, c: vec![c0] })
    }

    /// Appends the next coefficient.
    pub(crate) fn advance(&mut self) -> Result<Cx> {
        let target = self.c.len();
        let n = if self.singular { target - 1 } else { target - 2 };
        let (a, b, cc) = (&self.ode.a, &self.ode.b, &self.ode.c);
        let mut rest = ZERO;
        let mut mag = 0.0f64;
        for j in 0..=n + 2 {
            // A_j (i)(i-1) c_i with i = n - j + 2
            if let Some(i) = (n + 2).checked_sub(j) {
                if i < target && i >= 2 {
                    let t = a.coeff(j) * (i * (i - 1)) as f64 * self.c[i];
                    rest += t;
                    mag = mag.max(t.norm());
                }
            }
            if let Some(i) = (n + 1).checked_sub(j) {
                if i < target && i >= 1 {
                    let t = b.coeff(j) * i as f64 * self.c[i];
                    rest += t;
                    mag = mag.max(t.norm());
                }
            }
            if let Some(i) = n.checked_sub(j) {
                let t = cc.coeff(j) * self.c[i];
                rest += t;
                mag = mag.max(t.norm());
            }
        }
        let t = target as f64;
        let factor = if self.singular { t * ((t - 1.0) * a.coeff(1) + b.coeff(0)) } else { a.coeff(0) * t * (t - 1.0) };
        let fscale = if self.singular { t * (t * a.coeff(1).norm() + b.coeff(0).norm()) } else { factor.norm() };
        let next = if factor.norm() <= 1e-13 * fscale.max(1e-300) {
            match (target, self.seed1) {
                (1, Some(s)) if rest.norm() <= 1e-12 * mag.max(1.0) => s,
                _ => return Err(HeunError::Resonance { index: target }),
            }
        } else {
            -rest / factor
        };
        self.c.push(next);
        Ok(next)
    }
}

/// Taylor coefficients of the solution seeded by `c0` and, where needed, `c1`.
pub fn series_solution(ode: &PolyODE, c0: Cx, c1: Option<Cx>, terms: Terms) -> Result<Vec<Cx>> {
    let mut rec = Recurrence::new(ode, c0, c1)?;
    match terms {
        Terms::Fixed(n) => {
            while rec.c.len() < n + 1 {
                rec.advance()?;
            }
            rec.c.truncate(n + 1);
        }
        Terms::Auto { rmax } => {
            let mut scale = rec.c.iter().enumerate().map(|(k, z)| z.norm() * rmax.powi(k as i32)).fold(0.0, f64::max);
            let mut small = 0;
            loop {
                let k = rec.c.len();
                if k > AUTO_CAP {
                    return Err(HeunError::convergence(
                        format!("series did not settle within {AUTO_CAP} terms at radius {rmax}"),
                        None,
                    ));
                }
                let ck = rec.advance()?;
                let term = ck.norm() * rmax.powi(k as i32);
                if !term.is_finite() {
                    return Err(HeunError::convergence("series coefficients overflowed", None));
                }
                scale = scale.max(term);
                if term < 1e-16 * scale {
                    small += 1;
                } else {
                    small = 0;
                }
                if small >= 5 && k >= AUTO_MIN {
                    break;
                }
            }
        }
    }
    Ok(rec.c)
}

/// `taylor_coeffs(ode, seeds, N)`: the generic Frobenius-at-exponent-zero series.
pub fn taylor_coeffs(ode: &PolyODE, seeds: super::SeedPair, terms: Terms) -> Result<Vec<Cx>> {
    series_solution(ode, seeds.y0, seeds.y1, terms)
}
