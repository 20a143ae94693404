//! Desk-scale special functions used by the identity catalog, each with a jet lift.
//!
//! Domains are capped (see each function) instead of switching to asymptotic
//! expansions; every catalog verification lives inside these caps.

mod bessel;
mod erfi;
mod gamma;
mod hyp;

pub use bessel::{bessel, bessel_jet, bessel_with, BesselKind};
pub use erfi::{erfi, erfi_jet};
pub use gamma::{
    inc_gamma_upper_one_third, inc_gamma_upper_one_third_jet, inc_gamma_upper_one_third_with, GAMMA_ONE_THIRD,
};
pub use hyp::{hyp1f1, hyp1f1_jet, hyp1f1_with, hyp2f1, hyp2f1_jet, hyp2f1_with};

use crate::error::{HeunError, Result};
use crate::numerics::{Cx, Jet};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialFnConfig {
    pub series_tol: f64,
    pub max_terms: usize,
}

impl Default for SpecialFnConfig {
    fn default() -> Self {
        SpecialFnConfig { series_tol: 1e-15, max_terms: 400 }
    }
}

impl SpecialFnConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.series_tol > 0.0) || self.max_terms <= 10 {
            return Err(HeunError::domain("series_tol must be positive and max_terms above 10"));
        }
        Ok(())
    }
}

/// Sums `Σ t_n` where `t_{n+1} = t_n · ratio(n)`, stopping once three consecutive
/// terms fall below `series_tol` times the running magnitude.
pub(crate) fn sum_series(
    first: Cx,
    mut ratio: impl FnMut(usize) -> Cx,
    cfg: &SpecialFnConfig,
    what: &str,
) -> Result<Cx> {
    let mut term = first;
    let mut sum = first;
    let mut mag = first.norm();
    let mut small = 0;
    for n in 0..cfg.max_terms {
        term *= ratio(n);
        sum += term;
        mag = mag.max(sum.norm());
        if term.norm() <= cfg.series_tol * mag {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(HeunError::convergence(format!("{what} series did not converge in {} terms", cfg.max_terms), Some(sum)))
}

pub(crate) fn nonpositive_integer(z: Cx) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// Lifts a scalar function onto a jet from its Taylor coefficients at the jet's value.
pub(crate) fn lift(arg: &Jet, taylor: impl FnOnce(Cx, usize) -> Result<Vec<Cx>>) -> Result<Jet> {
    let g = taylor(arg.value(), arg.order())?;
    Ok(arg.compose(&g))
}
