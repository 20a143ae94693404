use super::hyp::hyp1f1_series;
use super::{lift, SpecialFnConfig};
use crate::error::{HeunError, Result};
use crate::numerics::{c, powc, Branch, Cx, Jet, ONE};

/// Γ(1/3).
pub const GAMMA_ONE_THIRD: f64 = 2.678_938_534_707_747_6;

const GAMMA_CAP: f64 = 10.0;

/// Upper incomplete gamma `Γ(1/3, w)` on the principal branch, `|w| ≤ 10`.
pub fn inc_gamma_upper_one_third(w: Cx) -> Result<Cx> {
    inc_gamma_upper_one_third_with(w, Branch::Upper)
}

/// `Γ(1/3, w) = Γ(1/3) - γ(1/3, w)` with `γ(s, w) = w^s e^{-w} ₁F₁(1; 1+s; w) / s`.
pub fn inc_gamma_upper_one_third_with(w: Cx, branch: Branch) -> Result<Cx> {
    if w.norm() > GAMMA_CAP {
        return Err(HeunError::convergence(format!("incomplete gamma argument {w} outside |w| <= {GAMMA_CAP}"), None));
    }
    let s = 1.0 / 3.0;
    let m = hyp1f1_series(ONE, c(1.0 + s, 0.0), w, &SpecialFnConfig::default())?;
    let lower = powc(w, c(s, 0.0), branch) * (-w).exp() * m / s;
    Ok(c(GAMMA_ONE_THIRD, 0.0) - lower)
}

/// `Γ(1/3, ·)` composed with a jet; the derivative `-w^{-2/3} e^{-w}` uses the same branch.
pub fn inc_gamma_upper_one_third_jet(arg: &Jet, branch: Branch) -> Result<Jet> {
    lift(arg, |w0, order| {
        let v = inc_gamma_upper_one_third_with(w0, branch)?;
        if order == 0 {
            return Ok(vec![v]);
        }
        let w = Jet::variable(w0, order - 1);
        let d = -(w.powc(c(-2.0 / 3.0, 0.0), branch)? * (-&w).exp());
        Ok(d.integrate(v).coeffs().to_vec())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ZERO;

    #[test]
    fn at_zero() {
        assert!((inc_gamma_upper_one_third(ZERO).unwrap() - GAMMA_ONE_THIRD).norm() < 1e-15);
    }

    #[test]
    fn decays_on_positive_axis() {
        let mut last = f64::INFINITY;
        for i in 0..=20 {
            let w = 5.0 + 0.25 * i as f64;
            let v = inc_gamma_upper_one_third(c(w, 0.0)).unwrap();
            assert!(v.re < last && v.re > 0.0);
            last = v.re;
        }
    }

    #[test]
    fn derivative() {
        let j = inc_gamma_upper_one_third_jet(&Jet::variable(c(1.1, 0.0), 2), Branch::Upper).unwrap();
        let want = -(1.1f64).powf(-2.0 / 3.0) * (-1.1f64).exp();
        assert!((j.coeff(1) - want).norm() < 1e-14);
    }
}
