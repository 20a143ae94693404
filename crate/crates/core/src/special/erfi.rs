use std::f64::consts::PI;

use super::{lift, sum_series, SpecialFnConfig};
use crate::error::{HeunError, Result};
use crate::numerics::{Cx, Jet};

const ERFI_CAP: f64 = 6.0;

/// Imaginary error function `erfi(z) = -i erf(iz)` by its odd power series, `|z| ≤ 6`.
pub fn erfi(z: Cx) -> Result<Cx> {
    if z.norm() > ERFI_CAP {
        return Err(HeunError::convergence(format!("erfi argument {z} outside |z| <= {ERFI_CAP}"), None));
    }
    let z2 = z * z;
    // term_n = z^{2n+1} / (n! (2n+1))
    let s = sum_series(
        z,
        |n| {
            let nf = n as f64;
            z2 * (2.0 * nf + 1.0) / ((nf + 1.0) * (2.0 * nf + 3.0))
        },
        &SpecialFnConfig::default(),
        "erfi",
    )?;
    Ok(s * (2.0 / PI.sqrt()))
}

/// `erfi` composed with a jet; the derivative `(2/√π) e^{z²}` is expanded exactly.
pub fn erfi_jet(arg: &Jet) -> Result<Jet> {
    lift(arg, |z0, order| {
        let v = erfi(z0)?;
        if order == 0 {
            return Ok(vec![v]);
        }
        let w = Jet::variable(z0, order - 1);
        let d = (&w * &w).exp().scale(Cx::new(2.0 / PI.sqrt(), 0.0));
        Ok(d.integrate(v).coeffs().to_vec())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{c, ZERO};

    #[test]
    fn odd_and_zero() {
        assert_eq!(erfi(ZERO).unwrap(), ZERO);
        let z = c(0.8, 0.1);
        assert!((erfi(-z).unwrap() + erfi(z).unwrap()).norm() < 1e-15);
        assert!(erfi(c(7.0, 0.0)).is_err());
    }

    #[test]
    fn derivative() {
        let j = erfi_jet(&Jet::variable(c(0.5, 0.0), 3)).unwrap();
        let want = 2.0 / PI.sqrt() * 0.25f64.exp();
        assert!((j.coeff(1) - want).norm() < 1e-14);
    }
}
