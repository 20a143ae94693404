use std::f64::consts::PI;

use super::lift;
use crate::error::{HeunError, Result};
use crate::heun::{series_solution, Poly, PolyODE, Terms};
use crate::numerics::{c, ln, Branch, Cx, Jet, ONE, ZERO};

const BESSEL_CAP: f64 = 20.0;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum BesselKind {
    J,
    Y,
}

/// `J_n(z)` or `Y_n(z)` for `n ∈ {0, 1}`, `|z| ≤ 20`, principal branch.
pub fn bessel(kind: BesselKind, n: u32, z: Cx) -> Result<Cx> {
    bessel_with(kind, n, z, Branch::Upper)
}

fn bessel_j(n: u32, z: Cx) -> Cx {
    // Σ (-1)^k (z/2)^{2k+n} / (k! (k+n)!)
    let h = z / 2.0;
    let q = -h * h;
    let mut term = if n == 0 { ONE } else { h };
    let mut sum = term;
    for k in 0..200 {
        let kf = k as f64;
        term *= q / ((kf + 1.0) * (kf + 1.0 + n as f64));
        sum += term;
        if term.norm() <= 1e-17 * sum.norm().max(1e-300) && k > 2 {
            break;
        }
    }
    sum
}

pub fn bessel_with(kind: BesselKind, n: u32, z: Cx, branch: Branch) -> Result<Cx> {
    if n > 1 {
        return Err(HeunError::domain(format!("Bessel order {n} not supported (0 or 1 only)")));
    }
    if z.norm() > BESSEL_CAP {
        return Err(HeunError::domain(format!("Bessel argument {z} outside |z| <= {BESSEL_CAP}")));
    }
    match kind {
        BesselKind::J => Ok(bessel_j(n, z)),
        BesselKind::Y => {
            if z == ZERO {
                return Err(HeunError::domain("Y_n is singular at z = 0"));
            }
            let h = z / 2.0;
            let lg = ln(h, branch);
            let q = -h * h;
            if n == 0 {
                // Y0 = (2/π)[(ln(z/2) + γ) J0 + Σ_{k≥1} (-1)^{k+1} H_k (z²/4)^k/(k!)²]
                let mut term = ONE;
                let mut hk = 0.0;
                let mut s = ZERO;
                for k in 1..200 {
                    let kf = k as f64;
                    term *= q / (kf * kf);
                    hk += 1.0 / kf;
                    let t = -term * hk;
                    s += t;
                    if t.norm() <= 1e-17 * s.norm().max(1e-300) && k > 2 {
                        break;
                    }
                }
                Ok((2.0 / PI) * ((lg + EULER_GAMMA) * bessel_j(0, z) + s))
            } else {
                // Y1 = (2/π) ln(z/2) J1 - 2/(πz) - (1/π) Σ_{k≥0} (-1)^k [ψ(k+1)+ψ(k+2)] (z/2)^{2k+1}/(k!(k+1)!)
                let mut term = h;
                let mut hk = 0.0; // H_k
                let mut s = ZERO;
                for k in 0..200 {
                    let kf = k as f64;
                    if k > 0 {
                        term *= q / (kf * (kf + 1.0));
                        hk += 1.0 / kf;
                    }
                    let psi_sum = 2.0 * hk + 1.0 / (kf + 1.0) - 2.0 * EULER_GAMMA;
                    let t = term * psi_sum;
                    s += t;
                    if t.norm() <= 1e-17 * s.norm().max(1e-300) && k > 2 {
                        break;
                    }
                }
                Ok((2.0 / PI) * lg * bessel_j(1, z) - 2.0 / (PI * z) - s / PI)
            }
        }
    }
}

/// Bessel function composed with a jet; coefficients come from Bessel's equation at `z0 ≠ 0`.
pub fn bessel_jet(kind: BesselKind, n: u32, arg: &Jet, branch: Branch) -> Result<Jet> {
    lift(arg, |z0, order| {
        let v0 = bessel_with(kind, 0, z0, branch)?;
        if z0 == ZERO {
            // only J reaches here; use the series itself
            let mut out = vec![ZERO; order + 1];
            let mut coef = ONE;
            let mut k = 0usize;
            while 2 * k + n as usize <= order {
                out[2 * k + n as usize] = coef * if n == 0 { ONE } else { c(0.5, 0.0) };
                let kf = k as f64;
                coef *= c(-0.25 / ((kf + 1.0) * (kf + 1.0 + n as f64)), 0.0);
                k += 1;
            }
            return Ok(out);
        }
        let v1 = bessel_with(kind, 1, z0, branch)?;
        let (y, dy) = if n == 0 { (v0, -v1) } else { (v1, v0 - v1 / z0) };
        let nn = c((n * n) as f64, 0.0);
        let ode = PolyODE {
            a: Poly::new([ZERO, ZERO, ONE]),
            b: Poly::new([ZERO, ONE]),
            c: Poly::new([-nn, ZERO, ONE]),
            sing: vec![ZERO],
        };
        series_solution(&ode.shift(z0), y, Some(dy), Terms::Fixed(order))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_origin() {
        assert_eq!(bessel(BesselKind::J, 0, ZERO).unwrap(), ONE);
        assert_eq!(bessel(BesselKind::J, 1, ZERO).unwrap(), ZERO);
        assert!(bessel(BesselKind::Y, 0, ZERO).is_err());
    }

    #[test]
    fn wronskian() {
        let z = c(0.7, 0.0);
        let w = bessel(BesselKind::J, 1, z).unwrap() * bessel(BesselKind::Y, 0, z).unwrap()
            - bessel(BesselKind::J, 0, z).unwrap() * bessel(BesselKind::Y, 1, z).unwrap();
        assert!((w - 2.0 / (PI * z)).norm() < 1e-14);
    }

    #[test]
    fn known_values() {
        // J0(1), Y0(1), Y1(1)
        assert!((bessel(BesselKind::J, 0, ONE).unwrap() - 0.765_197_686_557_966_6).norm() < 1e-15);
        assert!((bessel(BesselKind::Y, 0, ONE).unwrap() - 0.088_256_964_215_676_96).norm() < 1e-15);
        assert!((bessel(BesselKind::Y, 1, ONE).unwrap() + 0.781_212_821_300_288_7).norm() < 1e-15);
    }

    #[test]
    fn jet_derivative() {
        let z = c(1.3, 0.0);
        let j = bessel_jet(BesselKind::J, 0, &Jet::variable(z, 3), Branch::Upper).unwrap();
        assert!((j.coeff(1) + bessel(BesselKind::J, 1, z).unwrap()).norm() < 1e-14);
        let j0 = bessel_jet(BesselKind::J, 1, &Jet::variable(ZERO, 5), Branch::Upper).unwrap();
        assert!((j0.coeff(1) - 0.5).norm() < 1e-16 && (j0.coeff(3) + 1.0 / 16.0).norm() < 1e-16);
    }
}
