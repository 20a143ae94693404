//! Closed forms of the catalog entries, evaluated on jets.

use super::validity::{bc_h3_delta, ch_bessel_omega_sq, ch_h3_consts, DeltaCase};
use super::{HChoice, IdentityId, Trig};
use crate::error::{HeunError, Result};
use crate::heun::ParamSet;
use crate::numerics::{c, Branch, Cx, Jet, ONE};
use crate::special::{bessel_jet, erfi_jet, hyp2f1_jet, inc_gamma_upper_one_third_jet, BesselKind};

/// Everything about an instance that the closed forms depend on, besides the solutions.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Shape {
    pub id: IdentityId,
    pub params: ParamSet,
    pub h: HChoice,
    pub bessel: BesselKind,
    pub as_printed: bool,
    pub branch: Branch,
    pub case: Option<DeltaCase>,
}

/// Local data at one point: `x`, the solution and its derivative, and the
/// companion solutions where an entry needs them.
pub(crate) struct Local {
    pub x: Jet,
    pub y: Jet,
    pub dy: Jet,
    pub bar: Option<(Jet, Jet)>,
    pub aux: Option<Jet>,
    pub arbitrary: bool,
}

fn poly(x: &Jet, cs: &[Cx]) -> Jet {
    let mut acc = x.constant_like(*cs.last().unwrap_or(&c(0.0, 0.0)));
    for &k in cs.iter().rev().skip(1) {
        acc = &acc * x + k;
    }
    acc
}

fn r(v: f64) -> Cx {
    c(v, 0.0)
}

fn missing(what: &str) -> HeunError {
    HeunError::InvalidInstance(format!("instance has no {what}"))
}

struct Elem {
    xl: Jet,
    rl: Cx,
    sin: Jet,
    cos: Jet,
    ex: Jet,
}

impl Elem {
    fn new(h: &HChoice, x: &Jet) -> Result<Self> {
        let xl = x.powi(h.ell as i32)?;
        let (sin, cos) = (x * h.k).sin_cos();
        let ex = (&xl * h.rho).exp();
        Ok(Elem { xl, rl: h.rho * h.ell as f64, sin, cos, ex })
    }

    /// `{x p1 cos + p2 sin}` or its cosine counterpart, with `x p1` scaled by `two`.
    fn frak_f(&self, h: &HChoice, x: &Jet, p1: &Jet, p2: &Jet, two: f64) -> Jet {
        let xp1 = x * p1 * two;
        match h.trig {
            Trig::Sin => &xp1 * &self.cos + p2 * &self.sin,
            Trig::Cos => p2 * &self.cos - &xp1 * &self.sin,
        }
    }

    /// `{𝔮 sin + kx cos y}` with `𝔮 = (m + ρℓx^ℓ) y − x y'`, or its cosine counterpart.
    fn frak_g(&self, h: &HChoice, l: &Local) -> Jet {
        let q = (&self.xl * self.rl + r(h.m as f64)) * &l.y - &l.x * &l.dy;
        let kxy = &l.x * &l.y * h.k;
        match h.trig {
            Trig::Sin => &q * &self.sin + &kxy * &self.cos,
            Trig::Cos => &q * &self.cos - &kxy * &self.sin,
        }
    }

    fn h(&self, h: &HChoice, x: &Jet) -> Result<Jet> {
        let t = match h.trig {
            Trig::Sin => &self.sin,
            Trig::Cos => &self.cos,
        };
        Ok(x.powi(h.m as i32)? * &self.ex * t)
    }
}

/// Printed integrand and antiderivative of the entry.
pub(crate) fn printed(s: &Shape, l: &Local) -> Result<(Jet, Jet)> {
    use IdentityId::*;
    let br = s.branch;
    let x = &l.x;
    let (y, dy) = (&l.y, &l.dy);
    let hc = &s.h;
    let m = hc.m as f64;
    let ell = hc.ell as f64;
    let (k, rho) = (hc.k, hc.rho);
    match (s.id, s.params) {
        (ChElem, ParamSet::Ch(p)) => {
            let (a, b, g, d, e) = (p.alpha, p.beta, p.gamma, p.delta, p.eta);
            let el = Elem::new(hc, x)?;
            let xm1 = x - ONE;
            let ex = (x * a + &el.xl * rho).exp();
            let pre_i = x.powc(b + m - 1.0, br)? * xm1.powc(g, br)? * &ex;
            let pre_f = x.powc(b + m, br)? * xm1.powc(g + 1.0, br)? * &ex * 2.0;
            let av = [-b - 2.0 * m - 1.0, b + g - a + 2.0 * m + 2.0, a];
            let bv = [
                r(-2.0 * m) * (b + m),
                r(2.0 * m * m) + (g - a + b + 1.0) * 2.0 * m + (b + 1.0) * (g - a) + b + e * 2.0,
                (b + g + 2.0 * m + 2.0) * a + k * k * 2.0 + d * 2.0,
                -k * k * 2.0,
            ];
            let cv = [-ell - b - 2.0 * m, b + g - a + ell + 2.0 * m + 1.0, a];
            let lx = &el.xl * el.rl;
            let p1 = poly(x, &av) * k + &lx * &xm1 * (k * 2.0);
            let p2 = poly(x, &bv) + &lx * 2.0 * (poly(x, &cv) + &lx * &xm1);
            let i = pre_i * el.frak_f(hc, x, &p1, &p2, 2.0) * y;
            let f = pre_f * el.frak_g(hc, l);
            Ok((i, f))
        }
        (ChZero, ParamSet::Ch(p)) => {
            let xm1 = x - ONE;
            let ex = (x * p.alpha).exp();
            let lin = x * p.m_coef() + p.n_coef();
            let i = x.powc(p.beta, br)? * xm1.powc(p.gamma, br)? * &ex * lin * y;
            let f = s.params.f_jet(x, br)? * dy * -2.0;
            Ok((i, f))
        }
        (ChZeroDer1, ParamSet::Ch(p)) => {
            let xm1 = x - ONE;
            let i = x.powc(p.beta, br)? * xm1.powc(p.gamma, br)? * (x * p.alpha).exp() * y;
            let fj = s.params.f_jet(x, br)?;
            let f = if l.arbitrary {
                fj * dy * (r(-2.0) / p.n_coef())
            } else {
                let w = l.aux.as_ref().ok_or_else(|| missing("shifted solution"))?;
                fj * w * (r(-1.0) / (p.beta + 1.0))
            };
            Ok((i, f))
        }
        (ChStanjel, ParamSet::Ch(p)) => {
            let f = (x.constant_like(ONE) - x) * dy * (ONE / p.delta);
            Ok((y.clone(), f))
        }
        (ChHyp, ParamSet::Ch(p)) => {
            let (b, g) = (p.beta, p.gamma);
            let xm1 = x - ONE;
            let f1 = hyp2f1_jet(-b, g + 1.0, ONE - b, x)?;
            let f2 = hyp2f1_jet(ONE - b, g + 2.0, r(2.0) - b, x)?;
            let u = x * (p.delta * 2.0) + (g + 1.0) * b + p.eta * 2.0 + g;
            let t = (x * &f2 * ((g + 1.0) / (b - 1.0)) - &f1) * b;
            let i = xm1.powc(g, br)? * u * &f1 * y;
            let f = xm1.powc(g + 1.0, br)? * (t * y - x * &f1 * dy) * 2.0;
            Ok((i, f))
        }
        (ChH3, ParamSet::Ch(p)) => {
            let (mm, nn) = (p.m_coef(), p.n_coef());
            let (a, b, cc, _) = ch_h3_consts(&p);
            let dj = poly(x, &[a, b * 2.0, cc]);
            let h = h_explicit(s, x)?.ok_or_else(|| missing("h"))?;
            let num = poly(x, &[nn * nn + b * nn * 2.0 - a * mm, nn * (cc + mm) * 2.0, mm * (cc + mm)]);
            let u = num.try_div(&(&dj * &dj))?;
            let fj = s.params.f_jet(x, br)?;
            let i = &fj * u * &h * y;
            let lin = (x * mm + nn).try_div(&dj)?;
            let f = -(fj * h * (lin * y + dy));
            Ok((i, f))
        }
        (ChBessel, ParamSet::Ch(p)) => {
            let (a, b, g) = (p.alpha, p.beta, p.gamma);
            let omega = ch_bessel_omega_sq(&p).sqrt();
            let sq = (x - ONE).sqrt(br)?;
            let z = &sq * omega;
            let z0 = bessel_jet(s.bessel, 0, &z, br)?;
            let z1 = bessel_jet(s.bessel, 1, &z, br)?;
            let kk = poly(x, &[-b - 1.0, b + g + 2.0 - a, a]);
            let i = x.powc(b, br)? * (x - ONE).powc(g, br)? * (x * a).exp() * kk * &z0 * y;
            let f = s.params.f_jet(x, br)? * (z0 * y - sq * z1 * dy * (r(2.0) / omega));
            Ok((i, f))
        }
        (ChConj, ParamSet::Ch(p)) => {
            let (yb, dyb) = l.bar.as_ref().ok_or_else(|| missing("conjugate solution"))?;
            let i = x.powc(p.beta, br)? * (x - ONE).powc(p.gamma, br)? * (x * p.alpha).exp() * y * yb;
            let f = s.params.f_jet(x, br)? * (dyb * y - yb * dy) * (ONE / (p.eta * 2.0));
            Ok((i, f))
        }
        (BcElem, ParamSet::Bc(p)) => {
            let (a, b, g, d) = (p.alpha, p.beta, p.gamma, p.delta);
            let el = Elem::new(hc, x)?;
            let ex = (poly(x, &[r(0.0), -b, r(-1.0)]) + &el.xl * rho).exp();
            let pre_i = x.powc(a + m - 1.0, br)? * &ex;
            let pre_f = x.powc(a + m, br)? * &ex;
            let av = [a + 1.0 + 2.0 * m, -b, r(-2.0)];
            let bv = [r(m) * (a + m), -(b * (a + 2.0 * m + 1.0) + d) / 2.0, g - a - k * k - 2.0 * m - 2.0];
            let cv = [a + ell + 2.0 * m, -b, r(-2.0)];
            let lx = &el.xl * el.rl;
            let p1 = poly(x, &av) * k + &lx * (k * 2.0);
            let p2 = poly(x, &bv) + &lx * (poly(x, &cv) + &lx);
            let i = pre_i * el.frak_f(hc, x, &p1, &p2, 1.0) * y;
            let f = pre_f * el.frak_g(hc, l);
            Ok((i, f))
        }
        (BcZero, ParamSet::Bc(p)) => {
            let ex = poly(x, &[r(0.0), -p.beta, r(-1.0)]).exp();
            let i = x.powc(p.alpha, br)? * (x * p.a1() - p.a2()) * ex * y;
            let f = s.params.f_jet(x, br)? * dy * -2.0;
            Ok((i, f))
        }
        (BcZeroSpc, ParamSet::Bc(p)) => {
            let ex = poly(x, &[r(0.0), -p.beta, r(-1.0)]).exp();
            let i = x.powc(p.alpha, br)? * &ex * y;
            let f = if l.arbitrary {
                s.params.f_jet(x, br)? * dy * (r(2.0) / p.a2())
            } else {
                let w = l.aux.as_ref().ok_or_else(|| missing("shifted solution"))?;
                x.powc(p.alpha + 1.0, br)? * ex * w * (ONE / (p.alpha + 1.0))
            };
            Ok((i, f))
        }
        (BcErfi, ParamSet::Bc(p)) => {
            let ex = poly(x, &[r(0.0), -p.beta, r(-1.0)]).exp();
            let e = erfi_jet(&(x + p.beta / 2.0))?;
            let coef = x.constant_like(p.gamma - 1.0) - x.recip()? * (p.delta / 2.0);
            let i = &ex * coef * &e * y;
            let k0 = (p.beta * p.beta / 4.0).exp() * (2.0 / std::f64::consts::PI.sqrt());
            let f = y * k0 - ex * e * dy;
            Ok((i, f))
        }
        (BcH3, ParamSet::Bc(p)) => {
            let (a, b, g, d) = (p.alpha, p.beta, p.gamma, p.delta);
            let ej = poly(x, &[-a - 1.0, b, r(2.0)]);
            let h = h_explicit_raw(s, x)?;
            let u2 = ((a - g) * (a - g) + (a * 3.0 - g * 3.0 + 4.0) * 2.0) * 4.0;
            let u1 = (a * b * (a - g + 5.0) + a * d + (b + d) * (r(4.0) - g)) * 4.0;
            let u0 = a * b * (a * b + b * 4.0 + d * 2.0)
                + d * d
                + b * b * 3.0
                + (a * a + b * d - a * g + a * 3.0 - g + 2.0) * 4.0;
            let u = poly(x, &[u0, u1, u2]).try_div(&(&ej * &ej))?;
            let sj = poly(x, &[-b * (a + 1.0) - d, (g - a - 2.0) * 2.0]).try_div(&ej)?;
            let pre = x.powc(a + 1.0, br)? * poly(x, &[r(0.0), -b, r(-1.0)]).exp() * &h;
            let i = &pre * u * y;
            let f = pre * (sj * y - dy * 2.0) * 2.0;
            Ok((i, f))
        }
        (BcConj, ParamSet::Bc(p)) => {
            let (yb, dyb) = l.bar.as_ref().ok_or_else(|| missing("conjugate solution"))?;
            let ex = poly(x, &[r(0.0), -p.beta, r(-1.0)]).exp();
            let i = x.powc(p.alpha, br)? * (x * (p.gamma * 2.0) - p.delta) * &ex * y * yb;
            let f = x.powc(p.alpha + 1.0, br)? * ex * (y * dyb - dy * yb);
            Ok((i, f))
        }
        (DcElem, ParamSet::Dc(p)) => {
            let (a, b, g, d) = (p.alpha, p.beta, p.gamma, p.delta);
            let el = Elem::new(hc, x)?;
            let x2m1 = x * x - ONE;
            let ex = ((x * a).try_div(&x2m1)? + &el.xl * rho).exp();
            let pre_i = x.powi(hc.m as i32 - 2)? * &ex * x2m1.powi(-2)?;
            let pre_f = x.powi(hc.m as i32 - 1)? * &x2m1 * &ex;
            let av = [r(-2.0 * m), a, r(6.0 * m + 2.0), r(0.0), r(-6.0 * m - 4.0), -a, r(2.0 * m + 2.0)];
            let b6 = k * k * 3.0 + m * m + m;
            let b4 = if s.as_printed { b - b6 } else { b - k * k * 3.0 - 3.0 * m * m - m };
            let bv = [r(m - m * m), a * m, k * k + 3.0 * m * m - m + d, g + a * 2.0, b4, -a * m, b6, r(0.0), -k * k];
            let c6 = ell + 2.0 * m + 1.0;
            let cv = [r(2.0 - c6), a, r(3.0 * c6 - 4.0), r(0.0), r(2.0 - 3.0 * c6), -a, r(c6)];
            let lx = &el.xl * el.rl;
            let cube = &x2m1 * &x2m1 * &x2m1;
            let p1 = poly(x, &av) * k + &lx * &cube * (k * 2.0);
            let p2 = poly(x, &bv) + &lx * (poly(x, &cv) + &lx * &cube);
            let i = pre_i * el.frak_f(hc, x, &p1, &p2, 1.0) * y;
            let f = pre_f * el.frak_g(hc, l);
            Ok((i, f))
        }
        (DcZero, ParamSet::Dc(p)) => {
            let x2m1 = x * x - ONE;
            let ex = (x * p.alpha).try_div(&x2m1)?.exp();
            let sj = poly(x, &[p.delta, p.gamma + p.alpha * 2.0, p.beta]);
            let i = (&ex * sj).try_div(&(&x2m1 * &x2m1))? * y;
            let f = -(x2m1 * ex * dy);
            Ok((i, f))
        }
        (DcLog, ParamSet::Dc(p)) => {
            let x2m1 = x * x - ONE;
            let h = h_explicit_raw(s, x)?;
            let i = poly(x, &[p.delta, p.gamma, p.beta]).try_div(&(&x2m1 * &x2m1))? * &h * y;
            let f = y - x2m1 * h * dy;
            Ok((i, f))
        }
        (DcH3, ParamSet::Dc(p)) => {
            let (b, g, d) = (p.beta, p.gamma, p.delta);
            let x2m1 = x * x - ONE;
            let ex = (x * g + b + d).try_div(&(&x2m1 * 4.0))?.exp();
            let h = h_explicit_raw(s, x)?;
            let uu = poly(
                x,
                &[
                    d * d + d * 2.0,
                    g * d * 2.0,
                    b * d * 2.0 + g * g - b * 2.0 - d * 12.0,
                    g * (b - 4.0) * 2.0,
                    b * b - b * 4.0 + d * 10.0,
                    g * 8.0,
                    b * 6.0,
                ],
            );
            let i = x.powc(-d / 2.0 - 2.0, br)?
                * (x - ONE).powc(d / 4.0 + g / 8.0 - 3.0, br)?
                * (x + ONE).powc(d / 4.0 - g / 8.0 - 3.0, br)?
                * ex
                * uu
                * y;
            let s0 = poly(x, &[d, g, b]);
            let inner = s0.try_div(&(x * &x2m1))? * y * 2.0 + x2m1 * dy * 4.0;
            let f = -(h * inner);
            Ok((i, f))
        }
        (DcConj, ParamSet::Dc(p)) => {
            let (yb, dyb) = l.bar.as_ref().ok_or_else(|| missing("conjugate solution"))?;
            let x2m1 = x * x - ONE;
            let ex = (x * p.alpha).try_div(&x2m1)?.exp();
            let i = (x * &ex).try_div(&(&x2m1 * &x2m1))? * y * yb;
            let f = x2m1 * ex * (y * dyb - dy * yb) * (ONE / (p.gamma * 2.0));
            Ok((i, f))
        }
        (TcElem, ParamSet::Tc(p)) => {
            let (a, b, g) = (p.alpha, p.beta, p.gamma);
            let el = Elem::new(hc, x)?;
            let ex = (poly(x, &[r(0.0), -g, r(0.0), r(-1.0)]) + &el.xl * rho).exp();
            let pre_i = x.powi(hc.m as i32 - 2)? * &ex;
            let pre_f = x.powi(hc.m as i32 - 1)? * &ex;
            let sv = [r(m * (m - 1.0)), -g * m, a - k * k, b - 3.0 * m - 3.0];
            let tv = [r(ell + 2.0 * m - 1.0), -g, r(0.0), r(-3.0)];
            let lx = &el.xl * el.rl;
            let p1 = poly(x, &[r(2.0 * m), -g, r(0.0), r(-3.0)]) * k + &lx * (k * 2.0);
            let p2 = poly(x, &sv) + &lx * (poly(x, &tv) + &lx);
            let i = pre_i * el.frak_f(hc, x, &p1, &p2, 1.0) * y;
            let f = pre_f * el.frak_g(hc, l);
            Ok((i, f))
        }
        (TcGamma, ParamSet::Tc(p)) => {
            let w = -(x * x * x);
            let gm = inc_gamma_upper_one_third_jet(&w, br)?;
            let ex = w.exp();
            let i = (x * (p.beta - 3.0) + p.alpha) * &ex * &gm * y;
            let f = (x * x * 3.0).try_div(&w.powc(r(2.0 / 3.0), br)?)? * y - ex * gm * dy;
            Ok((i, f))
        }
        (TcH3, ParamSet::Tc(p)) => {
            let (a, b, g) = (p.alpha, p.beta, p.gamma);
            let h = h_explicit_raw(s, x)?;
            let ex = poly(x, &[r(0.0), -g, r(0.0), r(-1.0)]).exp();
            let qd = poly(x, &[g, r(0.0), r(3.0)]);
            let kk = poly(x, &[a * a + g * (b - 3.0), a * (b - 6.0) * 2.0, (b - 3.0) * (b - 6.0)]);
            let pre = ex * &h;
            let i = (&pre * kk).try_div(&(&qd * &qd))? * y;
            let f = pre * ((x * (b - 3.0) + a).try_div(&qd)? * y - dy);
            Ok((i, f))
        }
        (TcConj, ParamSet::Tc(p)) => {
            let (yb, dyb) = l.bar.as_ref().ok_or_else(|| missing("conjugate solution"))?;
            let ex = poly(x, &[r(0.0), -p.gamma, r(0.0), r(-1.0)]).exp();
            let i = &ex * yb * y;
            let f = ex * (dyb * y - yb * dy) * (ONE / (p.alpha * 2.0));
            Ok((i, f))
        }
        (id, ps) => Err(HeunError::InvalidInstance(format!("{id} cannot take {} parameters", ps.family()))),
    }
}

/// The bare auxiliary function of the entries whose `h` is given in closed form.
fn h_explicit_raw(s: &Shape, x: &Jet) -> Result<Jet> {
    use IdentityId::*;
    let br = s.branch;
    let case = s.case.unwrap_or(DeltaCase::Negative);
    match (s.id, s.params) {
        (ChH3, ParamSet::Ch(p)) => {
            let (mm, nn) = (p.m_coef(), p.n_coef());
            let (a, b, cc, delta) = ch_h3_consts(&p);
            let lin = x * cc + b;
            let mbnc = mm * b - nn * cc;
            match case {
                DeltaCase::Positive => {
                    let sd = delta.sqrt();
                    let dj = poly(x, &[a, b * 2.0, cc]);
                    let at = (&lin * (ONE / sd)).atan()?;
                    Ok(dj.powc(-mm / (cc * 2.0), br)? * (at * (mbnc / (cc * sd))).exp())
                }
                DeltaCase::Zero => {
                    let e = lin.recip()? * (-mbnc / cc);
                    Ok(lin.powc(-mm / cc, br)? * e.exp())
                }
                DeltaCase::Negative => {
                    let sd = (-delta).sqrt();
                    let dj = poly(x, &[a, b * 2.0, cc]);
                    let ratio = (&lin - sd).try_div(&(&lin + sd))?;
                    Ok(dj.powc(-mm / (cc * 2.0), br)? * ratio.powc(mbnc / (cc * sd * 2.0), br)?)
                }
            }
        }
        (BcH3, ParamSet::Bc(p)) => {
            let (a, b, g, d) = (p.alpha, p.beta, p.gamma, p.delta);
            let delta = bc_h3_delta(&p);
            let e = (g - a - 2.0) / 4.0;
            let kappa = d * 2.0 + b * (a + g);
            let lin = x * 4.0 + b;
            match case {
                DeltaCase::Positive => {
                    let sd = delta.sqrt();
                    let ej = poly(x, &[-a - 1.0, b, r(2.0)]);
                    let at = (&lin * (ONE / (sd * 2.0))).atan()?;
                    Ok(ej.powc(e, br)? * (at * (-kappa / (sd * 4.0))).exp())
                }
                DeltaCase::Zero => {
                    let ex = lin.recip()? * (kappa / 2.0);
                    Ok((x + b / 4.0).powc(e * 2.0, br)? * ex.exp())
                }
                DeltaCase::Negative => {
                    let sd = (-delta).sqrt();
                    let ej = poly(x, &[-a - 1.0, b, r(2.0)]);
                    let ratio = (&lin + sd * 2.0).try_div(&(&lin - sd * 2.0))?;
                    Ok(ej.powc(e, br)? * ratio.powc(kappa / (sd * 8.0), br)?)
                }
            }
        }
        (DcLog, _) => Ok((x - ONE).try_div(&(x + ONE))?.ln(br)? * 0.5),
        (DcH3, ParamSet::Dc(p)) => {
            let (b, g, d) = (p.beta, p.gamma, p.delta);
            let x2m1 = x * x - ONE;
            let ex = (x * g + b + d).try_div(&(&x2m1 * 4.0))?.exp();
            Ok(x.powc(-d / 2.0, br)?
                * (x - ONE).powc((d * 2.0 + g) / 8.0, br)?
                * (x + ONE).powc((d * 2.0 - g) / 8.0, br)?
                * ex)
        }
        (TcH3, ParamSet::Tc(p)) => {
            let (a, b, g) = (p.alpha, p.beta, p.gamma);
            match case {
                DeltaCase::Zero => Ok(x.powc((b - 3.0) / 3.0, br)? * (x.recip()? * (-a / 3.0)).exp()),
                DeltaCase::Positive => {
                    let qd = poly(x, &[g, r(0.0), r(3.0)]);
                    let at = (x * (r(3.0).sqrt() / g.sqrt())).atan()?;
                    Ok(qd.powc((b - 3.0) / 6.0, br)? * (at * (a / (g * 3.0).sqrt())).exp())
                }
                DeltaCase::Negative => {
                    let qd = poly(x, &[g, r(0.0), r(3.0)]);
                    let sg = (-g * 3.0).sqrt();
                    let ratio = (x * 3.0 - sg).try_div(&(x * 3.0 + sg))?;
                    Ok(qd.powc((b - 3.0) / 6.0, br)? * ratio.powc(a / (sg * 2.0), br)?)
                }
            }
        }
        (id, _) => Err(HeunError::InvalidInstance(format!("{id} has no closed-form auxiliary function"))),
    }
}

/// The function `h` for which the generic Lagrangian pair equals the printed pair
/// (scale included), or `None` for the conjugate entries.
pub(crate) fn h_explicit(s: &Shape, x: &Jet) -> Result<Option<Jet>> {
    use IdentityId::*;
    let br = s.branch;
    let hc = &s.h;
    let h = match (s.id, s.params) {
        (ChElem, _) => Elem::new(hc, x)?.h(hc, x)? * 2.0,
        (BcElem | DcElem | TcElem, _) => Elem::new(hc, x)?.h(hc, x)?,
        (ChZero | BcZero, _) => x.constant_like(r(2.0)),
        (DcZero, _) => x.constant_like(ONE),
        (ChZeroDer1, ParamSet::Ch(p)) => x.constant_like(r(2.0) / p.n_coef()),
        (ChStanjel, ParamSet::Ch(p)) => x.constant_like(ONE / p.delta),
        (ChHyp, ParamSet::Ch(p)) => x.powc(-p.beta, br)? * hyp2f1_jet(-p.beta, p.gamma + 1.0, ONE - p.beta, x)? * 2.0,
        (ChBessel, ParamSet::Ch(p)) => {
            let omega = ch_bessel_omega_sq(&p).sqrt();
            let sq = (x - ONE).sqrt(br)?;
            let z1 = bessel_jet(s.bessel, 1, &(&sq * omega), br)?;
            sq * z1 * (r(2.0) / omega)
        }
        (BcZeroSpc, ParamSet::Bc(p)) => x.constant_like(r(-2.0) / p.a2()),
        (BcErfi, ParamSet::Bc(p)) => erfi_jet(&(x + p.beta / 2.0))?,
        (TcGamma, _) => inc_gamma_upper_one_third_jet(&-(x * x * x), br)?,
        (ChH3 | DcLog | TcH3, _) => h_explicit_raw(s, x)?,
        (BcH3 | DcH3, _) => h_explicit_raw(s, x)? * 4.0,
        (ChConj | BcConj | DcConj | TcConj, _) => return Ok(None),
        (id, ps) => return Err(HeunError::InvalidInstance(format!("{id} cannot take {} parameters", ps.family()))),
    };
    Ok(Some(h))
}

/// `k` with printed pair = generic conjugate pair / k.
pub(crate) fn conjugate_scale(s: &Shape) -> Option<Cx> {
    match (s.id, s.params) {
        (IdentityId::ChConj, ParamSet::Ch(p)) => Some(p.eta * 2.0),
        (IdentityId::BcConj, _) => Some(ONE),
        (IdentityId::DcConj, ParamSet::Dc(p)) => Some(p.gamma * 2.0),
        (IdentityId::TcConj, ParamSet::Tc(p)) => Some(p.alpha * 2.0),
        _ => None,
    }
}

/// Parameters of the conjugate equation for the conjugate entries.
pub(crate) fn conjugate_params(id: IdentityId, params: &ParamSet) -> Option<ParamSet> {
    use crate::heun::{BcParams, ChParams, DcParams, TcParams};
    match (id, *params) {
        (IdentityId::ChConj, ParamSet::Ch(p)) => Some(ParamSet::Ch(ChParams { eta: -p.eta, ..p })),
        (IdentityId::BcConj, ParamSet::Bc(p)) => Some(ParamSet::Bc(BcParams { gamma: -p.gamma, delta: -p.delta, ..p })),
        (IdentityId::DcConj, ParamSet::Dc(p)) => Some(ParamSet::Dc(DcParams { gamma: -p.gamma, ..p })),
        (IdentityId::TcConj, ParamSet::Tc(p)) => Some(ParamSet::Tc(TcParams { alpha: -p.alpha, ..p })),
        _ => None,
    }
}

/// Parameters of the auxiliary solution appearing in a printed antiderivative.
pub(crate) fn aux_params(id: IdentityId, params: &ParamSet) -> Option<ParamSet> {
    use crate::derivs::case1_shifted;
    use crate::heun::BcParams;
    match (id, *params) {
        (IdentityId::ChZeroDer1, ParamSet::Ch(p)) => Some(ParamSet::Ch(case1_shifted(&p))),
        (IdentityId::BcZeroSpc, ParamSet::Bc(p)) => Some(ParamSet::Bc(BcParams {
            alpha: p.alpha + 1.0,
            beta: p.beta,
            gamma: p.alpha - 1.0,
            delta: p.beta + p.delta,
        })),
        _ => None,
    }
}

/// Points where the closed forms of an entry are singular (zeros of denominators,
/// branch points of `h`), given as complex roots.
pub(crate) fn singular_points(s: &Shape) -> Vec<Cx> {
    use IdentityId::*;
    let quad_roots = |a: Cx, b: Cx, cc: Cx| -> Vec<Cx> {
        // roots of cc x² + b x + a
        if cc.norm() < 1e-300 {
            return if b.norm() > 0.0 { vec![-a / b] } else { vec![] };
        }
        let disc = (b * b - cc * a * 4.0).sqrt();
        vec![(-b + disc) / (cc * 2.0), (-b - disc) / (cc * 2.0)]
    };
    match (s.id, s.params) {
        (ChH3, ParamSet::Ch(p)) => {
            let (a, b, cc, _) = ch_h3_consts(&p);
            let mut v = quad_roots(a, b * 2.0, cc);
            if s.case == Some(DeltaCase::Zero) {
                v.push(-b / cc);
            }
            v
        }
        (BcH3, ParamSet::Bc(p)) => {
            let mut v = quad_roots(-p.alpha - 1.0, p.beta, r(2.0));
            if s.case == Some(DeltaCase::Zero) {
                v.push(-p.beta / 4.0);
            }
            v
        }
        (TcH3, ParamSet::Tc(p)) => {
            if s.case == Some(DeltaCase::Zero) {
                vec![r(0.0)]
            } else {
                quad_roots(p.gamma, r(0.0), r(3.0))
            }
        }
        (DcElem | TcElem, _) if s.h.m < 2 => vec![r(0.0)],
        (BcErfi | DcH3 | TcGamma, _) => vec![r(0.0)],
        _ => vec![],
    }
}

/// Bases of non-integer powers and logarithms whose path across the domain must
/// stay off the branch cut.
pub(crate) fn branch_bases(s: &Shape, x: f64) -> Vec<Cx> {
    use IdentityId::*;
    let xc = r(x);
    match (s.id, s.params) {
        (ChH3, ParamSet::Ch(p)) => {
            let (a, b, cc, delta) = ch_h3_consts(&p);
            let dj = cc * xc * xc + b * xc * 2.0 + a;
            let lin = cc * xc + b;
            let sd = (-delta).sqrt();
            vec![dj, lin, (lin - sd) / (lin + sd)]
        }
        (BcH3, ParamSet::Bc(p)) => {
            let delta = bc_h3_delta(&p);
            let sd = (-delta).sqrt();
            let lin = xc * 4.0 + p.beta;
            vec![xc * xc * 2.0 + p.beta * xc - p.alpha - 1.0, xc + p.beta / 4.0, (lin + sd * 2.0) / (lin - sd * 2.0)]
        }
        (TcH3, ParamSet::Tc(p)) => {
            let sg = (-p.gamma * 3.0).sqrt();
            vec![xc * xc * 3.0 + p.gamma, (xc * 3.0 - sg) / (xc * 3.0 + sg)]
        }
        (ChBessel, ParamSet::Ch(p)) => {
            let omega = ch_bessel_omega_sq(&p).sqrt();
            vec![omega * (xc - 1.0).sqrt()]
        }
        _ => vec![],
    }
}
