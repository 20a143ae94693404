use super::cx::{Cx, ZERO};
use crate::error::{HeunError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Cx,
    pub err_estimate: f64,
    pub evaluations: usize,
}

/// Tolerance used is `max(abs_tol, rel_tol * |coarse estimate|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { abs_tol: 1e-13, rel_tol: 1e-10, max_depth: 30 }
    }
}

/// Adaptive Simpson quadrature of a complex integrand with absolute tolerance `tol`.
pub fn integrate_adaptive<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<Cx>,
{
    integrate_adaptive_with(f, a, b, &QuadConfig { abs_tol: tol, rel_tol: 0.0, max_depth: 30 })
}

pub fn integrate_adaptive_with<F>(mut f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<Cx>,
{
    if !(cfg.abs_tol > 0.0 || cfg.rel_tol > 0.0) {
        return Err(HeunError::domain("quadrature tolerance must be positive"));
    }
    if a == b {
        return Ok(QuadResult { value: ZERO, err_estimate: 0.0, evaluations: 0 });
    }
    if !(a < b) {
        return Err(HeunError::domain(format!("quadrature needs a < b, got [{a}, {b}]")));
    }
    let fa = f(a)?;
    let fm = f(0.5 * (a + b))?;
    let fb = f(b)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let tol = cfg.abs_tol.max(cfg.rel_tol * whole.norm());
    let mut st = State { f: &mut f, evaluations: 3, err: 0.0, exceeded: false, max_depth: cfg.max_depth };
    let value = st.recurse(a, b, fa, fm, fb, whole, tol, 0)?;
    let out = QuadResult { value, err_estimate: st.err, evaluations: st.evaluations };
    // intervals cut off at the depth cap are fine as long as the total estimate stays within tol
    if st.exceeded && st.err > tol {
        return Err(HeunError::convergence(
            format!("adaptive Simpson depth cap {} exceeded on [{a}, {b}]", cfg.max_depth),
            Some(value),
        ));
    }
    Ok(out)
}

struct State<'a, F> {
    f: &'a mut F,
    evaluations: usize,
    err: f64,
    exceeded: bool,
    max_depth: u32,
}

impl<F: FnMut(f64) -> Result<Cx>> State<'_, F> {
    #[allow(clippy::too_many_arguments)]
    fn recurse(&mut self, a: f64, b: f64, fa: Cx, fm: Cx, fb: Cx, whole: Cx, tol: f64, depth: u32) -> Result<Cx> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (self.f)(lm)?;
        let frm = (self.f)(rm)?;
        self.evaluations += 2;
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        let est = delta.norm() / 15.0;
        if est <= tol || depth >= self.max_depth || m <= a || b <= m {
            if est > tol {
                self.exceeded = true;
            }
            self.err += est;
            return Ok(left + right + delta / 15.0);
        }
        let l = self.recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)?;
        let r = self.recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)?;
        Ok(l + r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{c, powc, Branch};
    use std::f64::consts::PI;

    #[test]
    fn polynomial_and_sine() {
        let r = integrate_adaptive(|x| Ok(c(x * x, 0.0)), 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 1.0 / 3.0).norm() < 1e-12);
        let r = integrate_adaptive(|x| Ok(c(x.sin(), 0.0)), 0.0, PI, 1e-10).unwrap();
        assert!((r.value - 2.0).norm() < 1e-10);
        assert!(r.err_estimate >= 0.0);
    }

    #[test]
    fn complex_power() {
        let p = c(0.3, 0.2);
        let r = integrate_adaptive(|x| Ok(powc(c(x, 0.0), p, Branch::Upper)), 0.0, 1.0, 1e-9).unwrap();
        assert!((r.value - 1.0 / (p + 1.0)).norm() < 1e-8, "{}", r.value);
    }

    #[test]
    fn depth_cap_reports_best_estimate() {
        let cfg = QuadConfig { abs_tol: 1e-300, rel_tol: 0.0, max_depth: 3 };
        let err = integrate_adaptive_with(|x| Ok(c(x.sqrt(), 0.0)), 0.0, 1.0, &cfg).unwrap_err();
        match err {
            HeunError::Convergence { best: Some(v), .. } => assert!((v - 2.0 / 3.0).norm() < 1e-2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_interval() {
        let r = integrate_adaptive(|_| Ok(c(1.0, 0.0)), 0.4, 0.4, 1e-12).unwrap();
        assert_eq!(r.value, ZERO);
    }
}
