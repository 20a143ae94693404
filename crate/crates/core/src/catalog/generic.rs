use crate::error::{HeunError, Result};
use crate::heun::{ParamSet, SolutionHandle};
use crate::numerics::{Branch, Cx, Jet};

/// `I = f (h'' + p h' + q h) y`, `F = f (y h' − h y')` at `x`, for any `h` given
/// as a jet-valued function and any solution `y` of the equation with `params`.
pub fn lagrangian_pair<H>(params: &ParamSet, y: &SolutionHandle, h: H, x: Cx, branch: Branch) -> Result<(Cx, Cx)>
where
    H: Fn(&Jet) -> Result<Jet>,
{
    let xj = Jet::variable(x, 2);
    let hj = h(&xj)?;
    if hj.order() < 2 {
        return Err(HeunError::domain("h must be returned to order 2"));
    }
    let (h0, h1, h2) = (hj.derivative(0), hj.derivative(1), hj.derivative(2));
    let (p, q) = params.pq_jet(&Jet::variable(x, 0))?;
    let f = params.f_jet(&Jet::variable(x, 0), branch)?.value();
    let (y0, y1) = y.eval(x)?;
    let i = f * (h2 + p.value() * h1 + q.value() * h0) * y0;
    let fw = f * (y0 * h1 - h0 * y1);
    Ok((i, fw))
}

/// Parameter positions that enter `p(x)`; conjugate equations must agree on them.
fn p_params(params: &ParamSet) -> Vec<Cx> {
    match *params {
        ParamSet::Ch(p) => vec![p.alpha, p.beta, p.gamma],
        ParamSet::Bc(p) => vec![p.alpha, p.beta],
        ParamSet::Dc(p) => vec![p.alpha],
        ParamSet::Tc(p) => vec![p.gamma],
    }
}

/// Two parameter sets are conjugate when they share `p(x)` and differ at most in `q(x)`.
pub fn is_legal_conjugate(params: &ParamSet, params_bar: &ParamSet) -> bool {
    params.family() == params_bar.family() && p_params(params) == p_params(params_bar)
}

/// `I = f (q − q̄) h y`, `F = f (h' y − h y')` with `y`, `h` solving the equations with
/// `params` and `params_bar` respectively.
pub fn conjugate_pair(
    params: &ParamSet,
    params_bar: &ParamSet,
    y: &SolutionHandle,
    h: &SolutionHandle,
    x: Cx,
    branch: Branch,
) -> Result<(Cx, Cx)> {
    if !is_legal_conjugate(params, params_bar) {
        return Err(HeunError::constraint(
            "conjugate equations share p(x)",
            format!("{params} and {params_bar} differ outside q"),
        ));
    }
    let x0 = Jet::variable(x, 0);
    let (_, q) = params.pq_jet(&x0)?;
    let (_, qb) = params_bar.pq_jet(&x0)?;
    let f = params.f_jet(&x0, branch)?.value();
    let (y0, y1) = y.eval(x)?;
    let (h0, h1) = h.eval(x)?;
    Ok((f * (q.value() - qb.value()) * h0 * y0, f * (h1 * y0 - h0 * y1)))
}
