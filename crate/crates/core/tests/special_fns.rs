#![allow(clippy::excessive_precision)]

use approx::assert_relative_eq;
use heun_core::numerics::{c, Branch, Cx, Jet};
use heun_core::special::*;
use proptest::prelude::*;

fn close(a: Cx, b: Cx, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

#[test]
fn gamma_one_third_matches_statrs() {
    assert_relative_eq!(GAMMA_ONE_THIRD, statrs::function::gamma::gamma(1.0 / 3.0), epsilon = 1e-14);
    let v = inc_gamma_upper_one_third(c(0.0, 0.0)).unwrap();
    assert!(close(v, c(GAMMA_ONE_THIRD, 0.0), 1e-14));
}

#[test]
fn upper_incomplete_gamma_against_statrs() {
    // statrs gives the regularized lower function P(a, x); Γ(a, x) = Γ(a)(1 − P).
    for &w in &[0.2, 1.1, 3.0, 6.5] {
        let want = GAMMA_ONE_THIRD * (1.0 - statrs::function::gamma::gamma_lr(1.0 / 3.0, w));
        let got = inc_gamma_upper_one_third(c(w, 0.0)).unwrap();
        assert!(close(got, c(want, 0.0), 1e-12), "w = {w}: {got} vs {want}");
    }
    assert!(close(inc_gamma_upper_one_third(c(1.1, 0.0)).unwrap(), c(0.22248482365601182831, 0.0), 1e-13));
}

#[test]
fn upper_incomplete_gamma_derivative() {
    let w = Jet::variable(c(1.1, 0.0), 2);
    let g = inc_gamma_upper_one_third_jet(&w, Branch::Upper).unwrap();
    let want = -(1.1f64).powf(-2.0 / 3.0) * (-1.1f64).exp();
    assert_relative_eq!(g.derivative(1).re, want, epsilon = 1e-12);
    assert!(inc_gamma_upper_one_third(c(50.0, 0.0)).is_err());
}

#[test]
fn erfi_values_and_derivative() {
    assert!(close(erfi(c(0.5, 0.0)).unwrap(), c(0.61495209469651098084, 0.0), 1e-14));
    assert!(close(erfi(c(0.3, 0.4)).unwrap(), c(0.29443980776931705614, 0.46443721297956142201), 1e-14));
    let e = erfi_jet(&Jet::variable(c(0.5, 0.0), 2)).unwrap();
    let want = 2.0 / std::f64::consts::PI.sqrt() * 0.25f64.exp();
    assert_relative_eq!(e.derivative(1).re, want, epsilon = 1e-12);
    // erf(x) = −i erfi(ix); statrs erf is good to about 1e-11
    let z = erfi(c(0.0, 0.8)).unwrap() * c(0.0, -1.0);
    assert_relative_eq!(z.re, statrs::function::erf::erf(0.8), epsilon = 1e-10);
}

#[test]
fn bessel_values_and_wronskian() {
    assert!(close(bessel(BesselKind::J, 0, c(2.5, 0.0)).unwrap(), c(-0.048383776468197996, 0.0), 1e-13));
    assert!(close(bessel(BesselKind::Y, 1, c(2.5, 0.0)).unwrap(), c(0.14591813796678580, 0.0), 1e-13));
    let z = c(0.7, 0.0);
    let w = bessel(BesselKind::J, 1, z).unwrap() * bessel(BesselKind::Y, 0, z).unwrap()
        - bessel(BesselKind::J, 0, z).unwrap() * bessel(BesselKind::Y, 1, z).unwrap();
    assert!(close(w, c(2.0 / (std::f64::consts::PI * 0.7), 0.0), 1e-10));
    assert!(bessel(BesselKind::J, 2, z).is_err());
}

#[test]
fn bessel_jet_satisfies_bessel_equation() {
    for kind in [BesselKind::J, BesselKind::Y] {
        let z0 = c(1.3, 0.4);
        let j = bessel_jet(kind, 0, &Jet::variable(z0, 3), Branch::Upper).unwrap();
        let r = z0 * z0 * j.derivative(2) + z0 * j.derivative(1) + z0 * z0 * j.value();
        assert!(r.norm() < 1e-12, "{kind:?}: {r}");
        let j1 = bessel_jet(kind, 1, &Jet::variable(z0, 1), Branch::Upper).unwrap();
        assert!(close(j.derivative(1), -j1.value(), 1e-12));
    }
}

#[test]
fn hypergeometric_values() {
    let v = hyp1f1(c(0.3, 0.0), c(1.7, 0.0), c(0.5, 0.2)).unwrap();
    assert!(close(v, c(1.0977314145472532, 0.045181232788316382), 1e-14));
    let v = hyp2f1(c(0.5, 0.0), c(1.2, 0.0), c(2.3, 0.0), c(0.6, 0.0)).unwrap();
    assert!(close(v, c(1.2344506801929049, 0.0), 1e-13));
    assert!(hyp1f1(c(1.0, 0.0), c(-2.0, 0.0), c(0.5, 0.0)).is_err());
    assert!(hyp2f1(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(0.95, 0.0)).is_err());
}

#[test]
fn hypergeometric_jets_differentiate_correctly() {
    let (a, b) = (c(0.4, 0.1), c(1.3, -0.2));
    let z0 = c(0.6, 0.1);
    let j = hyp1f1_jet(a, b, &Jet::variable(z0, 1)).unwrap();
    let want = a / b * hyp1f1(a + 1.0, b + 1.0, z0).unwrap();
    assert!(close(j.derivative(1), want, 1e-13));
    let j = hyp2f1_jet(a, b, c(2.1, 0.0), &Jet::variable(c(0.3, 0.0), 1)).unwrap();
    let want = a * b / 2.1 * hyp2f1(a + 1.0, b + 1.0, c(3.1, 0.0), c(0.3, 0.0)).unwrap();
    assert!(close(j.derivative(1), want, 1e-13));
}

#[test]
fn invalid_config_is_rejected() {
    let cfg = SpecialFnConfig { series_tol: 0.0, max_terms: 10 };
    assert!(cfg.validate().is_err());
}

proptest! {
    #[test]
    fn kummer_transformation(a in -2.0f64..2.0, b in 0.3f64..3.0, x in -2.0f64..2.0, y in -1.0f64..1.0) {
        let z = c(x, y);
        let lhs = hyp1f1(c(a, 0.0), c(b, 0.0), z).unwrap();
        let rhs = z.exp() * hyp1f1(c(b - a, 0.0), c(b, 0.0), -z).unwrap();
        prop_assert!(close(lhs, rhs, 1e-11));
    }

    #[test]
    fn gauss_log_closed_form(x in -0.85f64..0.85) {
        prop_assume!(x.abs() > 1e-3);
        let v = hyp2f1(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(x, 0.0)).unwrap();
        prop_assert!(close(v, c(-(1.0 - x).ln() / x, 0.0), 1e-13));
    }
}
