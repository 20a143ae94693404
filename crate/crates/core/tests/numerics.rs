#![allow(clippy::needless_range_loop)]

use approx::assert_relative_eq;
use heun_core::numerics::*;
use proptest::prelude::*;

fn close(a: Cx, b: Cx, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

#[test]
fn jet_product_matches_brute_force_convolution() {
    let a: Vec<Cx> = (0..7).map(|k| c(0.3 * k as f64 - 1.0, 0.1 * (k * k) as f64)).collect();
    let b: Vec<Cx> = (0..7).map(|k| c((k as f64).sin(), (k as f64 * 0.7).cos())).collect();
    let p = &Jet::new(ZERO, a.clone()) * &Jet::new(ZERO, b.clone());
    for k in 0..7 {
        let mut s = ZERO;
        for i in 0..7 {
            for j in 0..7 {
                if i + j == k {
                    s += a[i] * b[j];
                }
            }
        }
        assert!(close(p.coeff(k), s, 1e-15));
    }
}

#[test]
fn complex_power_jet_matches_finite_differences() {
    let e = c(0.5, 0.25);
    let x = Jet::variable(ZERO, 4) + c(2.0, 0.0);
    let p = jet_elem(ElemKind::Pow(e), &x).unwrap();
    let f = |z: Cx| Ok(powc(z + 2.0, e, Branch::Upper));
    let d1 = derivative_fd(f, ZERO, 1e-5).unwrap();
    assert!(close(p.derivative(1), d1, 1e-8));
    let d2 = (f(c(1e-4, 0.0)).unwrap() - 2.0 * f(ZERO).unwrap() + f(c(-1e-4, 0.0)).unwrap()) / 1e-8;
    assert!(close(p.derivative(2), d2, 1e-5));
}

#[test]
fn division_and_reciprocal() {
    let x = Jet::variable(c(0.3, 0.1), 6);
    let num = jet_elem(ElemKind::Sin, &x).unwrap();
    let den = jet_elem(ElemKind::Exp, &x).unwrap();
    let q = jet_arith(ArithKind::Div, &num, &den).unwrap();
    let back = jet_arith(ArithKind::Mul, &q, &den).unwrap();
    for k in 0..=6 {
        assert!(close(back.coeff(k), num.coeff(k), 1e-14));
    }
    let zero = Jet::constant(ZERO, ZERO, 3);
    assert!(matches!(zero.recip(), Err(heun_core::HeunError::Domain(_))));
}

#[test]
fn arctan_derivative() {
    let x = Jet::variable(c(0.7, 0.0), 3);
    let a = jet_elem(ElemKind::Arctan, &x).unwrap();
    assert_relative_eq!(a.value().re, 0.7f64.atan(), epsilon = 1e-15);
    assert_relative_eq!(a.derivative(1).re, 1.0 / 1.49, epsilon = 1e-14);
}

#[test]
fn branch_convention_on_the_cut() {
    let z = c(-2.0, 0.0);
    assert_relative_eq!(ln(z, Branch::Upper).im, std::f64::consts::PI);
    assert_relative_eq!(ln(z, Branch::Lower).im, -std::f64::consts::PI);
    assert_relative_eq!(ln(c(-2.0, -0.0), Branch::Upper).im, std::f64::consts::PI);
    assert!(close(sqrt(c(-4.0, 0.0), Branch::Upper), c(0.0, 2.0), 1e-15));
}

#[test]
fn quadrature_of_known_integrals() {
    let r = integrate_adaptive(|x| Ok(c(x * x, x)), 0.0, 1.0, 1e-13).unwrap();
    assert!(close(r.value, c(1.0 / 3.0, 0.5), 1e-12));
    let r = integrate_adaptive(|x| Ok(c(x.cos(), 0.0)), 0.0, 2.0, 1e-13).unwrap();
    assert!(close(r.value, c(2f64.sin(), 0.0), 1e-12));
    let r = integrate_adaptive(|x| Ok(c(x, 0.0)), 0.5, 0.5, 1e-13).unwrap();
    assert_eq!(r.value, ZERO);
}

#[test]
fn quadrature_with_integrable_endpoint_power() {
    let e = c(0.3, 0.2);
    let cfg = QuadConfig { abs_tol: 1e-12, rel_tol: 1e-10, max_depth: 30 };
    let r = integrate_adaptive_with(|x| Ok(powc(c(x, 0.0), e, Branch::Upper)), 0.0, 1.0, &cfg).unwrap();
    assert!(close(r.value, 1.0 / (e + 1.0), 1e-8));
}

#[test]
fn quadrature_errors_propagate() {
    let r = integrate_adaptive(
        |x| if x > 0.5 { Err(heun_core::HeunError::Domain("boom".into())) } else { Ok(ONE) },
        0.0,
        1.0,
        1e-10,
    );
    assert!(r.is_err());
}

#[test]
fn complex_token_formatting() {
    assert_eq!(parse_cx("3").unwrap(), c(3.0, 0.0));
    assert_eq!(parse_cx("-0.5+2i").unwrap(), c(-0.5, 2.0));
    assert_eq!(parse_cx("1e-3-4.5i").unwrap(), c(1e-3, -4.5));
    assert_eq!(parse_cx("-i").unwrap(), c(0.0, -1.0));
    assert!(parse_cx("1+").is_err());
    assert!(parse_cx("abc").is_err());
}

proptest! {
    #[test]
    fn format_round_trips_bit_exactly(re in -1e6f64..1e6, im in -1e6f64..1e6) {
        let z = c(re, im);
        let back = parse_cx(&fmt_cx(z)).unwrap();
        prop_assert_eq!(back.re.to_bits(), z.re.to_bits());
        prop_assert_eq!(back.im.to_bits(), z.im.to_bits());
    }

    #[test]
    fn exp_of_log_is_identity(re in -3.0f64..3.0, im in -3.0f64..3.0, order in 1usize..8) {
        prop_assume!(re.abs() + im.abs() > 0.1);
        let x = Jet::variable(c(re, im), order) ;
        let y = jet_elem(ElemKind::Log, &x).unwrap().exp();
        for k in 0..=order {
            prop_assert!(close(y.coeff(k), x.coeff(k), 1e-12));
        }
    }

    #[test]
    fn differentiate_then_integrate(a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let x = Jet::variable(c(a, b), 6);
        let s = x.sin();
        let back = s.differentiate().integrate(s.value());
        for k in 0..6 {
            prop_assert!(close(back.coeff(k), s.coeff(k), 1e-13));
        }
    }
}
