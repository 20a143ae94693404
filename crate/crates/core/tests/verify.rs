use heun_core::catalog::*;
use heun_core::derivs::FormulaId;
use heun_core::heun::{BcParams, Family, ParamSet};
use heun_core::numerics::{c, ONE};
use heun_core::verify::*;

fn small(seed: u64) -> SuiteConfig {
    SuiteConfig {
        seed,
        draws_per_identity: 2,
        grid_points: 7,
        transcription_points: 3,
        formula_draws: 3,
        formula_points: 3,
        seed_draws: 10,
        hypergeometric_draws: 4,
        engine_draws: 2,
        ..SuiteConfig::default()
    }
}

fn toy() -> IdentityInstance {
    let p = ParamSet::from_reals(Family::Ch, &[0.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
    instantiate(IdentityId::ChZero, &p, &InstanceOptions::default()).unwrap()
}

#[test]
fn derivative_protocol_and_negative_control() {
    let inst = toy();
    let grid = linspace(0.05, 0.85, 21);
    let rep = check_derivative(&inst, &grid, 1e-8);
    assert!(rep.is_pass() && rep.max_rel_err <= 1e-8, "{rep:?}");
    assert_eq!(rep.protocol, Protocol::Derivative);
    let bad = check_derivative(&inst.perturbed(1.01), &grid, 1e-8);
    assert_eq!(bad.status, Status::Fail);
    assert!(!check_quadrature(&inst.perturbed(1.01), 0.1, 0.6, 1e-7).is_pass());
}

#[test]
fn resonant_entry_with_free_seeds() {
    let p = apply_ties(IdentityId::ChStanjel, &ParamSet::from_reals(Family::Ch, &[0.0, 0.0, 0.0, 0.4, 0.0]).unwrap());
    let seeds = ArbitrarySeeds { x_anchor: None, y0: c(0.4, -0.2), y1: c(1.1, 0.3), ybar0: ONE, ybar1: ONE };
    let opts = InstanceOptions { seed_mode: SeedMode::Arbitrary(seeds), ..Default::default() };
    let inst = instantiate(IdentityId::ChStanjel, &p, &opts).unwrap();
    let (a, b) = inst.domain();
    assert!(check_derivative(&inst, &linspace(a, b, 21), 1e-8).is_pass());
    assert!(check_quadrature(&inst, a, b, 1e-7).is_pass());
}

#[test]
fn quadrature_protocol() {
    let p = ParamSet::from_reals(Family::Tc, &[1.0, 3.0, 0.0]).unwrap();
    let inst = instantiate(IdentityId::TcElem, &p, &InstanceOptions::default()).unwrap();
    assert!(check_quadrature(&inst, 0.1, 0.6, 1e-7).is_pass());
    let same = check_quadrature(&inst, 0.3, 0.3, 1e-7);
    assert!(same.is_pass() && same.max_abs_err == 0.0);

    let b = apply_ties(IdentityId::ChBessel, &ParamSet::from_reals(Family::Ch, &[0.3, 0.2, -0.1, 0.4, 0.0]).unwrap());
    let inst =
        instantiate(IdentityId::ChBessel, &b, &InstanceOptions { domain: Some((0.1, 0.6)), ..Default::default() })
            .unwrap();
    assert!(check_quadrature(&inst, 0.1, 0.6, 1e-7).is_pass());
}

#[test]
fn formula_protocol() {
    let p = ParamSet::Bc(BcParams::new(c(0.7, 0.0), c(0.0, 0.0), c(2.7, 0.0), c(0.0, 0.0)));
    let rep = check_formula(FormulaId::DhbHyp, &p, &linspace(0.05, 1.5, 7), 1e-9);
    assert!(rep.is_pass() && rep.max_abs_err < 1e-15);
    let wrong = ParamSet::Bc(BcParams::new(ONE, ONE, ONE, ONE));
    assert!(matches!(check_formula(FormulaId::DhbHyp, &wrong, &[0.3], 1e-9).status, Status::Skipped { .. }));
}

#[test]
fn small_suite_is_deterministic() {
    let cfg = small(5);
    let a = run_suite(&cfg).unwrap();
    let b = run_suite(&cfg).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.summary.identities, 23);
    for id in IdentityId::ALL {
        let n = a.checks.iter().filter(|c| c.subject == id.tag()).count();
        assert!(n >= 2, "{id}: {n} results");
    }
    let sequential = run_suite(&SuiteConfig { parallel: false, ..cfg }).unwrap();
    assert_eq!(a.checks, sequential.checks);
}

#[test]
fn impossible_tolerance_fails_cleanly() {
    let mut cfg = small(6);
    cfg.tolerances.deriv = 1e-30;
    let rep = run_suite(&cfg).unwrap();
    assert!(rep.failed().any(|c| c.protocol == Protocol::Derivative));
    assert!(rep.summary.fail > 0);
}

#[test]
fn report_json_shape() {
    let rep = run_suite(&small(7)).unwrap();
    let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
    let first = &v["checks"][0];
    assert!(first["params"].as_array().unwrap().iter().all(|p| p.as_array().unwrap().len() == 2));
    assert!(first["status"]["kind"].is_string());
    let cfg: SuiteConfig = serde_json::from_value(v["config"].clone()).unwrap();
    assert_eq!(cfg, small(7));
    assert!(serde_json::from_str::<SuiteConfig>(r#"{"bogus": 1}"#).is_err());
    assert!(SuiteConfig { grid_points: 1, ..SuiteConfig::default() }.validate().is_err());
}
