use heun_core::catalog::*;
use heun_core::heun::{BcParams, ChParams, Family, ParamSet, Solution, SolutionHandle};
use heun_core::numerics::{c, powc, Branch, Cx, Jet, ONE, ZERO};
use heun_core::verify::{draw_instance, linspace};
use heun_core::HeunError;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn r(v: f64) -> Cx {
    c(v, 0.0)
}

fn reals(f: Family, v: &[f64]) -> ParamSet {
    ParamSet::from_reals(f, v).unwrap()
}

fn rel(a: Cx, b: Cx) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// F' by a Richardson-extrapolated central difference of the antiderivative.
fn fd_slope(inst: &IdentityInstance, x: f64) -> Cx {
    let d = |h: f64| (inst.antiderivative(x + h).unwrap() - inst.antiderivative(x - h).unwrap()) / (2.0 * h);
    (d(1e-4) * 4.0 - d(2e-4)) / 3.0
}

#[test]
fn listing() {
    let all = list_identities();
    assert_eq!(all.len(), 23);
    let bessel = all.iter().find(|e| e.id == IdentityId::ChBessel).unwrap();
    assert!(bessel.constraints.contains(&"η = η₀ = (1+β)α/2 − (1+γ)β/2 − γ/2"));
    let dc = all.iter().find(|e| e.id == IdentityId::DcConj).unwrap();
    assert!(dc.constraints.contains(&"γ ≠ 0"));
    assert!(all.iter().all(|e| e.family == e.id.family() && !e.anchor.is_empty()));
    for id in IdentityId::ALL {
        assert_eq!(id.tag().to_lowercase().parse::<IdentityId>().unwrap(), id);
    }
}

#[test]
fn validity_examples() {
    let v = validity(IdentityId::ChConj, &reals(Family::Ch, &[0.3, 0.2, -0.1, 0.4, 0.0]), None);
    assert!(!v.ok);
    assert!(v.violations.iter().any(|x| x.constraint == "η ≠ 0"));

    let v = validity(IdentityId::TcH3, &reals(Family::Tc, &[0.5, 0.2, 0.0]), None);
    assert!(v.ok);
    assert_eq!(v.delta_case, Some(DeltaCase::Zero));

    let st = apply_ties(IdentityId::ChStanjel, &reals(Family::Ch, &[1.0, 1.0, 1.0, 0.4, 1.0]));
    let v = validity(IdentityId::ChStanjel, &st, None);
    assert!(v.ok && v.resonant);

    let v = validity(IdentityId::DcConj, &reals(Family::Dc, &[0.3, 0.2, 0.0, 0.5]), None);
    assert!(!v.ok);

    let spc = reals(Family::Bc, &[-1.0, 0.3, 1.0, 0.2]);
    assert!(!validity(IdentityId::BcZeroSpc, &spc, None).ok);
}

#[test]
fn instantiate_examples() {
    let toy = reals(Family::Ch, &[0.0, 0.0, 0.0, 0.0, 1.0]);
    let inst = instantiate(IdentityId::ChZero, &toy, &InstanceOptions::default()).unwrap();
    assert_eq!(inst.domain(), (0.05, 0.85));
    assert!((inst.integrand(1e-9).unwrap() - 2.0).norm() < 1e-6);
    assert!(inst.antiderivative(1e-12).unwrap().norm() < 1e-10);

    let dc = reals(Family::Dc, &[0.3, 0.2, 0.1, 0.5]);
    let opts = InstanceOptions { hchoice: Some(HChoice { m: 0, ..HChoice::default() }), ..Default::default() };
    let inst = instantiate(IdentityId::DcElem, &dc, &opts).unwrap();
    let (a, b) = inst.domain();
    assert!(a >= 0.05 || b <= -0.05, "domain {a}..{b} touches 0");

    let st = apply_ties(IdentityId::ChStanjel, &reals(Family::Ch, &[0.0, 0.0, 0.0, 0.4, 0.0]));
    assert!(matches!(
        instantiate(IdentityId::ChStanjel, &st, &InstanceOptions::default()),
        Err(HeunError::InvalidInstance(_))
    ));
    let seeds = ArbitrarySeeds { x_anchor: Some(0.5), y0: ONE, y1: r(0.3), ybar0: ONE, ybar1: ZERO };
    let opts = InstanceOptions { seed_mode: SeedMode::Arbitrary(seeds), ..Default::default() };
    let inst = instantiate(IdentityId::ChStanjel, &st, &opts).unwrap();
    assert!((inst.integrand(0.5).unwrap() - 1.0).norm() < 1e-14);

    let bad = reals(Family::Ch, &[0.3, 0.2, -0.1, 0.4, 0.0]);
    assert!(matches!(
        instantiate(IdentityId::ChConj, &bad, &InstanceOptions::default()),
        Err(HeunError::Constraint { .. })
    ));
}

#[test]
fn triconfluent_elementary_limit_at_origin() {
    let h = HChoice { m: 1, ell: 1, rho: ZERO, k: ONE, trig: Trig::Sin };
    let opts = InstanceOptions { hchoice: Some(h), ..Default::default() };
    let inst = instantiate(IdentityId::TcElem, &reals(Family::Tc, &[1.0, 3.0, 0.0]), &opts).unwrap();
    // h = x sin x has h(0) = h'(0) = 0 and h''(0) = 2, so I(0⁺) = f(0) h''(0) y(0) = 2.
    assert!((inst.integrand(1e-7).unwrap() - 2.0).norm() < 1e-6);
    let (gi, _) = inst.generic_pair(1e-7).unwrap();
    assert!((inst.integrand(1e-7).unwrap() - gi).norm() < 1e-12);
}

#[test]
fn special_case_antiderivative() {
    let p = BcParams::new(r(0.5), ONE, r(2.5), r(0.2));
    let inst = instantiate(IdentityId::BcZeroSpc, &ParamSet::Bc(p), &InstanceOptions::default()).unwrap();
    let x = 0.4f64;
    let aux = Solution::new(ParamSet::Bc(BcParams::new(r(1.5), ONE, r(-0.5), r(1.2)))).unwrap();
    let want = x.powf(1.5) / 1.5 * (-x * x - x).exp() * aux.eval(r(x)).unwrap().0;
    // The entry is normalised by −2/A₂ relative to the generic construction.
    let got = inst.antiderivative(x).unwrap();
    let ratio = got / want;
    assert!((ratio.im).abs() < 1e-13 && ratio.re.is_finite() && ratio.re != 0.0);
    let x2 = 1.3f64;
    let want2 = x2.powf(1.5) / 1.5 * (-x2 * x2 - x2).exp() * aux.eval(r(x2)).unwrap().0;
    assert!(rel(inst.antiderivative(x2).unwrap() / want2, ratio) < 1e-12);
}

#[test]
fn conjugate_product_antiderivative() {
    let p = ChParams::new(r(0.3), r(0.2), r(-0.1), r(0.4), r(0.7));
    let inst = instantiate(IdentityId::ChConj, &ParamSet::Ch(p), &InstanceOptions::default()).unwrap();
    let plus = Solution::new(ParamSet::Ch(p)).unwrap();
    let minus = Solution::new(ParamSet::Ch(ChParams { eta: r(-0.7), ..p })).unwrap();
    let x = r(0.3);
    let (hp, dhp) = (plus.jet(x, 1).unwrap().value(), plus.jet(x, 1).unwrap().derivative(1));
    let (hm, dhm) = (minus.jet(x, 1).unwrap().value(), minus.jet(x, 1).unwrap().derivative(1));
    let pre = powc(x, r(1.2), Branch::Upper) / 1.4 * powc(x - 1.0, r(0.9), Branch::Upper) * (x * 0.3).exp();
    let want = pre * (dhm * hp - hm * dhp);
    assert!(rel(inst.antiderivative(0.3).unwrap(), want) < 1e-12, "{} vs {want}", inst.antiderivative(0.3).unwrap());
}

#[test]
fn every_entry_differentiates_to_its_integrand() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for id in IdentityId::ALL {
        for arbitrary in [false, true] {
            if !arbitrary && id.always_resonant() {
                continue;
            }
            let draw = draw_instance(id, arbitrary, &mut rng, 2.0, 1).unwrap();
            let inst = draw.instance;
            let (a, b) = inst.domain();
            let mut scale = 1.0f64;
            let mut worst = 0.0f64;
            for x in linspace(a + 0.01, b - 0.01, 5) {
                let i = inst.integrand(x).unwrap();
                scale = scale.max(i.norm());
                worst = worst.max((fd_slope(&inst, x) - i).norm());
            }
            assert!(worst / scale < 1e-6, "{id} arbitrary={arbitrary}: {:.2e}", worst / scale);
        }
    }
}

#[test]
fn explicit_entries_match_generic_construction() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for id in IdentityId::ALL {
        if id.always_resonant() {
            continue;
        }
        let inst = draw_instance(id, false, &mut rng, 2.0, 0).unwrap().instance;
        let (a, b) = inst.domain();
        for x in linspace(a, b, 5) {
            let (i, f) = (inst.integrand(x).unwrap(), inst.antiderivative(x).unwrap());
            let (gi, gf) = inst.generic_pair(x).unwrap();
            let scale = gi.norm().max(gf.norm()).max(1.0);
            assert!((i - gi).norm() / scale < 1e-11, "{id} integrand at {x}");
            assert!((f - gf).norm() / scale < 1e-11, "{id} antiderivative at {x}");
        }
    }
}

#[test]
fn discriminant_zero_instances() {
    let ch = reals(Family::Ch, &[0.5, -1.5, 1.0, 0.3, 0.2]);
    let v = validity(IdentityId::ChH3, &ch, None);
    assert_eq!(v.delta_case, Some(DeltaCase::Zero));
    let inst = instantiate(IdentityId::ChH3, &ch, &InstanceOptions::default()).unwrap();
    let x = (inst.domain().0 + inst.domain().1) / 2.0;
    assert!(rel(fd_slope(&inst, x), inst.integrand(x).unwrap()) < 1e-7);

    let bc = reals(Family::Bc, &[-1.125, 1.0, 0.3, 0.2]);
    let v = validity(IdentityId::BcH3, &bc, None);
    assert_eq!(v.delta_case, Some(DeltaCase::Zero));
}

#[test]
fn stated_coefficients_disagree_for_one_entry() {
    let dc = reals(Family::Dc, &[0.3, 0.2, 0.1, 0.5]);
    let h = HChoice { m: 2, ell: 1, rho: r(0.3), k: r(0.7), trig: Trig::Cos };
    let derived = InstanceOptions { hchoice: Some(h), ..Default::default() };
    let stated = InstanceOptions { as_printed: true, ..derived.clone() };
    let good = instantiate(IdentityId::DcElem, &dc, &derived).unwrap();
    let printed = instantiate(IdentityId::DcElem, &dc, &stated).unwrap();
    let x = 0.4;
    assert!(rel(fd_slope(&good, x), good.integrand(x).unwrap()) < 1e-7);
    assert!(rel(fd_slope(&printed, x), printed.integrand(x).unwrap()) > 1e-4);
}

#[test]
fn branch_choice_leaves_residual_unchanged() {
    let p = ParamSet::Ch(ChParams::new(c(0.3, 0.4), c(0.2, -0.3), c(-0.1, 0.5), r(0.4), c(0.7, 0.2)));
    let up = instantiate(IdentityId::ChZero, &p, &InstanceOptions::default()).unwrap();
    let down = up.with_branch(Branch::Lower);
    let x = 0.5;
    let (iu, id) = (up.integrand(x).unwrap(), down.integrand(x).unwrap());
    assert!((iu - id).norm() > 1e-6);
    assert!(rel(fd_slope(&up, x), iu) < 1e-7);
    assert!(rel(fd_slope(&down, x), id) < 1e-7);
}

#[test]
fn generic_constructions() {
    let p = reals(Family::Ch, &[0.3, 0.2, -0.1, 0.4, 0.7]);
    let y = SolutionHandle::canonical(p).unwrap();
    let x = r(0.4);
    // h = y: the Wronskian vanishes.
    let y2 = y.clone();
    let (_, f) = lagrangian_pair(&p, &y, |xj: &Jet| y2.jet(xj.basepoint(), 2), x, Branch::Upper).unwrap();
    assert!(f.norm() < 1e-14);
    // Constant h: I = f q y, F = −f y'.
    let (i, f) = lagrangian_pair(&p, &y, |xj: &Jet| Ok(xj.constant_like(ONE)), x, Branch::Upper).unwrap();
    let (yv, dy) = y.eval(x).unwrap();
    let fx = p.f_jet(&Jet::variable(x, 0), Branch::Upper).unwrap().value();
    let (_, q) = p.pq_jet(&Jet::variable(x, 0)).unwrap();
    assert!(rel(i, fx * q.value() * yv) < 1e-14);
    assert!(rel(f, -fx * dy) < 1e-14);

    // Equal parameters: I vanishes and F is constant.
    let (i, f1) = conjugate_pair(&p, &p, &y, &y, x, Branch::Upper).unwrap();
    let (_, f2) = conjugate_pair(&p, &p, &y, &y, r(0.6), Branch::Upper).unwrap();
    assert_eq!(i, ZERO);
    assert!((f1 - f2).norm() < 1e-12);

    let other = reals(Family::Ch, &[0.3, 0.25, -0.1, 0.4, 0.7]);
    let h = SolutionHandle::canonical(other).unwrap();
    assert!(!is_legal_conjugate(&p, &other));
    assert!(matches!(conjugate_pair(&p, &other, &y, &h, x, Branch::Upper), Err(HeunError::Constraint { .. })));

    let tc = reals(Family::Tc, &[0.0, 0.4, -0.3]);
    let t = SolutionHandle::canonical(tc).unwrap();
    let (i, _) = conjugate_pair(&tc, &tc, &t, &t, r(0.7), Branch::Upper).unwrap();
    assert_eq!(i, ZERO);
}
