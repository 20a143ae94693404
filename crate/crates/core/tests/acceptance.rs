//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criterion 3 includes the second degenerate derivative case with root `s = -1`,
//! which does not reproduce the derivative. It prints FAIL and is listed in
//! `KNOWN`; the process exits non-zero only for other failures, or for any
//! failure when `HEUN_ACCEPTANCE_STRICT` is set.

use std::process::ExitCode;
use std::time::Instant;

use heun_core::catalog::{instantiate, validity, IdentityId, InstanceOptions};
use heun_core::heun::{Family, ParamSet};
use heun_core::verify::{
    check_derivative, draw_instance, linspace, run_suite, CheckReport, Protocol, Status, SuiteConfig, SuiteReport,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const KNOWN: &[u32] = &[3];

struct Outcome {
    pass: bool,
    detail: String,
}

fn verdict(bad: Vec<String>, ok: impl Into<String>) -> Outcome {
    if bad.is_empty() {
        Outcome { pass: true, detail: ok.into() }
    } else {
        Outcome { pass: false, detail: bad.join("; ") }
    }
}

fn describe(c: &CheckReport) -> String {
    let mode = c.seed_mode.as_deref().map(|m| format!("/{m}")).unwrap_or_default();
    let status = match &c.status {
        Status::Pass => "pass".to_string(),
        Status::Fail => format!("fail rel={:.2e} tol={:.0e}", c.max_rel_err, c.tolerance),
        Status::Skipped { reason, .. } => format!("skipped ({reason:?})"),
        Status::Flagged { note } => format!("flagged ({note})"),
    };
    format!("{}{mode} {:?}: {status}", c.subject, c.protocol)
}

fn subjects_pass(rep: &SuiteReport, subjects: &[&str]) -> Vec<String> {
    let mut bad = Vec::new();
    for s in subjects {
        let found: Vec<_> = rep.checks.iter().filter(|c| c.subject == *s).collect();
        if found.is_empty() {
            bad.push(format!("{s}: missing"));
        }
        bad.extend(found.into_iter().filter(|c| !c.is_pass()).map(describe));
    }
    bad
}

fn identity_checks(rep: &SuiteReport, arbitrary: bool) -> Vec<String> {
    let mode = if arbitrary { "arbitrary" } else { "canonical" };
    let mut bad = Vec::new();
    for id in IdentityId::ALL {
        // Canonical normalisation does not exist for these; criterion 6 covers them.
        let mode = if id.always_resonant() { "arbitrary" } else { mode };
        for p in [Protocol::Derivative, Protocol::Quadrature] {
            match rep
                .checks
                .iter()
                .find(|c| c.subject == id.tag() && c.protocol == p && c.seed_mode.as_deref() == Some(mode))
            {
                Some(c) if c.is_pass() => {}
                Some(c) => bad.push(describe(c)),
                None => bad.push(format!("{id}/{mode} {p:?}: missing")),
            }
        }
    }
    bad
}

fn negative_controls(cfg: &SuiteConfig) -> Outcome {
    let mut bad = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for id in IdentityId::ALL {
        let draw = match draw_instance(id, id.always_resonant(), &mut rng, cfg.param_box, 1) {
            Ok(d) => d,
            Err(e) => {
                bad.push(format!("{id}: {e}"));
                continue;
            }
        };
        let (a, b) = draw.instance.domain();
        let grid = linspace(a, b, cfg.grid_points);
        let rep = check_derivative(&draw.instance.perturbed(1.01), &grid, cfg.tolerances.deriv);
        if rep.status != Status::Fail {
            bad.push(format!("{id}: perturbed antiderivative not rejected ({})", describe(&rep)));
        }
    }
    let ch = ParamSet::from_reals(Family::Ch, &[0.3, 0.2, -0.1, 0.4, 0.0]).unwrap();
    let dc = ParamSet::from_reals(Family::Dc, &[0.3, 0.2, 0.0, 0.5]).unwrap();
    for (id, p) in [(IdentityId::ChConj, ch), (IdentityId::DcConj, dc)] {
        if validity(id, &p, None).ok || instantiate(id, &p, &InstanceOptions::default()).is_ok() {
            bad.push(format!("{id}: degenerate parameters accepted"));
        }
    }
    verdict(bad, "23 perturbed antiderivatives fail; η = 0 and γ = 0 rejected")
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cfg = SuiteConfig::default();
    let first = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => {
            println!("suite did not run: {e}");
            return ExitCode::FAILURE;
        }
    };
    let second = run_suite(&cfg).expect("second run");

    let hyp_tag = "SERIES_HYPERGEOMETRIC_BC";
    let mut c3 =
        verdict(subjects_pass(&first, &["DHC_CASE1", "DHC_CASE2", "DHB_HYP", "DHB_CASE"]), "all formulas agree");
    if !c3.pass && subjects_pass(&first, &["DHC_CASE2_S1"]).is_empty() {
        c3.detail.push_str("; root s = +1 (DHC_CASE2_S1) passes");
    }
    let transcription: Vec<String> = first
        .checks
        .iter()
        .filter(|c| c.protocol == Protocol::Transcription && !c.subject.contains('/'))
        .filter(|c| !c.is_pass())
        .map(describe)
        .collect();
    let n_trans =
        first.checks.iter().filter(|c| c.protocol == Protocol::Transcription && !c.subject.contains('/')).count();
    let engine: Vec<&str> = vec![
        "SERIES_ENGINE_CH",
        "SERIES_ENGINE_BC",
        "SERIES_ENGINE_DC",
        "SERIES_ENGINE_TC",
        "SERIES_RESIDUAL_CH",
        "SERIES_RESIDUAL_BC",
        "SERIES_RESIDUAL_DC",
        "SERIES_RESIDUAL_TC",
    ];
    let (j1, j2) = (first.to_json(), second.to_json());

    let criteria: Vec<(u32, &str, Outcome)> = vec![
        (
            1,
            "initial conditions",
            verdict(subjects_pass(&first, &["SERIES_SEEDS_CH", "SERIES_SEEDS_BC"]), "c1 matches closed form"),
        ),
        (2, "hypergeometric reduction", verdict(subjects_pass(&first, &[hyp_tag]), "agrees with 1F1")),
        (3, "derivative formulas", c3),
        (4, "identity suite", verdict(identity_checks(&first, false), "23 entries, derivative and quadrature")),
        (5, "transcription", verdict(transcription, format!("{n_trans} checks match the generic forms"))),
        (6, "arbitrary seeds", verdict(identity_checks(&first, true), "23 entries with free seeds")),
        (7, "engine agreement", verdict(subjects_pass(&first, &engine), "summation and continuation agree")),
        (8, "negative controls", negative_controls(&cfg)),
        (
            9,
            "determinism",
            if j1 == j2 {
                Outcome { pass: true, detail: format!("{} byte report reproduced", j1.len()) }
            } else {
                Outcome { pass: false, detail: "reports differ between runs".into() }
            },
        ),
    ];

    let strict = std::env::var_os("HEUN_ACCEPTANCE_STRICT").is_some();
    let mut unexpected = false;
    for (n, name, o) in &criteria {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let known = !o.pass && KNOWN.contains(n);
        println!("{tag} criterion {n} ({name}): {}{}", o.detail, if known { " [known]" } else { "" });
        unexpected |= !o.pass && (strict || !known);
    }
    println!(
        "summary: {} checks, {} pass, {} fail, {} skipped, {} flagged; {:.1} s",
        first.summary.total,
        first.summary.pass,
        first.summary.fail,
        first.summary.skipped,
        first.summary.flagged,
        start.elapsed().as_secs_f64()
    );
    if unexpected {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
