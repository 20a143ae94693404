use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::catalog::exclusion_distance;
use crate::catalog::{
    apply_ties, instantiate, validity, ArbitrarySeeds, HChoice, IdentityId, IdentityInstance, InstanceOptions,
    SeedMode, Trig,
};
use crate::derivs::{case1_delta, case2_eta, FormulaId};
use crate::error::{HeunError, Result};
use crate::heun::{BcParams, ChParams, Family, ParamSet};
use crate::numerics::{c, Cx};

const MIN_DISTANCE: f64 = 0.2;
const MAX_ATTEMPTS: usize = 2000;

/// A random valid instance with the options that produced it.
#[derive(Debug, Clone)]
pub struct Draw {
    pub instance: IdentityInstance,
    pub options: InstanceOptions,
}

/// Independent, reproducible stream for one named subject.
pub(crate) fn subject_rng(seed: u64, subject: &str) -> ChaCha8Rng {
    // FNV-1a keeps the stream id stable across platforms and releases.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in subject.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(h);
    rng
}

fn uniform_cx(rng: &mut ChaCha8Rng, b: f64, real: bool) -> Cx {
    let re = rng.random_range(-b..=b);
    let im = if real { 0.0 } else { rng.random_range(-b..=b) };
    c(re, im)
}

fn random_params(rng: &mut ChaCha8Rng, family: Family, b: f64, real: bool) -> ParamSet {
    let v: Vec<Cx> = (0..family.param_count()).map(|_| uniform_cx(rng, b, real)).collect();
    ParamSet::from_values(family, &v).expect("count matches family")
}

fn random_hchoice(rng: &mut ChaCha8Rng) -> HChoice {
    HChoice {
        m: rng.random_range(0..=3),
        ell: rng.random_range(0..=3),
        rho: uniform_cx(rng, 0.5, false),
        k: uniform_cx(rng, 1.5, false),
        trig: if rng.random::<bool>() { Trig::Sin } else { Trig::Cos },
    }
}

fn random_seeds(rng: &mut ChaCha8Rng) -> ArbitrarySeeds {
    ArbitrarySeeds {
        x_anchor: None,
        y0: uniform_cx(rng, 1.0, false),
        y1: uniform_cx(rng, 1.0, false),
        ybar0: uniform_cx(rng, 1.0, false),
        ybar1: uniform_cx(rng, 1.0, false),
    }
}

/// Draws parameters uniformly from the complex box `|Re|, |Im| ≤ param_box`, applies
/// the entry's ties, rejects draws within 0.2 of an excluded set and returns the
/// first one that instantiates. Even-indexed draws of the entries with a
/// three-way case split use real parameters.
pub fn draw_instance(
    id: IdentityId,
    arbitrary: bool,
    rng: &mut ChaCha8Rng,
    param_box: f64,
    draw_index: usize,
) -> Result<Draw> {
    let real = id.is_h3() && draw_index.is_multiple_of(2);
    for _ in 0..MAX_ATTEMPTS {
        let params = apply_ties(id, &random_params(rng, id.family(), param_box, real));
        let hchoice = id.is_elementary().then(|| random_hchoice(rng));
        let seeds = random_seeds(rng);
        if !validity(id, &params, hchoice.as_ref()).ok || exclusion_distance(id, &params) < MIN_DISTANCE {
            continue;
        }
        let options = InstanceOptions {
            hchoice,
            seed_mode: if arbitrary { SeedMode::Arbitrary(seeds) } else { SeedMode::Canonical },
            ..InstanceOptions::default()
        };
        if let Ok(instance) = instantiate(id, &params, &options) {
            return Ok(Draw { instance, options });
        }
    }
    Err(HeunError::InvalidInstance(format!("{id}: no valid draw after {MAX_ATTEMPTS} attempts")))
}

fn int_distance(z: Cx, ints: impl IntoIterator<Item = i32>) -> f64 {
    ints.into_iter().map(|k| (z - k as f64).norm()).fold(f64::INFINITY, f64::min)
}

/// Draws parameters satisfying a formula's preconditions, kept 0.2 away from
/// every parameter value at which it or the functions it names degenerate.
pub fn draw_formula_params(fid: FormulaId, rng: &mut ChaCha8Rng, param_box: f64) -> ParamSet {
    loop {
        let p = match fid {
            FormulaId::DhcAt0 | FormulaId::DhcCase1 | FormulaId::DhcCase2 | FormulaId::DhcCase2S1 => {
                let ParamSet::Ch(mut p) = random_params(rng, Family::Ch, param_box, false) else { unreachable!() };
                let bad: Vec<i32> = match fid {
                    FormulaId::DhcCase1 => {
                        p.delta = case1_delta(p.alpha, p.beta, p.gamma);
                        (-8..=-1).collect()
                    }
                    FormulaId::DhcCase2 => {
                        p.eta = case2_eta(p.alpha, p.beta, p.gamma);
                        (-8..=1).collect()
                    }
                    FormulaId::DhcCase2S1 => {
                        p.eta = case2_eta(p.alpha, p.beta, p.gamma);
                        (-8..=-1).collect()
                    }
                    _ => (-8..=-1).collect(),
                };
                if int_distance(p.beta, bad) < MIN_DISTANCE {
                    continue;
                }
                ParamSet::Ch(ChParams { ..p })
            }
            FormulaId::DhbAt0 | FormulaId::DhbHyp | FormulaId::DhbCase => {
                let ParamSet::Bc(mut p) = random_params(rng, Family::Bc, param_box, false) else { unreachable!() };
                let bad: Vec<i32> = match fid {
                    FormulaId::DhbHyp => {
                        p.beta = c(0.0, 0.0);
                        p.delta = c(0.0, 0.0);
                        (-8..=-1).collect()
                    }
                    FormulaId::DhbCase => {
                        p.gamma = p.alpha + 2.0;
                        (-8..=-1).collect()
                    }
                    _ => (-8..=-1).collect(),
                };
                if int_distance(p.alpha, bad) < MIN_DISTANCE {
                    continue;
                }
                ParamSet::Bc(BcParams { ..p })
            }
        };
        return p;
    }
}
