use super::formulas::{self, Local, Shape};
use super::generic::{conjugate_pair, lagrangian_pair};
use super::validity::{validity, DeltaCase, ValidityReport};
use super::{HChoice, IdentityId};
use crate::error::{HeunError, Result};
use crate::heun::{AnchoredSolution, Family, ParamSet, SolutionHandle};
use crate::numerics::{c, Branch, Cx, Jet, ONE};
use crate::special::BesselKind;

const MARGIN: f64 = 0.05;
const MIN_LENGTH: f64 = 0.2;
const NEAR_REAL: f64 = 0.05;
const CUT_SAMPLES: usize = 400;
const CHECKPOINT_SPACING: f64 = 0.1;

/// Initial data for solutions fixed at an interior anchor instead of at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArbitrarySeeds {
    /// Anchor point; the middle of the chosen domain when absent.
    pub x_anchor: Option<f64>,
    pub y0: Cx,
    pub y1: Cx,
    /// Seeds of the companion solution of the conjugate entries.
    pub ybar0: Cx,
    pub ybar1: Cx,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum SeedMode {
    #[default]
    Canonical,
    Arbitrary(ArbitrarySeeds),
}

impl SeedMode {
    pub fn is_arbitrary(&self) -> bool {
        matches!(self, SeedMode::Arbitrary(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            SeedMode::Canonical => "canonical",
            SeedMode::Arbitrary(_) => "arbitrary",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceOptions {
    /// Required shape of `h` for the elementary entries; a default is used when absent.
    pub hchoice: Option<HChoice>,
    pub bessel: BesselKind,
    /// Use the coefficient list exactly as stated (differs from the derived one in one entry).
    pub as_printed: bool,
    pub seed_mode: SeedMode,
    /// Overrides the automatically chosen real interval.
    pub domain: Option<(f64, f64)>,
    pub branch: Branch,
}

impl Default for InstanceOptions {
    fn default() -> Self {
        InstanceOptions {
            hchoice: None,
            bessel: BesselKind::J,
            as_printed: false,
            seed_mode: SeedMode::Canonical,
            domain: None,
            branch: Branch::Upper,
        }
    }
}

/// A catalog entry bound to concrete parameters, solutions and a real interval.
#[derive(Debug, Clone)]
pub struct IdentityInstance {
    shape: Shape,
    domain: (f64, f64),
    seed_mode: SeedMode,
    y: SolutionHandle,
    bar: Option<SolutionHandle>,
    aux: Option<SolutionHandle>,
    factor: Cx,
    validity: ValidityReport,
}

fn default_domain(family: Family) -> (f64, f64) {
    match family {
        Family::Ch => (0.05, 0.85),
        Family::Bc => (0.1, 2.0),
        Family::Dc => (-0.8, 0.8),
        Family::Tc => (-1.5, 1.5),
    }
}

fn exclusions(shape: &Shape, lo: f64, hi: f64) -> Vec<f64> {
    let mut out: Vec<f64> = formulas::singular_points(shape)
        .into_iter()
        .filter(|z| z.im.abs() < NEAR_REAL && z.re.is_finite())
        .map(|z| z.re)
        .collect();
    let step = (hi - lo) / CUT_SAMPLES as f64;
    let mut prev: Option<(f64, Vec<Cx>)> = None;
    for i in 0..=CUT_SAMPLES {
        let x = lo + step * i as f64;
        let bases = formulas::branch_bases(shape, x);
        if let Some((px, pb)) = &prev {
            for (a, b) in pb.iter().zip(&bases) {
                // The upper-branch convention puts the cut's image on the side with Im ≥ 0.
                let crosses = (a.im < 0.0) != (b.im < 0.0);
                let t = if crosses { a.im / (a.im - b.im) } else { 0.0 };
                if crosses && (a.re + t * (b.re - a.re)) < 0.0 {
                    out.push(px + t * (x - px));
                }
            }
        }
        prev = Some((x, bases));
    }
    out.retain(|e| *e > lo - MARGIN && *e < hi + MARGIN);
    out.sort_by(f64::total_cmp);
    out
}

fn choose_domain(lo: f64, hi: f64, excl: &[f64]) -> Option<(f64, f64)> {
    let mut best: Option<(f64, f64)> = None;
    let mut start = lo;
    let mut consider = |a: f64, b: f64| {
        if b - a >= MIN_LENGTH && best.is_none_or(|(ba, bb)| b - a >= bb - ba - 1e-12) {
            best = Some((a, b));
        }
    };
    for &e in excl {
        consider(start, (e - MARGIN).min(hi));
        start = start.max(e + MARGIN);
    }
    consider(start, hi);
    best
}

/// Binds an entry to parameters and options, selecting a real interval free of
/// singular points and branch-cut crossings.
pub fn instantiate(id: IdentityId, params: &ParamSet, opts: &InstanceOptions) -> Result<IdentityInstance> {
    let report = validity(id, params, opts.hchoice.as_ref());
    if let Some(v) = report.violations.first() {
        return Err(HeunError::constraint(v.constraint.clone(), v.detail.clone()));
    }
    if report.resonant && !opts.seed_mode.is_arbitrary() {
        return Err(HeunError::InvalidInstance(format!(
            "{id}: canonical normalisation is resonant for {params}; use arbitrary seeds"
        )));
    }
    let shape = Shape {
        id,
        params: *params,
        h: opts.hchoice.unwrap_or_default(),
        bessel: opts.bessel,
        as_printed: opts.as_printed,
        branch: opts.branch,
        case: report.delta_case,
    };

    let domain = match opts.domain {
        Some((lo, hi)) => {
            if !(lo < hi) {
                return Err(HeunError::InvalidInstance(format!("empty domain [{lo}, {hi}]")));
            }
            let bad: Vec<f64> = exclusions(&shape, lo, hi).into_iter().filter(|e| *e >= lo && *e <= hi).collect();
            if let Some(e) = bad.first() {
                return Err(HeunError::InvalidInstance(format!("domain [{lo}, {hi}] contains excluded point {e:.6}")));
            }
            (lo, hi)
        }
        None => {
            let (lo, hi) = default_domain(id.family());
            let excl = exclusions(&shape, lo, hi);
            choose_domain(lo, hi, &excl).ok_or_else(|| {
                HeunError::InvalidInstance(format!(
                    "{id}: no admissible interval of length {MIN_LENGTH} in [{lo}, {hi}]"
                ))
            })?
        }
    };

    let bar_params = formulas::conjugate_params(id, params);
    let (y, bar, aux) = match opts.seed_mode {
        SeedMode::Canonical => {
            let y = SolutionHandle::canonical(*params)?;
            let bar = bar_params.map(SolutionHandle::canonical).transpose()?;
            let aux = formulas::aux_params(id, params).map(SolutionHandle::canonical).transpose()?;
            (y, bar, aux)
        }
        SeedMode::Arbitrary(s) => {
            let anchor = s.x_anchor.unwrap_or(0.5 * (domain.0 + domain.1));
            if anchor < domain.0 || anchor > domain.1 {
                return Err(HeunError::InvalidInstance(format!(
                    "anchor {anchor} outside domain [{}, {}]",
                    domain.0, domain.1
                )));
            }
            let anchored = |p: ParamSet, y0: Cx, y1: Cx| -> Result<SolutionHandle> {
                let sol = AnchoredSolution::new(p, anchor, y0, y1)?.with_checkpoints(
                    domain.0,
                    domain.1,
                    CHECKPOINT_SPACING,
                )?;
                Ok(SolutionHandle::Anchored(sol))
            };
            let y = anchored(*params, s.y0, s.y1)?;
            let bar = bar_params.map(|pb| anchored(pb, s.ybar0, s.ybar1)).transpose()?;
            (y, bar, None)
        }
    };

    Ok(IdentityInstance { shape, domain, seed_mode: opts.seed_mode, y, bar, aux, factor: ONE, validity: report })
}

impl IdentityInstance {
    pub fn id(&self) -> IdentityId {
        self.shape.id
    }

    pub fn params(&self) -> &ParamSet {
        &self.shape.params
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn seed_mode(&self) -> SeedMode {
        self.seed_mode
    }

    pub fn branch(&self) -> Branch {
        self.shape.branch
    }

    pub fn delta_case(&self) -> Option<DeltaCase> {
        self.shape.case
    }

    pub fn validity(&self) -> &ValidityReport {
        &self.validity
    }

    pub fn solution(&self) -> &SolutionHandle {
        &self.y
    }

    pub fn conjugate_solution(&self) -> Option<&SolutionHandle> {
        self.bar.as_ref()
    }

    /// A copy whose antiderivative is multiplied by `factor` (a deliberately broken identity).
    pub fn perturbed(&self, factor: f64) -> Self {
        IdentityInstance { factor: self.factor * factor, ..self.clone() }
    }

    /// The same instance evaluated with the other convention for the sign of zero on cuts.
    pub fn with_branch(&self, branch: Branch) -> Self {
        let mut out = self.clone();
        out.shape.branch = branch;
        out
    }

    fn local(&self, x: Cx, order: usize) -> Result<Local> {
        let split = |h: &SolutionHandle| -> Result<(Jet, Jet)> {
            let j = h.jet(x, order + 1)?;
            Ok((j.truncate(order), j.differentiate()))
        };
        let (y, dy) = split(&self.y)?;
        let bar = self.bar.as_ref().map(split).transpose()?;
        let aux = self.aux.as_ref().map(|h| h.jet(x, order)).transpose()?;
        Ok(Local { x: Jet::variable(x, order), y, dy, bar, aux, arbitrary: self.seed_mode.is_arbitrary() })
    }

    /// Taylor jets of the integrand and antiderivative at `x`.
    pub fn pair_jet(&self, x: Cx, order: usize) -> Result<(Jet, Jet)> {
        let l = self.local(x, order)?;
        let (i, f) = formulas::printed(&self.shape, &l)?;
        Ok((i, f.scale(self.factor)))
    }

    pub fn integrand(&self, x: f64) -> Result<Cx> {
        Ok(self.pair_jet(c(x, 0.0), 0)?.0.value())
    }

    pub fn antiderivative(&self, x: f64) -> Result<Cx> {
        Ok(self.pair_jet(c(x, 0.0), 0)?.1.value())
    }

    pub fn antiderivative_jet(&self, x: f64, order: usize) -> Result<Jet> {
        Ok(self.pair_jet(c(x, 0.0), order)?.1)
    }

    /// The pair rebuilt from the generic construction with this entry's `h`.
    pub fn generic_pair(&self, x: f64) -> Result<(Cx, Cx)> {
        let xc = c(x, 0.0);
        let params = &self.shape.params;
        if let Some(k) = formulas::conjugate_scale(&self.shape) {
            let bar = self.bar.as_ref().ok_or_else(|| HeunError::InvalidInstance("missing conjugate".into()))?;
            let (i, f) = conjugate_pair(params, bar.params(), &self.y, bar, xc, self.shape.branch)?;
            return Ok((i / k, f / k));
        }
        let shape = &self.shape;
        let h = |xj: &Jet| -> Result<Jet> {
            formulas::h_explicit(shape, xj)?.ok_or_else(|| HeunError::InvalidInstance("no explicit h".into()))
        };
        lagrangian_pair(params, &self.y, h, xc, self.shape.branch)
    }
}
