//! Indefinite-integral identities for the four confluent Heun families.
//!
//! Each entry supplies a validity predicate, an integrand `I(x)` and an
//! antiderivative `F(x)` (constant of integration 0). Every identity is an
//! instance of `∫ f (h'' + p h' + q h) y dx = f W(y, h)`, of its constant-`h`
//! reduction, or of the conjugate-equation form, which [`lagrangian_pair`] and
//! [`conjugate_pair`] implement for arbitrary `h`.

mod formulas;
mod generic;
mod instance;
mod validity;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{HeunError, Result};
use crate::heun::Family;
use crate::numerics::{c, Cx};

pub use generic::{conjugate_pair, is_legal_conjugate, lagrangian_pair};
pub use instance::{instantiate, ArbitrarySeeds, IdentityInstance, InstanceOptions, SeedMode};
pub(crate) use validity::exclusion_distance;
pub use validity::{apply_ties, validity, DeltaCase, ValidityReport, Violation};

macro_rules! identity_ids {
    ($($variant:ident => $tag:literal, $family:ident;)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum IdentityId {
            $(#[serde(rename = $tag)] $variant,)*
        }

        impl IdentityId {
            pub const ALL: [IdentityId; 23] = [$(IdentityId::$variant,)*];

            pub fn tag(self) -> &'static str {
                match self { $(IdentityId::$variant => $tag,)* }
            }

            pub fn family(self) -> Family {
                match self { $(IdentityId::$variant => Family::$family,)* }
            }
        }
    };
}

identity_ids! {
    ChElem => "CH_ELEM", Ch;
    ChZero => "CH_ZERO", Ch;
    ChZeroDer1 => "CH_ZERO_DER1", Ch;
    ChStanjel => "CH_STANJEL", Ch;
    ChHyp => "CH_HYP", Ch;
    ChH3 => "CH_H3", Ch;
    ChBessel => "CH_BESSEL", Ch;
    ChConj => "CH_CONJ", Ch;
    BcElem => "BC_ELEM", Bc;
    BcZero => "BC_ZERO", Bc;
    BcZeroSpc => "BC_ZERO_SPC", Bc;
    BcErfi => "BC_ERFI", Bc;
    BcH3 => "BC_H3", Bc;
    BcConj => "BC_CONJ", Bc;
    DcElem => "DC_ELEM", Dc;
    DcZero => "DC_ZERO", Dc;
    DcLog => "DC_LOG", Dc;
    DcH3 => "DC_H3", Dc;
    DcConj => "DC_CONJ", Dc;
    TcElem => "TC_ELEM", Tc;
    TcGamma => "TC_GAMMA", Tc;
    TcH3 => "TC_H3", Tc;
    TcConj => "TC_CONJ", Tc;
}

impl IdentityId {
    /// Entries whose solution normalisation at the origin is resonant by construction.
    pub fn always_resonant(self) -> bool {
        matches!(self, IdentityId::ChStanjel | IdentityId::BcErfi)
    }

    pub fn is_conjugate(self) -> bool {
        matches!(self, IdentityId::ChConj | IdentityId::BcConj | IdentityId::DcConj | IdentityId::TcConj)
    }

    pub fn is_elementary(self) -> bool {
        matches!(self, IdentityId::ChElem | IdentityId::BcElem | IdentityId::DcElem | IdentityId::TcElem)
    }

    pub fn is_h3(self) -> bool {
        matches!(self, IdentityId::ChH3 | IdentityId::BcH3 | IdentityId::TcH3)
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for IdentityId {
    type Err = HeunError;
    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.tag().eq_ignore_ascii_case(s))
            .ok_or_else(|| HeunError::Parse(format!("unknown identity '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Trig {
    Sin,
    Cos,
}

/// `h(x) = x^m e^{ρ x^ℓ} trig(k x)` for the elementary entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HChoice {
    pub m: u32,
    pub ell: u32,
    pub rho: Cx,
    pub k: Cx,
    pub trig: Trig,
}

impl Default for HChoice {
    fn default() -> Self {
        HChoice { m: 1, ell: 1, rho: c(0.25, 0.0), k: c(1.0, 0.0), trig: Trig::Sin }
    }
}

/// One row of the catalog table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogEntry {
    pub id: IdentityId,
    pub family: Family,
    /// Phrase locating the identity in its source text.
    pub anchor: &'static str,
    pub constraints: Vec<&'static str>,
}

pub fn list_identities() -> Vec<CatalogEntry> {
    IdentityId::ALL
        .into_iter()
        .map(|id| CatalogEntry { id, family: id.family(), anchor: anchor(id), constraints: constraint_summary(id) })
        .collect()
}

fn anchor(id: IdentityId) -> &'static str {
    use IdentityId::*;
    match id {
        ChElem => "if we choose h according to",
        ChZero => "we obtain immediately the following result",
        ChZeroDer1 => "For instance, in the case corresponding to",
        ChStanjel => "Another possible choice is",
        ChHyp => "together with 15.2.1 in",
        ChH3 => "Let Δ=AC−B²",
        ChBessel => "in terms of Bessel functions",
        ChConj => "involving products of Heun functions",
        BcElem => "we find by means of",
        BcZero => "we obtain immediately the following result",
        BcZeroSpc => "provided that α≠1",
        BcErfi => "is the imaginary error function",
        BcH3 => "leads to the following indefinite integral",
        BcConj => "yields the following indefinite integral involving",
        DcElem => "we get by means of",
        DcZero => "we obtain immediately the following result",
        DcLog => "Moreover, if we choose the function",
        DcH3 => "In the special case",
        DcConj => "where W denotes the Wronskian",
        TcElem => "we find by means of",
        TcGamma => "the upper incomplete Gamma function",
        TcH3 => "it is also possible to take",
        TcConj => "under the transformation",
    }
}

fn constraint_summary(id: IdentityId) -> Vec<&'static str> {
    use IdentityId::*;
    match id {
        ChElem | BcElem => vec!["h = x^m e^{ρx^ℓ}·{sin, cos}(kx), m, ℓ ≥ 0"],
        DcElem | TcElem => vec!["h = x^m e^{ρx^ℓ}·{sin, cos}(kx), m, ℓ ≥ 0", "domain excludes 0 when m < 2"],
        ChZero | BcZero | DcZero | BcConj => vec![],
        ChZeroDer1 => vec!["δ = −(β+γ+2)α/2", "β ≠ −1", "N ≠ 0"],
        ChStanjel => vec!["α = 0", "β = −1", "γ = 0", "η = 1/2", "δ ≠ 0", "resonant: arbitrary seeds only"],
        ChHyp => vec!["α = 0", "β ∉ {1, 2, 3, …}"],
        ChH3 => vec!["α ≠ 0", "case by sign of Δ = AC − B²", "Δ = 0: x₀ = −B/C outside the domain"],
        ChBessel => vec!["η = η₀ = (1+β)α/2 − (1+γ)β/2 − γ/2", "Ω ≠ 0"],
        ChConj => vec!["η ≠ 0"],
        BcZeroSpc => {
            vec!["γ = α + 2", "α ∉ {−1, 1} (stated α ≠ 1; the derivation divides by α + 1)", "α ≠ −2", "δ + β(α+1) ≠ 0"]
        }
        BcErfi => vec!["α = −1", "resonant: arbitrary seeds only"],
        BcH3 => vec!["case by sign of Δ = −2(α+1) − β²/4", "Δ = 0 requires β ∈ ℝ∖[−4,0]"],
        DcLog => vec!["α = 0"],
        DcH3 => vec!["α = 0", "domain excludes 0"],
        DcConj => vec!["γ ≠ 0"],
        TcGamma => vec!["γ = 0", "domain excludes 0"],
        TcH3 => vec!["case by sign of γ (γ = 0 selects the third branch)", "singular points of h outside the domain"],
        TcConj => vec!["α ≠ 0"],
    }
}
