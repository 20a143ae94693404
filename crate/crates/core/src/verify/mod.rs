//! Verification protocols, parameter sweeps and report serialisation.
//!
//! Three protocols check an identity instance: the jet-derivative residual
//! `|F'(x) − I(x)|`, the two-point quadrature residual `|∫I − ΔF|`, and the
//! agreement of printed closed forms with the generic construction. Derivative
//! formulas are checked separately against Taylor jets of the solution.

mod checks;
mod draws;
mod report;
mod suite;

pub use checks::{check_derivative, check_formula, check_quadrature, check_transcription, linspace};
pub use draws::{draw_formula_params, draw_instance, Draw};
pub use report::{CheckReport, Protocol, SkipReason, Status, SuiteReport, Summary};
pub use suite::{run_suite, SuiteConfig, Tolerances};
