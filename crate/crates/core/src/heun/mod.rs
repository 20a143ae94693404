//! The four confluent Heun equations and their local solutions at the origin.

mod continuation;
mod family;
mod recurrence;
mod solution;

pub use continuation::{continue_solution, AnchoredSolution};
pub use family::{ode_from_family, BcParams, ChParams, DcParams, Family, ParamSet, Poly, PolyODE, TcParams};
pub use recurrence::{series_solution, taylor_coeffs, Terms};
pub use solution::{heun_eval, heun_jet, ode_residual, seeds_for, SeedPair, Solution, SolutionHandle};
