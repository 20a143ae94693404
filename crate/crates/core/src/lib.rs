//! Confluent Heun functions as local analytic solutions, plus a catalog of
//! indefinite-integral identities built from the Lagrangian (Wronskian)
//! construction and the machinery to verify them numerically.
//!
//! The crate is organised bottom-up:
//!
//! - [`numerics`]: complex helpers, truncated Taylor series (jets), adaptive
//!   quadrature and finite differences.
//! - [`heun`]: the four confluent Heun equations, their Frobenius series at the
//!   origin, evaluation by series summation and Taylor continuation.
//! - [`special`]: desk-scale ₁F₁, ₂F₁, Bessel J/Y of orders 0 and 1, erfi and
//!   Γ(1/3, w), each with a jet lift.
//! - [`derivs`]: closed-form first-derivative formulas.
//! - [`catalog`]: the identity catalog and the generic Lagrangian constructions.
//! - [`verify`]: check protocols, parameter sweeps and report serialisation.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod catalog;
pub mod derivs;
pub mod error;
pub mod heun;
pub mod numerics;
mod par;
pub mod special;
pub mod verify;

pub use error::{HeunError, Result};
pub use numerics::{Branch, Cx, Jet};
