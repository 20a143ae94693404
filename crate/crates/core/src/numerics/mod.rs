//! Numerical building blocks shared by every other module.

mod cx;
mod diff;
mod jet;
mod quad;

pub use cx::{c, fmt_cx, is_finite, ln, parse_cx, powc, sqrt, Branch, Cx, I, ONE, ZERO};
pub use diff::derivative_fd;
pub use jet::{jet_arith, jet_elem, ArithKind, ElemKind, Jet};
pub use quad::{integrate_adaptive, integrate_adaptive_with, QuadConfig, QuadResult};
