//! Smooth functions of one real variable as immutable expression trees.
//!
//! The fragment is closed under differentiation and carries enough
//! structure (flat zones, certified gluings) to decide exact vanishing on
//! intervals for the expressions built by the jump constructions.

mod expr;
mod interval;
pub mod jet;
mod serial;
mod zero;

pub use expr::{Gluing, Node, Side, SmoothExpr};
pub use interval::Interval;
pub use serial::ExprRepr;
pub use zero::{enclose, flat_value_on, flat_zones, is_zero_on, FlatZone, ZeroDecision};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SmoothError {
    #[error("affine reparametrization needs a nonzero slope")]
    ZeroSlope,
    #[error("non-finite value in {what}")]
    NonFinite { what: &'static str },
    #[error("empty interval [{lo}, {hi}]")]
    EmptyInterval { lo: f64, hi: f64 },
    #[error("breakpoint {breakpoint} is not inside the deadzone ({lo}, {hi})")]
    BreakpointOutsideDeadzone { breakpoint: f64, lo: f64, hi: f64 },
    #[error("{side} piece is not provably zero on the deadzone ({lo}, {hi})")]
    GluingNotCertified { side: Side, lo: f64, hi: f64 },
}

/// `eval(e, x)`; see [`SmoothExpr::eval`].
pub fn eval(e: &SmoothExpr, x: f64) -> f64 {
    e.eval(x)
}

pub fn diff(e: &SmoothExpr) -> SmoothExpr {
    e.diff()
}

/// The smooth step `s`: 0 on `(-inf, 0]`, 1 on `[1, inf)`, strictly
/// increasing in between.
pub fn make_smooth_step() -> SmoothExpr {
    SmoothExpr::step(0)
}

/// The cutoff `ρ(x) = s(2(|x| - 1/2))`: 0 on `[-1/2, 1/2]`, 1 for `|x| >= 1`.
///
/// Built as a gluing at 0 of `s(-2x - 1)` and `s(2x - 1)`; the left piece is
/// the right piece reflected, so `ρ(-x) == ρ(x)` holds bit for bit.
pub fn make_rho() -> SmoothExpr {
    let step = make_smooth_step();
    let right = step.affine(2.0, -1.0).expect("nonzero slope");
    let left = step.affine(-2.0, -1.0).expect("nonzero slope");
    SmoothExpr::glued(0.0, left, right, (-0.5, 0.5)).expect("both halves vanish on [-1/2, 1/2]")
}

/// `x -> e(slope * x + offset)`.
pub fn affine_precompose(e: &SmoothExpr, slope: f64, offset: f64) -> Result<SmoothExpr, SmoothError> {
    e.affine(slope, offset)
}
