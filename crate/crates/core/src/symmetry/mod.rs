//! Symmetry actions: projectable Lie actions on `ℝ × ℝ` and the jump
//! actions on sequences, which descend to the quotient algebra.

mod descriptor;
pub mod jump;
pub mod multi;
mod projectable;

pub use descriptor::{compose_descriptors, ActionDescriptor};
pub use jump::JumpAction;
pub use multi::MultiJumpAction;
pub use projectable::{vertical_shift, ProjectableAction};

use crate::ndalgebra::{GeneralizedFunction, RepSequence};
use crate::smoothfn::SmoothExpr;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ActionError {
    #[error("action parameters must be finite")]
    NonFinite,
    #[error("jump location {0} appears twice")]
    DuplicateLocation(f64),
    #[error("cannot compose one-point jumps at {left} and {right}; lift both to a multi-jump action")]
    LocationMismatch { left: f64, right: f64 },
    #[error("g1 is not strictly monotone near x = {x}")]
    NotMonotone { x: f64 },
    #[error("g1_forward(g1_inverse(x)) misses x = {x} by {error}")]
    NotInverse { x: f64, error: f64 },
    #[error("u-coefficient of g2 must be positive, fails at x = {x}")]
    NonPositiveScale { x: f64 },
}

pub fn apply_projectable(act: &ProjectableAction, u: &SmoothExpr) -> SmoothExpr {
    act.apply(u)
}

pub fn apply_jump(act: &JumpAction, s: &RepSequence) -> RepSequence {
    act.apply(s)
}

pub fn apply_jump_gf(act: &JumpAction, w: &GeneralizedFunction) -> GeneralizedFunction {
    act.apply_gf(w)
}

pub fn compose_jump(first: &JumpAction, second: &JumpAction) -> Result<JumpAction, ActionError> {
    first.compose(second)
}

pub fn apply_multi(act: &MultiJumpAction, s: &RepSequence) -> RepSequence {
    act.apply(s)
}

pub fn compose_multi(first: &MultiJumpAction, second: &MultiJumpAction) -> MultiJumpAction {
    first.compose(second)
}
