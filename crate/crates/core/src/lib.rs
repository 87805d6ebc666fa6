//! Desk-scale nowhere-dense algebra of generalized functions on ℝ.
//!
//! * [`smoothfn`]: exact symbolic smooth functions, the cutoff ρ and certified gluings.
//! * [`ndalgebra`]: representative sequences, the quotient algebra, and the
//!   nowhere-dense ideal membership checker.
//! * [`symmetry`]: projectable Lie actions and the jump actions `J_{a,h}`, `J_{A,H}`.
//! * [`ode`]: the model equation `U' = F` and generalized-solution certification.
//! * [`cli`]: scenario files and the `ndalg` command line.

// `!(a <= b)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod ndalgebra;
pub mod ode;
pub mod sampling;
pub mod smoothfn;
pub mod symmetry;

pub use ndalgebra::{
    CheckProtocol, CheckReport, Decision, GeneralizedFunction, IdealWitness, RepSequence, SeqDesc,
};
pub use ode::FirstOrderOde;
pub use smoothfn::{make_rho, make_smooth_step, Interval, SmoothExpr};
pub use symmetry::{ActionDescriptor, JumpAction, MultiJumpAction, ProjectableAction};
