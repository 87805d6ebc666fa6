//! The quotient algebra `A_nd(ℝ) = (C∞(ℝ))^ℕ / I_nd(ℝ)` at desk scale.

mod generalized;
mod ideal;
mod sequence;

pub use generalized::GeneralizedFunction;
pub use ideal::{
    equiv, ideal_member, CheckError, CheckProtocol, CheckReport, Counterexample, Decision, IdealWitness, RadiusRule,
    Stabilization, NEIGHBOURHOOD_SAMPLES,
};
pub use sequence::{RepSequence, SeqDesc};

use crate::smoothfn::SmoothExpr;

pub fn embed(psi: SmoothExpr) -> GeneralizedFunction {
    GeneralizedFunction::embed(psi)
}

pub fn derive(w: &GeneralizedFunction, order: u32) -> GeneralizedFunction {
    w.derive(order)
}

pub fn eval_representative(w: &GeneralizedFunction, nu: u32, x: f64) -> f64 {
    w.eval_representative(nu, x)
}
