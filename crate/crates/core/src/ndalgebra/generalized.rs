use serde::{Deserialize, Serialize};

use super::RepSequence;
use crate::smoothfn::SmoothExpr;

/// A class `s + I_nd` in the quotient algebra, carried by one representative.
///
/// `singular_support` is a hint: points where the representative may fail to
/// stabilize. Jump actions add their locations to it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneralizedFunction {
    rep: RepSequence,
    #[serde(default)]
    singular_support: Vec<f64>,
}

pub(crate) fn merge_points(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out: Vec<f64> = a.iter().chain(b).map(|p| p + 0.0).collect();
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

impl GeneralizedFunction {
    pub fn new(rep: RepSequence, singular_support: Vec<f64>) -> Self {
        GeneralizedFunction { rep, singular_support: merge_points(&singular_support, &[]) }
    }

    /// The smooth function `ψ` as the class of `(ψ, ψ, ψ, ...)`.
    pub fn embed(psi: SmoothExpr) -> Self {
        Self::new(RepSequence::constant(psi), Vec::new())
    }

    pub fn zero() -> Self {
        Self::embed(SmoothExpr::zero())
    }

    pub fn one() -> Self {
        Self::embed(SmoothExpr::one())
    }

    pub fn rep(&self) -> &RepSequence {
        &self.rep
    }

    pub fn singular_support(&self) -> &[f64] {
        &self.singular_support
    }

    pub fn representative(&self, nu: u32) -> SmoothExpr {
        self.rep.rule(nu)
    }

    pub fn eval_representative(&self, nu: u32, x: f64) -> f64 {
        self.rep.eval(nu, x)
    }

    pub(crate) fn with_singular_points(&self, rep: RepSequence, extra: &[f64]) -> Self {
        GeneralizedFunction { rep, singular_support: merge_points(&self.singular_support, extra) }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.with_singular_points(self.rep.add(&other.rep), &other.singular_support)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.with_singular_points(self.rep.sub(&other.rep), &other.singular_support)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.with_singular_points(self.rep.mul(&other.rep), &other.singular_support)
    }

    pub fn scale(&self, c: f64) -> Self {
        self.with_singular_points(self.rep.scale(c), &[])
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    /// `D^p`, applied termwise.
    pub fn derive(&self, order: u32) -> Self {
        self.with_singular_points(self.rep.derive(order), &[])
    }
}
