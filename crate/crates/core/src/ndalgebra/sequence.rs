use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::smoothfn::SmoothExpr;
use crate::symmetry::{jump, multi, MultiJumpAction};

/// Closed-form description of a sequence `ν ↦ s_ν`. The tag alone
/// determines every term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SeqDesc {
    /// `(ψ, ψ, ψ, ...)`
    Constant { expr: SmoothExpr },
    /// `ρ((ν+1)(x - a))`
    Cutoff { a: f64 },
    /// `h · s((ν+1)(x - a))`: a step of height `h` rising on `[a, a + 1/(ν+1)]`.
    StepTail { a: f64, h: f64 },
    Jump { a: f64, h: f64, base: Box<SeqDesc> },
    MultiJump { jumps: MultiJumpAction, base: Box<SeqDesc> },
    Sum { terms: Vec<SeqDesc> },
    Product { factors: Vec<SeqDesc> },
    Scale { factor: f64, arg: Box<SeqDesc> },
    Derivative { order: u32, arg: Box<SeqDesc> },
}

/// An element of `(C∞(ℝ))^ℕ`, given by its description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RepSequence(Arc<SeqDesc>);

impl RepSequence {
    pub fn new(desc: SeqDesc) -> Self {
        RepSequence(Arc::new(desc))
    }

    pub fn constant(expr: SmoothExpr) -> Self {
        Self::new(SeqDesc::Constant { expr })
    }

    pub fn zero() -> Self {
        Self::constant(SmoothExpr::zero())
    }

    pub fn cutoff(a: f64) -> Self {
        Self::new(SeqDesc::Cutoff { a })
    }

    pub fn step_tail(a: f64, h: f64) -> Self {
        Self::new(SeqDesc::StepTail { a, h })
    }

    pub fn desc(&self) -> &SeqDesc {
        &self.0
    }

    /// The `ν`-th term.
    pub fn rule(&self, nu: u32) -> SmoothExpr {
        rule_of(&self.0, nu)
    }

    pub fn eval(&self, nu: u32, x: f64) -> f64 {
        self.rule(nu).eval(x)
    }

    pub fn add(&self, other: &RepSequence) -> RepSequence {
        Self::new(SeqDesc::Sum { terms: vec![self.desc().clone(), other.desc().clone()] })
    }

    pub fn sub(&self, other: &RepSequence) -> RepSequence {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RepSequence) -> RepSequence {
        Self::new(SeqDesc::Product { factors: vec![self.desc().clone(), other.desc().clone()] })
    }

    pub fn scale(&self, c: f64) -> RepSequence {
        Self::new(SeqDesc::Scale { factor: c, arg: Box::new(self.desc().clone()) })
    }

    pub fn neg(&self) -> RepSequence {
        self.scale(-1.0)
    }

    pub fn derive(&self, order: u32) -> RepSequence {
        if order == 0 {
            return self.clone();
        }
        Self::new(SeqDesc::Derivative { order, arg: Box::new(self.desc().clone()) })
    }
}

fn rule_of(desc: &SeqDesc, nu: u32) -> SmoothExpr {
    match desc {
        SeqDesc::Constant { expr } => expr.clone(),
        SeqDesc::Cutoff { a } => jump::shrinking_cutoff(*a, nu),
        SeqDesc::StepTail { a, h } => SmoothExpr::scale(*h, jump::shrinking_step(*a, nu)),
        SeqDesc::Jump { a, h, base } => jump::jump_representative(*a, *h, &rule_of(base, nu), nu),
        SeqDesc::MultiJump { jumps, base } => multi::multi_representative(jumps, &rule_of(base, nu), nu),
        SeqDesc::Sum { terms } => SmoothExpr::sum(terms.iter().map(|t| rule_of(t, nu))),
        SeqDesc::Product { factors } => SmoothExpr::product(factors.iter().map(|t| rule_of(t, nu))),
        SeqDesc::Scale { factor, arg } => SmoothExpr::scale(*factor, rule_of(arg, nu)),
        SeqDesc::Derivative { order, arg } => rule_of(arg, nu).diff_n(*order),
    }
}
