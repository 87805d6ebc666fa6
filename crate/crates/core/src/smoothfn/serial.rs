use serde::{Deserialize, Serialize};

use super::expr::{Node, SmoothExpr};
use super::{make_rho, SmoothError};

/// JSON form of a [`SmoothExpr`]: an object tagged by `"op"`.
///
/// `rho` and `poly` are input shorthands; they are expanded on parse and
/// written back out as their full trees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum ExprRepr {
    Const { value: f64 },
    X,
    Sum { terms: Vec<SmoothExpr> },
    Product { factors: Vec<SmoothExpr> },
    Scale { factor: f64, arg: SmoothExpr },
    Compose { outer: SmoothExpr, inner: SmoothExpr },
    Affine { slope: f64, offset: f64, arg: SmoothExpr },
    Step {
        #[serde(default)]
        order: u32,
    },
    Glued { breakpoint: f64, left: SmoothExpr, right: SmoothExpr, deadzone: [f64; 2] },
    Rho,
    Poly { coeffs: Vec<f64> },
}

impl TryFrom<ExprRepr> for SmoothExpr {
    type Error = SmoothError;

    fn try_from(r: ExprRepr) -> Result<Self, Self::Error> {
        Ok(match r {
            ExprRepr::Const { value } => SmoothExpr::constant(value),
            ExprRepr::X => SmoothExpr::identity(),
            ExprRepr::Sum { terms } => SmoothExpr::sum(terms),
            ExprRepr::Product { factors } => SmoothExpr::product(factors),
            ExprRepr::Scale { factor, arg } => SmoothExpr::scale(factor, arg),
            ExprRepr::Compose { outer, inner } => SmoothExpr::compose(outer, inner),
            ExprRepr::Affine { slope, offset, arg } => arg.affine(slope, offset)?,
            ExprRepr::Step { order } => SmoothExpr::step(order),
            ExprRepr::Glued { breakpoint, left, right, deadzone: [lo, hi] } => {
                SmoothExpr::glued(breakpoint, left, right, (lo, hi))?
            }
            ExprRepr::Rho => make_rho(),
            ExprRepr::Poly { coeffs } => SmoothExpr::polynomial(&coeffs),
        })
    }
}

impl From<SmoothExpr> for ExprRepr {
    fn from(e: SmoothExpr) -> Self {
        match e.node() {
            Node::Constant(c) => ExprRepr::Const { value: *c },
            Node::Identity => ExprRepr::X,
            Node::Sum(ts) => ExprRepr::Sum { terms: ts.clone() },
            Node::Product(fs) => ExprRepr::Product { factors: fs.clone() },
            Node::Scale(c, arg) => ExprRepr::Scale { factor: *c, arg: arg.clone() },
            Node::Compose { outer, inner } => ExprRepr::Compose { outer: outer.clone(), inner: inner.clone() },
            Node::AffineArg { slope, offset, arg } => {
                ExprRepr::Affine { slope: *slope, offset: *offset, arg: arg.clone() }
            }
            Node::Step { order } => ExprRepr::Step { order: *order },
            Node::Glued(g) => {
                let (lo, hi) = g.deadzone();
                ExprRepr::Glued {
                    breakpoint: g.breakpoint(),
                    left: g.left().clone(),
                    right: g.right().clone(),
                    deadzone: [lo, hi],
                }
            }
        }
    }
}

impl Serialize for SmoothExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ExprRepr::from(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SmoothExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ExprRepr::deserialize(d)?;
        SmoothExpr::try_from(repr).map_err(serde::de::Error::custom)
    }
}
