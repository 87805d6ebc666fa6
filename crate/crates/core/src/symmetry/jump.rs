use serde::{Deserialize, Serialize};

use super::ActionError;
use crate::ndalgebra::{GeneralizedFunction, RepSequence, SeqDesc};
use crate::smoothfn::{make_rho, make_smooth_step, SmoothExpr};

/// `ρ((ν+1)(x - a))`: 0 on `|x - a| <= 1/(2(ν+1))`, 1 on `|x - a| >= 1/(ν+1)`.
pub fn shrinking_cutoff(a: f64, nu: u32) -> SmoothExpr {
    let k = nu as f64 + 1.0;
    make_rho().affine(k, -k * a).expect("positive slope")
}

/// `s((ν+1)(x - a))`: 0 for `x <= a`, 1 for `x >= a + 1/(ν+1)`.
pub fn shrinking_step(a: f64, nu: u32) -> SmoothExpr {
    let k = nu as f64 + 1.0;
    make_smooth_step().affine(k, -k * a).expect("positive slope")
}

/// Half-width of the band around a jump location on which the cutoff vanishes.
pub fn zero_band_half_width(nu: u32) -> f64 {
    1.0 / (2.0 * (nu as f64 + 1.0))
}

/// Glue at `breakpoint` over the nominal deadzone, shrinking it by a few ulps
/// if rounding in the cutoff argument eats into the exact zero zone.
pub(crate) fn glue_on_band(breakpoint: f64, left: SmoothExpr, right: SmoothExpr, half: f64) -> SmoothExpr {
    let mut lo = breakpoint - half;
    let mut hi = breakpoint + half;
    for _ in 0..64 {
        match SmoothExpr::glued(breakpoint, left.clone(), right.clone(), (lo, hi)) {
            Ok(e) => return e,
            Err(_) => {
                lo = lo.next_up();
                hi = hi.next_down();
            }
        }
    }
    panic!("cutoff product does not vanish near {breakpoint}");
}

/// `J_{a,h,ν} s_ν`: `ρ((ν+1)(x-a)) s_ν(x)` for `x < a`, `ρ((ν+1)(x-a)) (s_ν(x) + h)` for `x >= a`.
pub fn jump_representative(a: f64, h: f64, s_nu: &SmoothExpr, nu: u32) -> SmoothExpr {
    let cut = shrinking_cutoff(a, nu);
    let left = SmoothExpr::product([cut.clone(), s_nu.clone()]);
    let right = SmoothExpr::product([cut, SmoothExpr::sum([s_nu.clone(), SmoothExpr::constant(h)])]);
    glue_on_band(a, left, right, zero_band_half_width(nu))
}

/// The one-point jump action `J_{a,h}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JumpAction {
    pub a: f64,
    pub h: f64,
}

impl JumpAction {
    pub fn new(a: f64, h: f64) -> Result<Self, ActionError> {
        if !a.is_finite() || !h.is_finite() {
            return Err(ActionError::NonFinite);
        }
        Ok(JumpAction { a: a + 0.0, h })
    }

    pub fn identity_at(a: f64) -> Result<Self, ActionError> {
        Self::new(a, 0.0)
    }

    pub fn apply(&self, s: &RepSequence) -> RepSequence {
        RepSequence::new(SeqDesc::Jump { a: self.a, h: self.h, base: Box::new(s.desc().clone()) })
    }

    /// Action on the quotient; `a` joins the singular support.
    pub fn apply_gf(&self, w: &GeneralizedFunction) -> GeneralizedFunction {
        GeneralizedFunction::new(self.apply(w.rep()), [w.singular_support(), &[self.a]].concat())
    }

    /// `J_{a,h} ∘ J_{a,k} = J_{a,h+k}`. Different locations are a separate
    /// family; lift both to [`super::MultiJumpAction`] for those.
    pub fn compose(&self, other: &JumpAction) -> Result<JumpAction, ActionError> {
        if self.a != other.a {
            return Err(ActionError::LocationMismatch { left: self.a, right: other.a });
        }
        JumpAction::new(self.a, self.h + other.h)
    }

    pub fn inverse(&self) -> JumpAction {
        JumpAction { a: self.a, h: -self.h }
    }
}
