use super::ActionError;
use crate::ndalgebra::GeneralizedFunction;
use crate::sampling::dyadic_points;
use crate::smoothfn::{Interval, SmoothExpr};

const CHECK_WINDOW: (f64, f64) = (-8.0, 8.0);
const CHECK_POINTS: usize = 129;
const INVERSE_TOLERANCE: f64 = 1e-9;

/// A projectable action `(x, u) ↦ (g1(x), α(x) u + β(x))` on `ℝ × ℝ`.
///
/// `g1` must be a diffeomorphism of ℝ; it is supplied together with its
/// inverse and both are checked on a sample grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectableAction {
    g1_forward: SmoothExpr,
    g1_inverse: SmoothExpr,
    alpha: SmoothExpr,
    beta: SmoothExpr,
}

impl ProjectableAction {
    pub fn new(
        g1_forward: SmoothExpr,
        g1_inverse: SmoothExpr,
        alpha: SmoothExpr,
        beta: SmoothExpr,
    ) -> Result<Self, ActionError> {
        let grid = dyadic_points(&Interval::new(CHECK_WINDOW.0, CHECK_WINDOW.1).expect("window"), CHECK_POINTS);
        let slope = g1_forward.diff();
        let mut sign = 0.0;
        for &x in &grid {
            let d = slope.eval(x);
            if d == 0.0 || d.is_nan() || (sign != 0.0 && d.signum() != sign) {
                return Err(ActionError::NotMonotone { x });
            }
            sign = d.signum();
        }
        for &x in &grid {
            let back = g1_forward.eval(g1_inverse.eval(x));
            let err = (back - x).abs();
            if !(err <= INVERSE_TOLERANCE * x.abs().max(1.0)) {
                return Err(ActionError::NotInverse { x, error: err });
            }
            if !(alpha.eval(x) > 0.0) {
                return Err(ActionError::NonPositiveScale { x });
            }
        }
        Ok(ProjectableAction { g1_forward, g1_inverse, alpha, beta })
    }

    pub fn identity() -> Self {
        let x = SmoothExpr::identity();
        ProjectableAction { g1_forward: x.clone(), g1_inverse: x, alpha: SmoothExpr::one(), beta: SmoothExpr::zero() }
    }

    /// `(x, u) ↦ (x + c, u)`
    pub fn translation(c: f64) -> Self {
        ProjectableAction {
            g1_forward: SmoothExpr::polynomial(&[c, 1.0]),
            g1_inverse: SmoothExpr::polynomial(&[-c, 1.0]),
            alpha: SmoothExpr::one(),
            beta: SmoothExpr::zero(),
        }
    }

    /// `(x, u) ↦ (x, u + ε)`, the symmetry of `U' = F`.
    pub fn vertical(epsilon: f64) -> Self {
        ProjectableAction { beta: SmoothExpr::constant(epsilon), ..Self::identity() }
    }

    pub fn g1_forward(&self) -> &SmoothExpr {
        &self.g1_forward
    }

    pub fn g1_inverse(&self) -> &SmoothExpr {
        &self.g1_inverse
    }

    /// `g2(x, u)`.
    pub fn g2(&self, x: f64, u: f64) -> f64 {
        self.alpha.eval(x) * u + self.beta.eval(x)
    }

    /// Transformed graph: `x ↦ g2(g1⁻¹(x), U(g1⁻¹(x)))`.
    pub fn apply(&self, u: &SmoothExpr) -> SmoothExpr {
        let back = &self.g1_inverse;
        SmoothExpr::sum([
            SmoothExpr::product([
                SmoothExpr::compose(self.alpha.clone(), back.clone()),
                SmoothExpr::compose(u.clone(), back.clone()),
            ]),
            SmoothExpr::compose(self.beta.clone(), back.clone()),
        ])
    }
}

/// Termwise `W + ε`.
pub fn vertical_shift(epsilon: f64, w: &GeneralizedFunction) -> GeneralizedFunction {
    if epsilon == 0.0 {
        return w.clone();
    }
    w.add(&GeneralizedFunction::embed(SmoothExpr::constant(epsilon)))
}
