//! The model equation `U'(x) = F(x)` on ℝ: classical solutions, their
//! embedding, and certification of generalized solutions in the quotient.

use serde::{Deserialize, Serialize};

use crate::ndalgebra::{equiv, CheckProtocol, CheckReport, GeneralizedFunction, IdealWitness};
use crate::sampling::dyadic_points;
use crate::smoothfn::{Interval, SmoothExpr};

/// Window and grid on which a candidate antiderivative is checked.
pub const SOLUTION_CHECK_WINDOW: (f64, f64) = (-8.0, 8.0);
pub const SOLUTION_CHECK_POINTS: usize = 257;
pub const SOLUTION_TOLERANCE: f64 = 1e-9;

/// Taylor order used to extrapolate one-sided limits in [`jump_magnitude`].
pub const LIMIT_TAYLOR_ORDER: usize = 12;
pub const STABILIZATION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OdeError {
    #[error("candidate is not an antiderivative: at x = {x}, U'(x) = {derivative} but F(x) = {rhs}")]
    NotASolution { x: f64, derivative: f64, rhs: f64 },
    #[error("jump estimates did not stabilize: {estimates:?} (at indices {indices:?})")]
    NotStabilized { indices: [u32; 2], estimates: [f64; 2] },
}

/// `U' = F`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FirstOrderOde {
    pub rhs: SmoothExpr,
}

impl FirstOrderOde {
    pub fn new(rhs: SmoothExpr) -> Self {
        FirstOrderOde { rhs }
    }

    /// Accept `candidate` if its derivative matches `F` on the check grid.
    /// The worst sample point is reported on failure.
    pub fn classical_solution(&self, candidate: &SmoothExpr) -> Result<SmoothExpr, OdeError> {
        let d = candidate.diff();
        let window = Interval::new(SOLUTION_CHECK_WINDOW.0, SOLUTION_CHECK_WINDOW.1).expect("window");
        let mut worst: Option<(f64, f64, f64, f64)> = None;
        for x in dyadic_points(&window, SOLUTION_CHECK_POINTS) {
            let (dv, fv) = (d.eval(x), self.rhs.eval(x));
            let excess = (dv - fv).abs() / fv.abs().max(1.0);
            let excess = if excess.is_nan() { f64::INFINITY } else { excess };
            if excess > SOLUTION_TOLERANCE && worst.is_none_or(|w| excess > w.3) {
                worst = Some((x, dv, fv, excess));
            }
        }
        match worst {
            None => Ok(candidate.clone()),
            Some((x, derivative, rhs, _)) => Err(OdeError::NotASolution { x, derivative, rhs }),
        }
    }
}

/// `W = (U, U, U, ...) + I_nd`.
pub fn embed_solution(u: &SmoothExpr) -> GeneralizedFunction {
    GeneralizedFunction::embed(u.clone())
}

/// Checks `D W = F` in the quotient, i.e. `D W - embed(F)` lies in the ideal.
pub fn certify_generalized_solution(
    w: &GeneralizedFunction,
    ode: &FirstOrderOde,
    witness: &IdealWitness,
    protocol: &CheckProtocol,
) -> CheckReport {
    equiv(&w.derive(1), &GeneralizedFunction::embed(ode.rhs.clone()), witness, protocol)
}

/// Probe distance for index `ν`: the smallest power of two `>= 2/(ν+1)`.
pub fn probe_distance(nu: u32) -> f64 {
    let target = 2.0 / (nu as f64 + 1.0);
    2f64.powi(target.log2().ceil() as i32)
}

/// `lim_{y→a+} w_ν(y) - lim_{y→a-} w_ν(y)` for the stabilized branches seen
/// at `a ± δ_ν`, each extrapolated to `a` through its Taylor polynomial.
fn jump_estimate(w: &GeneralizedFunction, a: f64, nu: u32) -> f64 {
    let delta = probe_distance(nu);
    let term = w.representative(nu);
    let right = term.jet(a + delta, LIMIT_TAYLOR_ORDER).eval_at_offset(-delta);
    let left = term.jet(a - delta, LIMIT_TAYLOR_ORDER).eval_at_offset(delta);
    right - left
}

/// Persistent jump of `W` across `a`. Nonzero means `W` has no smooth
/// representative near `a`.
///
/// Estimated at `ν = index_cap` and cross-checked at the index whose probe
/// distance is twice as large; disagreement beyond `1e-9` is an error.
/// Other jump locations must lie farther than twice the probe distance from `a`.
pub fn jump_magnitude(w: &GeneralizedFunction, a: f64, protocol: &CheckProtocol) -> Result<f64, OdeError> {
    let cap = protocol.index_cap();
    let estimate = jump_estimate(w, a, cap);
    let coarse = cap.div_ceil(2).saturating_sub(1);
    if coarse < cap {
        let check = jump_estimate(w, a, coarse);
        let diff = (estimate - check).abs();
        if !(diff <= STABILIZATION_TOLERANCE * estimate.abs().max(1.0)) {
            return Err(OdeError::NotStabilized { indices: [coarse, cap], estimates: [check, estimate] });
        }
    }
    Ok(estimate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ndalgebra::Decision;
    use crate::symmetry::{JumpAction, MultiJumpAction};

    fn poly(c: &[f64]) -> SmoothExpr {
        SmoothExpr::polynomial(c)
    }

    #[test]
    fn accepts_and_rejects_candidates() {
        let zero = FirstOrderOde::new(SmoothExpr::zero());
        assert!(zero.classical_solution(&SmoothExpr::constant(4.0)).is_ok());
        let two_x = FirstOrderOde::new(poly(&[0.0, 2.0]));
        assert!(two_x.classical_solution(&poly(&[0.0, 0.0, 1.0])).is_ok());
        let err = two_x.classical_solution(&poly(&[0.0, 0.0, 0.0, 1.0])).unwrap_err();
        let OdeError::NotASolution { x, derivative, rhs } = err else { panic!() };
        // worst relative mismatch of 3x^2 vs 2x on [-8, 8] is at an end
        assert_eq!(x.abs(), 8.0);
        assert_eq!(derivative, 3.0 * x * x);
        assert_eq!(rhs, 2.0 * x);
    }

    #[test]
    fn embedded_solution_representatives() {
        let w = embed_solution(&poly(&[0.0, 0.0, 1.0]));
        for nu in [0, 1, 50] {
            assert_eq!(w.eval_representative(nu, 3.0), 9.0);
        }
    }

    #[test]
    fn classical_and_jumped_solutions_certify() {
        let ode = FirstOrderOde::new(SmoothExpr::zero());
        let p = CheckProtocol::default();
        let w = embed_solution(&SmoothExpr::zero());
        assert_eq!(certify_generalized_solution(&w, &ode, &IdealWitness::empty(), &p).decision, Decision::Certified);
        let jumped = JumpAction::new(0.0, 5.0).unwrap().apply_gf(&w);
        let witness = IdealWitness::new(vec![0.0]).unwrap();
        assert_eq!(certify_generalized_solution(&jumped, &ode, &witness, &p).decision, Decision::Certified);
        let wrong = embed_solution(&SmoothExpr::identity());
        assert_eq!(certify_generalized_solution(&wrong, &ode, &IdealWitness::empty(), &p).decision, Decision::Refuted);
    }

    #[test]
    fn probe_distances() {
        assert_eq!(probe_distance(16), 0.125);
        assert_eq!(probe_distance(15), 0.125);
        assert_eq!(probe_distance(7), 0.25);
        assert_eq!(probe_distance(0), 2.0);
        for nu in 0..100 {
            assert!(probe_distance(nu) > 1.0 / (nu as f64 + 1.0));
        }
    }

    #[test]
    fn jump_magnitude_examples() {
        let p = CheckProtocol::default();
        let smooth = embed_solution(&poly(&[1.0, -2.0, 0.5, 0.25]));
        assert_eq!(jump_magnitude(&smooth, 0.75, &p).unwrap(), 0.0);
        let jumped = JumpAction::new(0.0, 5.0).unwrap().apply_gf(&GeneralizedFunction::zero());
        assert_eq!(jump_magnitude(&jumped, 0.0, &p).unwrap(), 5.0);
        let multi = MultiJumpAction::new([(0.0, 1.0), (1.0, 5.0)]).unwrap().apply_gf(&GeneralizedFunction::zero());
        assert_eq!(jump_magnitude(&multi, 1.0, &p).unwrap(), 5.0);
        assert_eq!(jump_magnitude(&multi, 0.0, &p).unwrap(), 1.0);
    }

    #[test]
    fn jump_magnitude_on_square_is_exact() {
        let p = CheckProtocol::default();
        let w = JumpAction::new(0.5, -1.25).unwrap().apply_gf(&embed_solution(&poly(&[0.0, 0.0, 1.0])));
        assert_eq!(jump_magnitude(&w, 0.5, &p).unwrap(), -1.25);
    }

    #[test]
    fn non_stabilizing_sequence_is_reported() {
        // the step is not analytic at 0 and 1, so extrapolating to 1/2 from
        // 1/8 and from 1/4 away gives different answers
        let w = embed_solution(&crate::smoothfn::make_smooth_step());
        let err = jump_magnitude(&w, 0.5, &CheckProtocol::default()).unwrap_err();
        assert!(matches!(err, OdeError::NotStabilized { .. }));
    }
}
