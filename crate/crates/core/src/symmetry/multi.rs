use serde::{Deserialize, Serialize};

use super::jump::{glue_on_band, shrinking_cutoff, zero_band_half_width};
use super::{ActionError, JumpAction};
use crate::ndalgebra::{GeneralizedFunction, RepSequence, SeqDesc};
use crate::smoothfn::SmoothExpr;

/// Jumps `h_a` at finitely many distinct locations `a ∈ A`, sorted by location.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct MultiJumpAction {
    jumps: Vec<(f64, f64)>,
}

impl TryFrom<Vec<[f64; 2]>> for MultiJumpAction {
    type Error = ActionError;

    fn try_from(pairs: Vec<[f64; 2]>) -> Result<Self, Self::Error> {
        MultiJumpAction::new(pairs.into_iter().map(|[a, h]| (a, h)))
    }
}

impl From<MultiJumpAction> for Vec<[f64; 2]> {
    fn from(m: MultiJumpAction) -> Self {
        m.jumps.into_iter().map(|(a, h)| [a, h]).collect()
    }
}

impl MultiJumpAction {
    /// Rejects non-finite data and repeated locations.
    pub fn new<I: IntoIterator<Item = (f64, f64)>>(pairs: I) -> Result<Self, ActionError> {
        let mut jumps: Vec<(f64, f64)> = pairs.into_iter().map(|(a, h)| (a + 0.0, h)).collect();
        if jumps.iter().any(|(a, h)| !a.is_finite() || !h.is_finite()) {
            return Err(ActionError::NonFinite);
        }
        jumps.sort_by(|x, y| x.0.total_cmp(&y.0));
        if let Some(w) = jumps.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(ActionError::DuplicateLocation(w[0].0));
        }
        Ok(MultiJumpAction { jumps })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn singleton(j: JumpAction) -> Self {
        MultiJumpAction { jumps: vec![(j.a, j.h)] }
    }

    pub fn jumps(&self) -> &[(f64, f64)] {
        &self.jumps
    }

    pub fn locations(&self) -> Vec<f64> {
        self.jumps.iter().map(|j| j.0).collect()
    }

    pub fn height(&self, a: f64) -> Option<f64> {
        self.jumps.iter().find(|j| j.0 == a).map(|j| j.1)
    }

    pub fn len(&self) -> usize {
        self.jumps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jumps.is_empty()
    }

    /// Drop zero-height entries.
    pub fn normalized(&self) -> Self {
        MultiJumpAction { jumps: self.jumps.iter().copied().filter(|j| j.1 != 0.0).collect() }
    }

    pub fn inverse(&self) -> Self {
        MultiJumpAction { jumps: self.jumps.iter().map(|&(a, h)| (a, -h)).collect() }
    }

    /// `J_{A,H} ∘ J_{B,K} = J_{C,L}` with `C = A ∪ B` and heights added on `A ∩ B`.
    pub fn compose(&self, other: &MultiJumpAction) -> MultiJumpAction {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.jumps, &other.jumps);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() || j < b.len() {
            match (a.get(i), b.get(j)) {
                (Some(&(x, h)), Some(&(y, k))) if x == y => {
                    out.push((x, h + k));
                    i += 1;
                    j += 1;
                }
                (Some(&(x, h)), Some(&(y, _))) if x < y => {
                    out.push((x, h));
                    i += 1;
                }
                (Some(&(x, h)), None) => {
                    out.push((x, h));
                    i += 1;
                }
                (_, Some(&(y, k))) => {
                    out.push((y, k));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        MultiJumpAction { jumps: out }
    }

    pub fn apply(&self, s: &RepSequence) -> RepSequence {
        RepSequence::new(SeqDesc::MultiJump { jumps: self.clone(), base: Box::new(s.desc().clone()) })
    }

    pub fn apply_gf(&self, w: &GeneralizedFunction) -> GeneralizedFunction {
        GeneralizedFunction::new(self.apply(w.rep()), [w.singular_support(), &self.locations()].concat())
    }
}

/// `[∏_a ρ((ν+1)(x-a))] · (s_ν(x) + σ(x))`, `σ(x) = Σ_{a < x} h_a`,
/// realized as a chain of gluings, one per location.
pub fn multi_representative(action: &MultiJumpAction, s_nu: &SmoothExpr, nu: u32) -> SmoothExpr {
    if action.is_empty() {
        return s_nu.clone();
    }
    let cut = SmoothExpr::product(action.jumps.iter().map(|&(a, _)| shrinking_cutoff(a, nu)));
    let piece = |level: f64| {
        SmoothExpr::product([cut.clone(), SmoothExpr::sum([s_nu.clone(), SmoothExpr::constant(level)])])
    };
    let half = zero_band_half_width(nu);
    let mut level = 0.0;
    let mut chain = piece(level);
    for &(a, h) in &action.jumps {
        level += h;
        chain = glue_on_band(a, chain, piece(level), half);
    }
    chain
}
