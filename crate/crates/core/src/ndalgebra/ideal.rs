//! Membership in the nowhere-dense ideal: a sequence `w` belongs to it when
//! there is a closed nowhere-dense `Γ` such that every `x ∉ Γ` has a
//! neighbourhood on which `w_ν ≡ 0` for all large `ν`.
//!
//! The check is finitized by a [`CheckProtocol`] and is three-valued:
//! `Certified` and `Refuted` are sound for finite `Γ` and sequences that
//! vanish exactly off shrinking neighbourhoods of `Γ`; everything else is
//! reported as `Inconclusive`.

use serde::{Deserialize, Serialize};

use super::generalized::merge_points;
use super::{GeneralizedFunction, RepSequence};
use crate::sampling::dyadic_points;
use crate::smoothfn::{flat_value_on, Interval};

/// Exact samples taken in a neighbourhood that could not be cleared structurally.
pub const NEIGHBOURHOOD_SAMPLES: usize = 32;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CheckError {
    #[error("check window must be a nonempty compact interval, got [{lo}, {hi}]")]
    EmptyWindow { lo: f64, hi: f64 },
    #[error("invalid protocol field `{field}`: {reason}")]
    InvalidProtocol { field: &'static str, reason: String },
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
}

/// `r_ν = scale / (ν + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadiusRule {
    pub scale: f64,
}

impl Default for RadiusRule {
    fn default() -> Self {
        RadiusRule { scale: 1.0 }
    }
}

impl RadiusRule {
    pub fn radius(&self, nu: u32) -> f64 {
        self.scale / (nu as f64 + 1.0)
    }

    /// Smallest `ν` with `r_ν <= bound`.
    pub fn first_index_within(&self, bound: f64) -> u32 {
        let guess = (self.scale / bound).ceil() - 1.0;
        let mut nu = if guess.is_finite() && guess > 0.0 { guess.min(u32::MAX as f64) as u32 } else { 0 };
        while nu > 0 && self.radius(nu - 1) <= bound {
            nu -= 1;
        }
        while self.radius(nu) > bound && nu < u32::MAX {
            nu += 1;
        }
        nu
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Stabilization {
    /// `μ` = first index whose radius fits inside half the protocol margin.
    #[default]
    FromRadius,
    Fixed(u32),
}

/// Certificate data `(Γ, r_ν, μ)` for ideal membership.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WitnessRepr", into = "WitnessRepr")]
pub struct IdealWitness {
    gamma: Vec<f64>,
    radius_rule: RadiusRule,
    stabilization: Stabilization,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessRepr {
    gamma: Vec<f64>,
    #[serde(default)]
    radius_rule: RadiusRule,
    #[serde(default)]
    stabilization: Stabilization,
}

impl TryFrom<WitnessRepr> for IdealWitness {
    type Error = CheckError;

    fn try_from(r: WitnessRepr) -> Result<Self, Self::Error> {
        IdealWitness::new(r.gamma)?.with_radius_rule(r.radius_rule)?.with_stabilization(r.stabilization)
    }
}

impl From<IdealWitness> for WitnessRepr {
    fn from(w: IdealWitness) -> Self {
        WitnessRepr { gamma: w.gamma, radius_rule: w.radius_rule, stabilization: w.stabilization }
    }
}

impl IdealWitness {
    pub fn new(gamma: Vec<f64>) -> Result<Self, CheckError> {
        if gamma.iter().any(|p| !p.is_finite()) {
            return Err(CheckError::InvalidWitness("gamma points must be finite".into()));
        }
        Ok(IdealWitness {
            gamma: merge_points(&gamma, &[]),
            radius_rule: RadiusRule::default(),
            stabilization: Stabilization::default(),
        })
    }

    /// Witness with empty `Γ`.
    pub fn empty() -> Self {
        Self::new(Vec::new()).expect("empty gamma")
    }

    pub fn with_radius_rule(mut self, rule: RadiusRule) -> Result<Self, CheckError> {
        if !(rule.scale.is_finite() && rule.scale > 0.0) {
            return Err(CheckError::InvalidWitness(format!("radius scale must be positive, got {}", rule.scale)));
        }
        self.radius_rule = rule;
        Ok(self)
    }

    pub fn with_stabilization(mut self, s: Stabilization) -> Result<Self, CheckError> {
        self.stabilization = s;
        Ok(self)
    }

    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    pub fn radius_rule(&self) -> RadiusRule {
        self.radius_rule
    }

    pub fn stabilization(&self) -> Stabilization {
        self.stabilization
    }

    /// `Γ ∪ points`, keeping the other data.
    pub fn union(&self, points: &[f64]) -> Result<Self, CheckError> {
        if points.iter().any(|p| !p.is_finite()) {
            return Err(CheckError::InvalidWitness("gamma points must be finite".into()));
        }
        Ok(IdealWitness { gamma: merge_points(&self.gamma, points), ..self.clone() })
    }

    pub fn distance_to_gamma(&self, x: f64) -> f64 {
        self.gamma.iter().map(|g| (x - g).abs()).fold(f64::INFINITY, f64::min)
    }

    pub fn stabilization_index(&self, protocol: &CheckProtocol) -> u32 {
        match self.stabilization {
            Stabilization::Fixed(mu) => mu,
            Stabilization::FromRadius => self.radius_rule.first_index_within(protocol.neighbourhood_radius()),
        }
    }
}

/// How the quantifiers "for all x" and "for all large ν" are finitized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ProtocolRepr", into = "ProtocolRepr")]
pub struct CheckProtocol {
    window: Interval,
    sample_count: usize,
    index_cap: u32,
    margin: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProtocolRepr {
    window: [f64; 2],
    sample_count: usize,
    index_cap: u32,
    margin: f64,
}

impl TryFrom<ProtocolRepr> for CheckProtocol {
    type Error = CheckError;

    fn try_from(r: ProtocolRepr) -> Result<Self, Self::Error> {
        CheckProtocol::new(r.window, r.sample_count, r.index_cap, r.margin)
    }
}

impl From<CheckProtocol> for ProtocolRepr {
    fn from(p: CheckProtocol) -> Self {
        ProtocolRepr { window: p.window.into(), sample_count: p.sample_count, index_cap: p.index_cap, margin: p.margin }
    }
}

impl Default for CheckProtocol {
    fn default() -> Self {
        CheckProtocol::new([-4.0, 4.0], 64, 16, 0.25).expect("valid defaults")
    }
}

impl CheckProtocol {
    pub fn new(window: [f64; 2], sample_count: usize, index_cap: u32, margin: f64) -> Result<Self, CheckError> {
        let [lo, hi] = window;
        let window = Interval::new(lo, hi).map_err(|_| CheckError::EmptyWindow { lo, hi })?;
        if !window.is_bounded() {
            return Err(CheckError::EmptyWindow { lo, hi });
        }
        if sample_count == 0 {
            return Err(CheckError::InvalidProtocol { field: "sample_count", reason: "must be positive".into() });
        }
        if !(margin.is_finite() && margin > 0.0) {
            return Err(CheckError::InvalidProtocol { field: "margin", reason: format!("must be positive, got {margin}") });
        }
        Ok(CheckProtocol { window, sample_count, index_cap, margin })
    }

    pub fn window(&self) -> Interval {
        self.window
    }

    pub fn sample_count(&self) -> usize {
        self.sample_count
    }

    pub fn index_cap(&self) -> u32 {
        self.index_cap
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    pub fn with_index_cap(&self, index_cap: u32) -> Self {
        CheckProtocol { index_cap, ..self.clone() }
    }

    pub fn with_window(&self, lo: f64, hi: f64) -> Result<Self, CheckError> {
        Self::new([lo, hi], self.sample_count, self.index_cap, self.margin)
    }

    /// Radius of the neighbourhood checked around each sample point.
    pub fn neighbourhood_radius(&self) -> f64 {
        self.margin / 2.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Certified,
    Refuted,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub nu: u32,
    pub x: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub decision: Decision,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    /// First and last index checked.
    pub checked_indices: [u32; 2],
    pub window: Interval,
    pub gamma: Vec<f64>,
    /// Sample centres that survived the margin exclusion.
    pub sample_points: usize,
    /// Neighbourhoods cleared by structural analysis.
    pub structural: usize,
    /// Neighbourhoods cleared by exact sampling.
    pub sampled: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Decide whether `w` lies in the ideal with the given witness.
pub fn ideal_member(w: &RepSequence, witness: &IdealWitness, protocol: &CheckProtocol) -> CheckReport {
    let mu = witness.stabilization_index(protocol);
    let cap = protocol.index_cap();
    let r = protocol.neighbourhood_radius();
    let mut report = CheckReport {
        decision: Decision::Inconclusive,
        counterexample: None,
        checked_indices: [mu, cap],
        window: protocol.window(),
        gamma: witness.gamma().to_vec(),
        sample_points: 0,
        structural: 0,
        sampled: 0,
        note: None,
    };

    let centres: Vec<f64> = dyadic_points(&protocol.window(), protocol.sample_count())
        .into_iter()
        .filter(|&x| witness.distance_to_gamma(x) >= protocol.margin())
        .collect();
    report.sample_points = centres.len();
    if centres.is_empty() {
        report.note = Some("every sample point lies within the margin of gamma".into());
        return report;
    }
    if mu > cap {
        report.note = Some(format!("stabilization index {mu} exceeds index cap {cap}"));
        return report;
    }

    let mut saw_nan = false;
    for nu in mu..=cap {
        let term = w.rule(nu);
        for &x in &centres {
            let hood = Interval::new(x - r, x + r).expect("positive radius");
            if flat_value_on(&term, &hood) == Some(0.0) {
                report.structural += 1;
                continue;
            }
            for p in dyadic_points(&hood, NEIGHBOURHOOD_SAMPLES) {
                let value = term.eval(p);
                if value.is_nan() {
                    saw_nan = true;
                } else if value != 0.0 {
                    report.decision = Decision::Refuted;
                    report.counterexample = Some(Counterexample { nu, x: p, value });
                    return report;
                }
            }
            report.sampled += 1;
        }
    }
    if saw_nan {
        report.note = Some("non-finite values encountered during sampling".into());
    } else {
        report.decision = Decision::Certified;
    }
    report
}

/// `W1 ~ W2` iff the difference of representatives lies in the ideal.
pub fn equiv(
    w1: &GeneralizedFunction,
    w2: &GeneralizedFunction,
    witness: &IdealWitness,
    protocol: &CheckProtocol,
) -> CheckReport {
    ideal_member(&w1.rep().sub(w2.rep()), witness, protocol)
}
