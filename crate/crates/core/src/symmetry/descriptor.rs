use serde::{Deserialize, Serialize};

use super::projectable::vertical_shift;
use super::{JumpAction, MultiJumpAction};
use crate::ndalgebra::GeneralizedFunction;

/// JSON action descriptor, e.g. `{"type":"jump","a":0,"h":5}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ActionDescriptor {
    Jump { a: f64, h: f64 },
    Multi { jumps: MultiJumpAction },
    Vertical { epsilon: f64 },
}

impl ActionDescriptor {
    pub fn apply(&self, w: &GeneralizedFunction) -> GeneralizedFunction {
        match self {
            ActionDescriptor::Jump { a, h } => JumpAction { a: *a, h: *h }.apply_gf(w),
            ActionDescriptor::Multi { jumps } => jumps.apply_gf(w),
            ActionDescriptor::Vertical { epsilon } => vertical_shift(*epsilon, w),
        }
    }

    pub fn jump_locations(&self) -> Vec<f64> {
        match self {
            ActionDescriptor::Jump { a, .. } => vec![*a],
            ActionDescriptor::Multi { jumps } => jumps.locations(),
            ActionDescriptor::Vertical { .. } => Vec::new(),
        }
    }

    fn as_multi(&self) -> Option<MultiJumpAction> {
        match self {
            ActionDescriptor::Jump { a, h } => Some(MultiJumpAction::singleton(JumpAction { a: *a, h: *h })),
            ActionDescriptor::Multi { jumps } => Some(jumps.clone()),
            ActionDescriptor::Vertical { .. } => None,
        }
    }
}

/// Fold a chain (applied left to right) into at most one multi-jump and one
/// vertical shift. A single descriptor is returned unchanged.
pub fn compose_descriptors(chain: &[ActionDescriptor]) -> Vec<ActionDescriptor> {
    if chain.len() <= 1 {
        return chain.to_vec();
    }
    let mut jumps: Option<MultiJumpAction> = None;
    let mut epsilon: Option<f64> = None;
    for d in chain {
        match d.as_multi() {
            Some(m) => jumps = Some(m.compose(&jumps.unwrap_or_default())),
            None => {
                if let ActionDescriptor::Vertical { epsilon: e } = d {
                    epsilon = Some(epsilon.unwrap_or(0.0) + e);
                }
            }
        }
    }
    let mut out = Vec::new();
    if let Some(jumps) = jumps {
        out.push(ActionDescriptor::Multi { jumps });
    }
    if let Some(epsilon) = epsilon {
        out.push(ActionDescriptor::Vertical { epsilon });
    }
    out
}
