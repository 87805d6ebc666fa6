use serde::{Deserialize, Serialize};

use super::CliError;
use crate::ndalgebra::{CheckProtocol, IdealWitness};
use crate::ode::FirstOrderOde;
use crate::smoothfn::SmoothExpr;
use crate::symmetry::ActionDescriptor;

/// Half-width added around the jump locations when no window is given.
pub const DEFAULT_WINDOW_PAD: f64 = 3.0;

/// A scenario file: an equation, a candidate classical solution, and an
/// action chain applied left to right to its embedding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub equation: FirstOrderOde,
    pub solution: SmoothExpr,
    #[serde(default)]
    pub actions: Vec<ActionDescriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub protocol: Option<ProtocolSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub export: Option<ExportSpec>,
}

/// Protocol fields; any missing one takes its default.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolSpec {
    pub window: Option<[f64; 2]>,
    pub sample_count: Option<usize>,
    pub index_cap: Option<u32>,
    pub margin: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    #[serde(alias = "CSV")]
    Csv,
    #[serde(alias = "JSON")]
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExportSpec {
    pub format: ExportFormat,
    pub indices: Vec<u32>,
    /// `(lo, hi, count)`
    pub grid: (f64, f64, usize),
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let scenario: Scenario = serde_path_to_error::deserialize(de).map_err(|e| {
            let field = e.path().to_string();
            CliError::Malformed { field, message: e.into_inner().to_string() }
        })?;
        scenario.validate()?;
        Ok(scenario)
    }

    fn validate(&self) -> Result<(), CliError> {
        if let Some(export) = &self.export {
            if export.indices.is_empty() {
                return Err(CliError::malformed("export.indices", "must list at least one index"));
            }
            let (lo, hi, count) = export.grid;
            if count < 2 {
                return Err(CliError::malformed("export.grid", "count must be at least 2"));
            }
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(CliError::malformed("export.grid", "needs finite lo < hi"));
            }
        }
        // surface protocol problems as parse errors
        self.resolve_protocol(None)?;
        Ok(())
    }

    /// Union of the jump locations of the action chain.
    pub fn gamma(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self.actions.iter().flat_map(|a| a.jump_locations()).collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    pub fn witness(&self) -> IdealWitness {
        IdealWitness::new(self.gamma()).expect("finite jump locations")
    }

    pub fn resolve_protocol(&self, index_cap_override: Option<u32>) -> Result<CheckProtocol, CliError> {
        let spec = self.protocol.clone().unwrap_or_default();
        let defaults = CheckProtocol::default();
        let window = spec.window.unwrap_or_else(|| {
            let gamma = self.gamma();
            match (gamma.first(), gamma.last()) {
                (Some(lo), Some(hi)) => [lo - DEFAULT_WINDOW_PAD, hi + DEFAULT_WINDOW_PAD],
                _ => [defaults.window().lo(), defaults.window().hi()],
            }
        });
        let index_cap = index_cap_override.or(spec.index_cap).unwrap_or(defaults.index_cap());
        CheckProtocol::new(
            window,
            spec.sample_count.unwrap_or(defaults.sample_count()),
            index_cap,
            spec.margin.unwrap_or(defaults.margin()),
        )
        .map_err(|e| CliError::malformed("protocol", &e.to_string()))
    }
}
