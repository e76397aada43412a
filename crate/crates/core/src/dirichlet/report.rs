use serde::Serialize;

use super::{MeanValueConfig, PolySupport};

/// One JSON record per measurement.
#[derive(Clone, Debug, Serialize)]
pub struct DirichletRecord<R: Serialize> {
    pub polynomial_spec: Vec<PolySupport>,
    pub cfg: Option<MeanValueConfig>,
    pub result: R,
    pub grid_step: Option<f64>,
    pub converged: bool,
}

impl<R: Serialize> DirichletRecord<R> {
    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }
}
