//! Evaluation of relation instances and reporting of residuals.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::Result;

use super::algebra::{Algebra, Backend};
use super::element::ZElement;
use super::relations::{enumerate, Family, RelationInstance};

#[derive(Clone, Debug)]
pub struct RelationReport {
    pub family: Family,
    pub indices: Vec<usize>,
    pub variant: &'static str,
    pub residual: ZElement,
}

impl RelationReport {
    pub fn residual_zero(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn label(&self) -> String {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        let mut s = format!("{}({})", self.family, idx.join(","));
        if !self.variant.is_empty() {
            s.push(' ');
            s.push_str(self.variant);
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family.tag(),
            "indices": self.indices,
            "variant": self.variant,
            "residual_zero": self.residual_zero(),
            "residual": self.residual.to_json(),
        })
    }
}

pub fn check_instance(alg: &Algebra, r: &RelationInstance, backend: Backend) -> Result<RelationReport> {
    Ok(RelationReport {
        family: r.family,
        indices: r.indices.clone(),
        variant: r.variant,
        residual: r.evaluate(alg, backend)?,
    })
}

/// Evaluate every instance of the given families in parallel.
pub fn verify_relations(alg: &Algebra, families: &[Family], backend: Backend) -> Result<Vec<RelationReport>> {
    let instances: Vec<RelationInstance> = families.iter().flat_map(|&f| enumerate(alg.n(), f)).collect();
    instances.par_iter().map(|r| check_instance(alg, r, backend)).collect()
}
