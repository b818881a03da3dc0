use serde::{Deserialize, Serialize};

use crate::instance::{IndexFilterFile, InstanceFile};

use super::grid::InstanceGrid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartKind {
    /// Must hold on every instance inside the hypothesis.
    Universal,
    /// Must hold on at least one instance inside the hypothesis.
    Existential,
}

/// Extra data a witness needs beyond the product itself.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessParams {
    /// A family of index subsets, as label arrays.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_family: Option<Vec<Vec<String>>>,
    /// A second filter on the index set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other_index_filter: Option<IndexFilterFile>,
    /// A filter on the product, generated by sets of points.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product_filter: Option<ProductFilterFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductFilterFile {
    #[serde(default)]
    pub generators: Vec<Vec<Vec<String>>>,
    #[serde(default)]
    pub trivial: bool,
}

/// A replayable instance together with what was observed on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub part: String,
    pub detail: String,
    pub instance: InstanceFile,
    #[serde(default)]
    pub params: WitnessParams,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartReport {
    pub name: String,
    pub kind: PartKind,
    pub checked: u64,
    pub passed: bool,
    /// Existential part with no instance inside its hypothesis.
    pub vacuous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhibit: Option<Witness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropositionReport {
    pub prop_id: String,
    pub claim: String,
    pub unit: String,
    pub grid: InstanceGrid,
    /// Instances on which at least one part was evaluated.
    pub checked: u64,
    /// Instances outside every part's hypothesis.
    pub skipped: u64,
    pub passed: bool,
    /// The budget ran out before the grid was exhausted.
    pub incomplete: bool,
    pub parts: Vec<PartReport>,
    /// First witness of a failing part.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// First exhibit of a passing existential part.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhibit: Option<Witness>,
    pub degenerate_notes: Vec<String>,
    pub timing: Timing,
}

impl PropositionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// JSON without the timing field, stable across runs.
    pub fn to_stable_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("reports always serialize");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("timing");
        }
        serde_json::to_string_pretty(&v).expect("values always serialize")
    }

    pub fn summary_line(&self) -> String {
        let verdict = if self.incomplete {
            "INCOMPLETE"
        } else if self.passed {
            "PASS"
        } else {
            "FAIL"
        };
        format!(
            "{} {verdict}: checked {} {}, skipped {}",
            self.prop_id, self.checked, self.unit, self.skipped
        )
    }
}
