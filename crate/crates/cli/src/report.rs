//! Serialized layout of `report.json`.

use hamtraj::canonical::ActionAngleCohortTest;
use hamtraj::energy::{CohortEnergyStats, GroupSummary};
use hamtraj::stats::ClassificationReport;
use hamtraj::{Label, ManovaResult, TTestResult};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

pub const REPORT_FILE: &str = "report.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohortReport {
    pub provenance: Provenance,
    /// Wall-clock seconds since the Unix epoch. The only field that differs between reruns.
    pub timestamp: u64,
    pub chains: Vec<ChainRecord>,
    pub cohort: CohortStatistics,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub input_sha256: String,
    pub n_chains: usize,
    pub dimension: usize,
    pub pca_explained_variance: Vec<f64>,
    pub pca_total_variance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainRecord {
    pub id: String,
    pub label: Label,
    pub n_steps: usize,
    pub energy: EnergySection,
    pub geometry: GeometrySection,
    pub phase: PhaseSection,
    pub conservation: Option<ConservationSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conservation_note: Option<String>,
    pub statmech: StatMechSection,
    /// Step coordinates in the leading (up to three) principal components.
    pub projection: Vec<Vec<f64>>,
    pub summary_features: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergySection {
    pub kinetic: Vec<f64>,
    pub potential: Vec<f64>,
    pub hamiltonian: Vec<f64>,
    pub mean_h: f64,
    pub conservation_score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometrySection {
    pub length: f64,
    pub smoothness: f64,
    pub magnitudes: Vec<f64>,
    pub angles: Vec<f64>,
    pub curvatures: Vec<f64>,
    /// Absent when the embedding has fewer than three dimensions.
    pub torsions: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseSection {
    pub q0: Vec<f64>,
    pub p0: Vec<f64>,
    pub actions: Vec<f64>,
    pub angles: Vec<f64>,
    pub mean_action: f64,
    pub angle_range: f64,
    pub normalized_mean_action: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConservationSection {
    pub hamiltonian_se: f64,
    pub angular_momentum_se: f64,
    pub energy_like_se: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatMechSection {
    pub entropy: f64,
    pub free_energy: f64,
    pub temperature: f64,
}

/// A cohort statistic that either ran or was skipped with a reason
/// (for example, an unlabeled input has no groups to compare).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", content = "result", rename_all = "lowercase")]
pub enum Outcome<T> {
    Ok(T),
    Skipped(String),
}

impl<T> Outcome<T> {
    pub fn from_result(r: hamtraj::Result<T>) -> Self {
        match r {
            Ok(v) => Outcome::Ok(v),
            Err(e) => Outcome::Skipped(e.to_string()),
        }
    }

    pub fn ok(&self) -> Option<&T> {
        match self {
            Outcome::Ok(v) => Some(v),
            Outcome::Skipped(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupComparison {
    pub valid: GroupSummary<f64>,
    pub invalid: GroupSummary<f64>,
    pub t_test: TTestResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifierSection {
    pub n_train: usize,
    pub n_test: usize,
    pub feature_names: Vec<String>,
    pub weights: Vec<f64>,
    pub iterations: usize,
    pub train_accuracy: f64,
    pub test_accuracy: f64,
    pub test_report: ClassificationReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManovaSection {
    pub granularity: crate::config::Granularity,
    pub n_samples: usize,
    pub result: ManovaResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohortStatistics {
    pub n_valid: usize,
    pub n_invalid: usize,
    pub n_unlabeled: usize,
    pub energy: Outcome<CohortEnergyStats<f64>>,
    pub smoothness: Outcome<GroupComparison>,
    pub length: Outcome<GroupComparison>,
    pub action_angle: Outcome<ActionAngleCohortTest<f64>>,
    pub pc1_cohens_d: Outcome<f64>,
    pub manova: Outcome<ManovaSection>,
    pub classifier: Outcome<ClassifierSection>,
    pub entropy: Outcome<GroupComparison>,
    pub free_energy: Outcome<GroupComparison>,
}
