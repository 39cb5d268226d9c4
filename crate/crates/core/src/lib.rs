//! Hamiltonian and differential-geometric analysis of reasoning chains.
//!
//! A reasoning chain arrives as a sequence of embedding vectors plus one
//! reference embedding. This crate treats it as a discrete trajectory and
//! computes energy profiles, curvature/torsion and Frenet frames, PCA phase
//! portraits with action-angle coordinates, conservation diagnostics,
//! entropy/free-energy summaries, and the cohort statistics that compare
//! valid against invalid chains.
//!
//! The numerical kernels are generic over [`Real`] (`f32` or `f64`); the
//! `f64` aliases below are what the loaders and the CLI use.

pub mod canonical;
pub mod chain;
pub mod curves;
pub mod energy;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod reduction;
pub mod scalar;
pub mod statmech;
pub mod stats;

pub use chain::{
    load_dataset, parse_dataset, pool_tokens, synth_dataset, write_dataset, write_dataset_to,
    ChainDataset, EmbeddedChain, Label, PoolingMode, SynthParams, TokenMatrix,
};
pub use error::{Error, Result};
pub use scalar::Real;

pub type Chain = EmbeddedChain<f64>;
pub type Dataset = ChainDataset<f64>;
pub type EnergyProfile = energy::EnergyProfile<f64>;
pub type GeometryProfile = geometry::GeometryProfile<f64>;
pub type FrenetFrame = geometry::FrenetFrame<f64>;
pub type PcaModel = reduction::PcaModel<f64>;
pub type ProjectedChain = reduction::ProjectedChain<f64>;
pub type PhaseTrajectory = canonical::PhaseTrajectory<f64>;
pub type ConservationReport = canonical::ConservationReport<f64>;
pub type StatMechSummary = statmech::StatMechSummary<f64>;
pub type TTestResult = stats::TTestResult<f64>;
pub type ManovaResult = stats::ManovaResult<f64>;
pub type Classifier = stats::Classifier<f64>;

pub type Chain32 = EmbeddedChain<f32>;
pub type Dataset32 = ChainDataset<f32>;
