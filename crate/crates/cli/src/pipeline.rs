use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use hamtraj::canonical::{action_angle_cohort_from, conservation_report, phase_trajectory};
use hamtraj::energy::{cohort_energy_stats_from, energy_profile, GroupSummary};
use hamtraj::geometry::geometry_profile;
use hamtraj::reduction::{chain_summary_features, fit_pca};
use hamtraj::statmech::statmech_summary;
use hamtraj::stats::{
    classification_report, cohens_d, fit_logistic, manova_two_group, welch_t_test, LogisticConfig,
};
use hamtraj::{parse_dataset, Chain, Dataset, Label, PcaModel};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::config::{Granularity, RunConfig};
use crate::error::{CliError, CliResult};
use crate::export;
use crate::report::*;

/// The two PCA fits every chain is analyzed against: `full` keeps up to
/// three components for torsion and 3-D plots, `reduced` keeps `pca_k`.
pub struct Models {
    pub full: PcaModel,
    pub reduced: PcaModel,
}

pub fn fit_models(ds: &Dataset, pca_k: usize) -> CliResult<Models> {
    let d = ds.dimension().ok_or_else(|| CliError::stage("load", hamtraj::Error::EmptyCohort))?;
    if pca_k > d {
        return Err(CliError::Invalid(format!(
            "--pca-k {pca_k} exceeds the embedding dimension {d}"
        )));
    }
    let full = fit_pca(ds, d.min(3)).map_err(|e| CliError::stage("pca", e))?;
    let reduced = full.truncate(pca_k).map_err(|e| CliError::stage("pca", e))?;
    Ok(Models { full, reduced })
}

pub fn analyze_chain(chain: &Chain, models: &Models, temperature: f64) -> CliResult<ChainRecord> {
    let id = chain.id();
    let energy = energy_profile(chain);

    let projection = models
        .full
        .project_chain(chain)
        .map_err(|e| CliError::chain("pca", id, e))?
        .steps;
    let has_3d = models.full.k() == 3;
    let geometry = geometry_profile(id, chain.steps(), has_3d.then_some(projection.as_slice()))
        .map_err(|e| CliError::chain("geometry", id, e))?;

    let phase = phase_trajectory(&models.reduced, chain, models.reduced.k())
        .map_err(|e| CliError::chain("phase", id, e))?;
    let (conservation, conservation_note) = if chain.len() >= 3 {
        let c = conservation_report(&models.reduced, chain)
            .map_err(|e| CliError::chain("conservation", id, e))?;
        let section = ConservationSection {
            hamiltonian_se: c.hamiltonian_se,
            angular_momentum_se: c.angular_momentum_se,
            energy_like_se: c.energy_like_se,
        };
        (Some(section), None)
    } else {
        (None, Some(format!("needs at least 3 steps, has {}", chain.len())))
    };
    let sm = statmech_summary(chain, temperature).map_err(|e| CliError::chain("statmech", id, e))?;
    let summary_features = chain_summary_features(&models.reduced, chain)
        .map_err(|e| CliError::chain("features", id, e))?;

    Ok(ChainRecord {
        id: id.to_string(),
        label: chain.label(),
        n_steps: chain.len(),
        energy: EnergySection {
            kinetic: energy.kinetic,
            potential: energy.potential,
            hamiltonian: energy.hamiltonian,
            mean_h: energy.mean_h,
            conservation_score: energy.conservation_score,
        },
        geometry: GeometrySection {
            length: geometry.length,
            smoothness: geometry.smoothness,
            magnitudes: geometry.magnitudes,
            angles: geometry.angles,
            curvatures: geometry.curvatures,
            torsions: (has_3d || chain.dimension() == 3).then_some(geometry.torsions),
        },
        phase: PhaseSection {
            q0: phase.points.iter().map(|(q, _)| q[0]).collect(),
            p0: phase.points.iter().map(|(_, p)| p[0]).collect(),
            actions: phase.actions,
            angles: phase.angles,
            mean_action: phase.mean_action,
            angle_range: phase.angle_range,
            normalized_mean_action: phase.normalized_mean_action,
        },
        conservation,
        conservation_note,
        statmech: StatMechSection {
            entropy: sm.entropy,
            free_energy: sm.free_energy,
            temperature: sm.temperature,
        },
        projection,
        summary_features,
    })
}

/// True when the chain belongs to the held-out fifth. The split depends only
/// on the seed and the chain id, so it is stable under reordering.
pub fn is_held_out(seed: u64, id: &str) -> bool {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(id.as_bytes());
    let digest = h.finalize();
    let mut head = [0u8; 8];
    head.copy_from_slice(&digest[..8]);
    u64::from_be_bytes(head) % 5 == 0
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn split_by_label(records: &[ChainRecord], f: impl Fn(&ChainRecord) -> f64) -> (Vec<f64>, Vec<f64>) {
    let mut valid = Vec::new();
    let mut invalid = Vec::new();
    for r in records {
        match r.label {
            Label::Valid => valid.push(f(r)),
            Label::Invalid => invalid.push(f(r)),
            Label::Unknown => {}
        }
    }
    (valid, invalid)
}

fn compare(records: &[ChainRecord], f: impl Fn(&ChainRecord) -> f64) -> Outcome<GroupComparison> {
    let (valid, invalid) = split_by_label(records, f);
    Outcome::from_result(welch_t_test(&valid, &invalid).map(|t_test| GroupComparison {
        valid: GroupSummary::of(&valid),
        invalid: GroupSummary::of(&invalid),
        t_test,
    }))
}

fn manova(records: &[ChainRecord], k: usize, granularity: Granularity) -> hamtraj::Result<ManovaSection> {
    let mut features = Vec::new();
    let mut labels = Vec::new();
    for r in records {
        let Some(is_valid) = r.label.indicator() else { continue };
        match granularity {
            Granularity::PerStep => {
                for s in &r.projection {
                    features.push(s[..k].to_vec());
                    labels.push(is_valid == 1);
                }
            }
            Granularity::PerChain => {
                features.push(r.summary_features[..k].to_vec());
                labels.push(is_valid == 1);
            }
        }
    }
    let result = manova_two_group(&features, &labels)?;
    Ok(ManovaSection { granularity, n_samples: features.len(), result })
}

fn classifier(records: &[ChainRecord], k: usize, seed: u64) -> hamtraj::Result<ClassifierSection> {
    let mut train = (Vec::new(), Vec::new());
    let mut test = (Vec::new(), Vec::new());
    for r in records {
        let Some(is_valid) = r.label.indicator() else { continue };
        let bucket = if is_held_out(seed, &r.id) { &mut test } else { &mut train };
        bucket.0.push(r.summary_features.clone());
        bucket.1.push(is_valid == 1);
    }
    if test.0.is_empty() {
        return Err(hamtraj::Error::Degenerate("held-out split is empty".into()));
    }
    let model = fit_logistic(&train.0, &train.1, &LogisticConfig::default())?;
    let accuracy = |xs: &[Vec<f64>], ys: &[bool]| {
        let hits = xs.iter().zip(ys).filter(|(x, y)| model.predict(x) == **y).count();
        hits as f64 / xs.len() as f64
    };
    let predictions: Vec<bool> = test.0.iter().map(|x| model.predict(x)).collect();
    let test_report = classification_report(&predictions, &test.1)?;
    let mut feature_names: Vec<String> = (1..=k).map(|j| format!("mean_pc{j}")).collect();
    feature_names.extend(["length".to_string(), "smoothness".to_string()]);
    Ok(ClassifierSection {
        n_train: train.0.len(),
        n_test: test.0.len(),
        feature_names,
        weights: model.weights.clone(),
        iterations: model.iterations,
        train_accuracy: accuracy(&train.0, &train.1),
        test_accuracy: test_report.accuracy,
        test_report,
    })
}

pub fn cohort_statistics(records: &[ChainRecord], cfg: &RunConfig) -> CohortStatistics {
    let count = |l: Label| records.iter().filter(|r| r.label == l).count();
    let energy_profiles: Vec<(Label, hamtraj::EnergyProfile)> = records
        .iter()
        .map(|r| {
            let profile = hamtraj::EnergyProfile {
                chain_id: r.id.clone(),
                momenta: Vec::new(),
                kinetic: r.energy.kinetic.clone(),
                potential: r.energy.potential.clone(),
                hamiltonian: r.energy.hamiltonian.clone(),
                mean_h: r.energy.mean_h,
                conservation_score: r.energy.conservation_score,
            };
            (r.label, profile)
        })
        .collect();
    let trajectories: Vec<(Label, hamtraj::PhaseTrajectory)> = records
        .iter()
        .map(|r| {
            let t = hamtraj::PhaseTrajectory {
                chain_id: r.id.clone(),
                points: Vec::new(),
                actions: r.phase.actions.clone(),
                angles: r.phase.angles.clone(),
                mean_action: r.phase.mean_action,
                angle_range: r.phase.angle_range,
                normalized_mean_action: r.phase.normalized_mean_action,
            };
            (r.label, t)
        })
        .collect();
    let (pc1_valid, pc1_invalid) = split_by_label(records, |r| r.summary_features[0]);

    CohortStatistics {
        n_valid: count(Label::Valid),
        n_invalid: count(Label::Invalid),
        n_unlabeled: count(Label::Unknown),
        energy: Outcome::from_result(cohort_energy_stats_from(&energy_profiles)),
        smoothness: compare(records, |r| r.geometry.smoothness),
        length: compare(records, |r| r.geometry.length),
        action_angle: Outcome::from_result(action_angle_cohort_from(&trajectories)),
        pc1_cohens_d: Outcome::from_result(cohens_d(&pc1_valid, &pc1_invalid)),
        manova: Outcome::from_result(manova(records, cfg.pca_k, cfg.granularity)),
        classifier: Outcome::from_result(classifier(records, cfg.pca_k, cfg.seed)),
        entropy: compare(records, |r| r.statmech.entropy),
        free_energy: compare(records, |r| r.statmech.free_energy),
    }
}

/// Runs every stage on an in-memory dataset. `input_sha256` is copied into
/// the provenance block verbatim.
pub fn analyze_dataset(ds: &Dataset, cfg: &RunConfig, input_sha256: String) -> CliResult<(CohortReport, PcaModel)> {
    cfg.validate()?;
    if ds.is_empty() {
        return Err(CliError::stage("load", hamtraj::Error::EmptyCohort));
    }
    let models = fit_models(ds, cfg.pca_k)?;
    let chains: Vec<ChainRecord> = ds
        .chains()
        .par_iter()
        .map(|c| analyze_chain(c, &models, cfg.temperature))
        .collect::<CliResult<_>>()?;
    let cohort = cohort_statistics(&chains, cfg);
    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let report = CohortReport {
        provenance: Provenance {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config: cfg.clone(),
            input_sha256,
            n_chains: chains.len(),
            dimension: models.full.dimension(),
            pca_explained_variance: models.full.explained_variance.clone(),
            pca_total_variance: models.full.total_variance,
        },
        timestamp,
        chains,
        cohort,
    };
    Ok((report, models.reduced))
}

/// `analyze`: read the input, run the pipeline, and write the report, the
/// CSV exports and the fitted PCA model into `cfg.out`.
pub fn cmd_analyze(cfg: &RunConfig) -> CliResult<CohortReport> {
    cfg.validate()?;
    let bytes = fs::read(&cfg.input).map_err(|e| CliError::io(&cfg.input, e))?;
    let ds = parse_dataset(bytes.as_slice(), &cfg.input).map_err(|e| CliError::stage("load", e))?;
    let (report, model) = analyze_dataset(&ds, cfg, sha256_hex(&bytes))?;

    let out = &cfg.out;
    fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    write_text(&out.join(REPORT_FILE), &serde_json::to_string_pretty(&report).expect("report serializes"))?;
    write_text(&out.join("pca_model.json"), &model.to_json())?;
    export::write_all(&report, out)?;
    if cfg.plot {
        crate::plot::render_all(&report, out)?;
    }
    Ok(report)
}

pub(crate) fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}
