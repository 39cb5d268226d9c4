//! Seeded synthetic cohorts with a known valid/invalid separation.
//!
//! Valid chains walk a straight line from a random unit start to a random
//! unit reference, with small Gaussian jitter per component. Invalid chains
//! are isotropic random walks whose reference is drawn independently.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};

use super::{ChainDataset, EmbeddedChain, Label};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthParams {
    pub n_valid: usize,
    pub n_invalid: usize,
    pub dim: usize,
    pub steps: usize,
    pub seed: u64,
}

impl SynthParams {
    pub const VALID_NOISE: f64 = 0.05;
    pub const WALK_SCALE: f64 = 0.5;
}

pub fn synth_dataset(p: SynthParams) -> Result<ChainDataset<f64>> {
    if p.n_valid + p.n_invalid == 0 {
        return Err(Error::InvalidArgument("synthetic cohort must contain at least one chain".into()));
    }
    if p.dim < 2 {
        return Err(Error::InvalidArgument(format!("dimension {} < 2", p.dim)));
    }
    if p.steps < 3 {
        return Err(Error::InvalidArgument(format!("steps per chain {} < 3", p.steps)));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let jitter = Normal::new(0.0, SynthParams::VALID_NOISE).expect("valid normal");
    let walk = Normal::new(0.0, SynthParams::WALK_SCALE).expect("valid normal");
    let mut ds = ChainDataset::empty(format!(
        "synthetic: valid={} invalid={} dim={} steps={} seed={}",
        p.n_valid, p.n_invalid, p.dim, p.steps, p.seed
    ));

    let last = (p.steps - 1) as f64;
    for i in 0..p.n_valid {
        let start = unit_vector(&mut rng, p.dim);
        let reference = unit_vector(&mut rng, p.dim);
        let steps = (0..p.steps)
            .map(|j| {
                let t = j as f64 / last;
                start
                    .iter()
                    .zip(&reference)
                    .map(|(&s, &r)| (1.0 - t) * s + t * r + jitter.sample(&mut rng))
                    .collect()
            })
            .collect();
        ds.push(EmbeddedChain::new(format!("valid-{i:05}"), steps, reference, Label::Valid, None)?)?;
    }
    for i in 0..p.n_invalid {
        let mut pos = unit_vector(&mut rng, p.dim);
        let mut steps = Vec::with_capacity(p.steps);
        steps.push(pos.clone());
        for _ in 1..p.steps {
            for x in pos.iter_mut() {
                *x += walk.sample(&mut rng);
            }
            steps.push(pos.clone());
        }
        let reference = unit_vector(&mut rng, p.dim);
        ds.push(EmbeddedChain::new(format!("invalid-{i:05}"), steps, reference, Label::Invalid, None)?)?;
    }
    Ok(ds)
}

fn unit_vector<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(rng)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}
