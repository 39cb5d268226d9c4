//! Library results against independent straight-line recomputations.

use hamtraj::canonical::{action_angle_cohort_test, conservation_report, phase_trajectory};
use hamtraj::curves::{circle, line};
use hamtraj::energy::energy_profile;
use hamtraj::reduction::{chain_summary_features, fit_pca, fit_pca_points};
use hamtraj::statmech::statmech_summary;
use hamtraj::{synth_dataset, Chain, Dataset, Label, SynthParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

fn synth(n_valid: usize, n_invalid: usize, dim: usize, steps: usize, seed: u64) -> Dataset {
    synth_dataset(SynthParams { n_valid, n_invalid, dim, steps, seed }).unwrap()
}

/// H_i = ½ Σ_j (q_{i+1,j} - q_{i,j})² + (q_i · r) / (|q_i| |r|), written out by hand.
fn hand_hamiltonian(c: &Chain) -> Vec<f64> {
    let s = c.steps();
    let r = c.reference();
    let rn = r.iter().map(|x| x * x).sum::<f64>().sqrt();
    (0..s.len() - 1)
        .map(|i| {
            let mut t = 0.0;
            let mut qr = 0.0;
            let mut qq = 0.0;
            for j in 0..r.len() {
                let dp = s[i + 1][j] - s[i][j];
                t += dp * dp;
                qr += s[i][j] * r[j];
                qq += s[i][j] * s[i][j];
            }
            0.5 * t + qr / (qq.sqrt() * rn)
        })
        .collect()
}

#[test]
fn energy_matches_hand_computation() {
    let ds = synth(3, 3, 8, 4, 7);
    for c in ds.iter() {
        let prof = energy_profile(c);
        let want = hand_hamiltonian(c);
        assert_eq!(prof.hamiltonian.len(), 3);
        for (h, w) in prof.hamiltonian.iter().zip(&want) {
            assert!((h - w).abs() < 1e-12);
        }
    }
}

#[test]
fn free_energy_matches_hand_computation() {
    let ds = synth(2, 2, 8, 4, 7);
    for c in ds.iter() {
        let s = c.steps();
        let r = c.reference();
        let rn = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        let mut energies = Vec::new();
        let mut mags = Vec::new();
        for i in 0..s.len() - 1 {
            let d2: f64 = (0..r.len()).map(|j| (s[i + 1][j] - s[i][j]).powi(2)).sum();
            let qn = s[i].iter().map(|x| x * x).sum::<f64>().sqrt();
            let cos: f64 = (0..r.len()).map(|j| s[i][j] * r[j]).sum::<f64>() / (qn * rn);
            energies.push(0.5 * d2 + cos.abs());
            mags.push(d2.sqrt());
        }
        let total: f64 = mags.iter().sum();
        let entropy: f64 = mags.iter().map(|m| -(m / total) * (m / total).ln()).sum();
        let mean_e = energies.iter().sum::<f64>() / energies.len() as f64;
        for tau in [0.5, 1.0, 2.0] {
            let sm = statmech_summary(c, tau).unwrap();
            assert!((sm.entropy - entropy).abs() < 1e-12);
            assert!((sm.free_energy - (mean_e - tau * entropy)).abs() < 1e-12);
        }
    }
}

#[test]
fn summary_features_match_hand_computation() {
    let ds = synth(5, 5, 6, 5, 3);
    let model = fit_pca(&ds, 3).unwrap();
    for c in ds.iter() {
        let f = chain_summary_features(&model, c).unwrap();
        let s = c.steps();
        let m = s.len() as f64;
        for (j, comp) in model.components.iter().enumerate() {
            let mean_coord: f64 = s
                .iter()
                .map(|x| x.iter().zip(&model.mean).zip(comp).map(|((a, b), w)| (a - b) * w).sum::<f64>())
                .sum::<f64>()
                / m;
            assert!((f[j] - mean_coord).abs() < 1e-12);
        }
        let p: Vec<Vec<f64>> = s.windows(2).map(|w| w[1].iter().zip(&w[0]).map(|(a, b)| a - b).collect()).collect();
        let len: f64 = p.iter().map(|v| v.iter().map(|x| x * x).sum::<f64>().sqrt()).sum();
        let cosines: Vec<f64> = p
            .windows(2)
            .map(|w| {
                let d: f64 = w[0].iter().zip(&w[1]).map(|(a, b)| a * b).sum();
                let n0 = w[0].iter().map(|x| x * x).sum::<f64>().sqrt();
                let n1 = w[1].iter().map(|x| x * x).sum::<f64>().sqrt();
                d / (n0 * n1)
            })
            .collect();
        let smooth = (1.0 + cosines.iter().sum::<f64>() / cosines.len() as f64) / 2.0;
        assert_eq!(f.len(), 5);
        assert!((f[3] - len).abs() < 1e-12);
        assert!((f[4] - smooth).abs() < 1e-12);
    }
}

#[test]
fn isotropic_gaussian_has_balanced_variances() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let pts: Vec<Vec<f64>> = (0..10_000)
        .map(|_| (0..2).map(|_| StandardNormal.sample(&mut rng)).collect())
        .collect();
    let refs: Vec<&[f64]> = pts.iter().map(Vec::as_slice).collect();
    let m = fit_pca_points(&refs, 2).unwrap();
    let (a, b) = (m.explained_variance[0], m.explained_variance[1]);
    assert!((a - b).abs() / a < 0.05, "{a} vs {b}");
}

fn single_chain_dataset(steps: Vec<Vec<f64>>, reference: Vec<f64>) -> (Dataset, Chain) {
    let c = Chain::new("orbit", steps, reference, Label::Valid, None).unwrap();
    (Dataset::new(vec![c.clone()], "orbit").unwrap(), c)
}

#[test]
fn circular_orbit_conserves_everything() {
    // reference ⟂ orbit plane keeps V = 0, so H is constant as well
    let (ds, c) = single_chain_dataset(circle(1.3, 60, 0.0), vec![0.0, 0.0, 1.0]);
    let model = fit_pca(&ds, 2).unwrap();
    let r = conservation_report(&model, &c).unwrap();
    assert!(r.hamiltonian_se < 1e-10, "{r:?}");
    assert!(r.angular_momentum_se < 1e-10, "{r:?}");
    assert!(r.energy_like_se < 1e-10, "{r:?}");
}

#[test]
fn radial_line_has_no_angular_momentum() {
    // a line through the origin plus a symmetric off-axis pair: the pooled
    // mean is the origin and the line projects onto the first axis
    let u = [1.0, 2.0, -0.5];
    let w = [2.0, -1.0, 0.0];
    let radial = Chain::new("radial", line(&[-4.0, -8.0, 2.0], &u, 9), vec![1.0, 0.0, 0.0], Label::Valid, None).unwrap();
    let pair = Chain::new("pair", vec![w.to_vec(), w.iter().map(|x| -x).collect()], vec![1.0, 0.0, 0.0], Label::Valid, None).unwrap();
    let ds = Dataset::new(vec![radial.clone(), pair], "radial").unwrap();
    let model = fit_pca(&ds, 2).unwrap();
    let pt = phase_trajectory(&model, &radial, 2).unwrap();
    for (q, p) in &pt.points {
        assert!((q[0] * p[1] - q[1] * p[0]).abs() < 1e-10);
    }
    assert!(conservation_report(&model, &radial).unwrap().angular_momentum_se < 1e-10);
}

#[test]
fn random_walk_conserves_nothing() {
    let ds = synth(0, 1, 16, 6, 99);
    let model = fit_pca(&ds, 2).unwrap();
    let r = conservation_report(&model, &ds.chains()[0]).unwrap();
    assert!(r.hamiltonian_se > 1e-3, "{r:?}");
    assert!(r.angular_momentum_se > 1e-3, "{r:?}");
    assert!(r.energy_like_se > 1e-3, "{r:?}");
    assert_eq!(r, conservation_report(&model, &ds.chains()[0]).unwrap());
}

#[test]
fn phase_momenta_commute_with_projection() {
    let ds = synth(2, 2, 8, 5, 4);
    let model = fit_pca(&ds, 3).unwrap();
    for c in ds.iter() {
        let pt = phase_trajectory(&model, c, 3).unwrap();
        for (i, (_, p)) in pt.points.iter().enumerate() {
            let native: Vec<f64> = c.steps()[i + 1].iter().zip(&c.steps()[i]).map(|(a, b)| a - b).collect();
            for (j, comp) in model.components.iter().enumerate() {
                let proj: f64 = native.iter().zip(comp).map(|(a, b)| a * b).sum();
                assert!((p[j] - proj).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn action_angle_cohort_contracts() {
    let ds = synth(100, 100, 16, 6, 1);
    let model = fit_pca(&ds, 2).unwrap();
    let r = action_angle_cohort_test(&ds, &model).unwrap();
    assert!(r.action_t.t.is_finite() && (0.0..=1.0).contains(&r.action_t.p));
    assert!(r.angle_t.t.is_finite() && (0.0..=1.0).contains(&r.angle_t.p));

    // doubling every embedding: actions scale by 4, angles are untouched
    let doubled = ds.map_chains(|c| c.map_vectors(|v| v.iter().map(|x| 2.0 * x).collect())).unwrap();
    let model2 = fit_pca(&doubled, 2).unwrap();
    let r2 = action_angle_cohort_test(&doubled, &model2).unwrap();
    assert!((r2.valid_mean_action / r.valid_mean_action - 4.0).abs() < 1e-9);
    assert!((r2.invalid_mean_action / r.invalid_mean_action - 4.0).abs() < 1e-9);
    assert!((r2.angle_t.t - r.angle_t.t).abs() < 1e-9);
    assert!((r2.action_t.t - r.action_t.t).abs() < 1e-9);
}

#[test]
fn action_angle_identical_groups() {
    let base = synth(4, 0, 6, 5, 8);
    let chains: Vec<Chain> = base
        .iter()
        .flat_map(|c| {
            let twin = Chain::new(format!("{}-twin", c.id()), c.steps().to_vec(), c.reference().to_vec(), Label::Invalid, None).unwrap();
            [c.clone(), twin]
        })
        .collect();
    let ds = Dataset::new(chains, "twins").unwrap();
    let model = fit_pca(&ds, 2).unwrap();
    let r = action_angle_cohort_test(&ds, &model).unwrap();
    assert_eq!(r.action_t.t, 0.0);
    assert_eq!(r.angle_t.t, 0.0);
}
