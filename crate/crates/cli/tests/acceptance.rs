//! Acceptance checks, one PASS/FAIL line each. Runs without the libtest
//! harness so every line is printed even when the suite passes.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hamtraj::canonical::conservation_report;
use hamtraj::curves::{circle, helix, line};
use hamtraj::energy::energy_profile;
use hamtraj::geometry::{angle_rate_check, discrete_curvature, discrete_torsion, frenet_frames, smoothness};
use hamtraj::linalg::{dot, norm, sub};
use hamtraj::reduction::{fit_pca, fit_pca_points};
use hamtraj::stats::{complexity_fit, manova_two_group, welch_t_test, ClassificationReport};
use hamtraj::{synth_dataset, Chain, Dataset, Label, SynthParams};
use hamtraj_cli::{cmd_analyze, RunConfig};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond { Ok(()) } else { Err(msg()) }
}

fn within(limit: Duration, start: Instant) -> Check {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn synth(n_valid: usize, n_invalid: usize, dim: usize, steps: usize, seed: u64) -> Dataset {
    synth_dataset(SynthParams { n_valid, n_invalid, dim, steps, seed }).unwrap()
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.total_cmp(b));
    xs[xs.len() / 2]
}

fn energy_identity() -> Check {
    let start = Instant::now();
    let ds = synth(100, 100, 16, 6, 7);
    for c in ds.iter() {
        let p = energy_profile(c);
        for i in 0..p.hamiltonian.len() {
            ensure(p.hamiltonian[i] == p.kinetic[i] - p.potential[i], || format!("{} step {i}: H ≠ T - V", c.id()))?;
            ensure(p.kinetic[i] >= 0.0, || format!("{} step {i}: T < 0", c.id()))?;
            ensure((-1.0..=1.0).contains(&p.potential[i]), || format!("{} step {i}: V outside [-1, 1]", c.id()))?;
        }
    }
    within(Duration::from_secs(2), start)
}

fn analytic_curves() -> Check {
    let start = Instant::now();
    for r in [1.0f64, 2.0] {
        for k in discrete_curvature(&circle(r, 200, 0.0)) {
            ensure((k - 1.0 / r).abs() <= 0.01 / r, || format!("circle r={r}: κ={k}"))?;
        }
    }
    for t in discrete_torsion(&helix(1.0f64, 1.0, 400, 2.0)).unwrap() {
        ensure((t - 0.5).abs() <= 0.01, || format!("helix τ={t}"))?;
    }
    let planar: Vec<Vec<f64>> = (0..100)
        .map(|i| {
            let t = i as f64 * 0.1;
            vec![t, (3.0 * t).sin() + 0.2 * t * t, -1.5]
        })
        .collect();
    for t in discrete_torsion(&planar).unwrap() {
        ensure(t.abs() < 1e-9, || format!("planar τ={t}"))?;
    }
    let l = line(&[1.0f64, 2.0, 3.0], &[0.3, -0.2, 0.9], 30);
    ensure(discrete_curvature(&l).iter().all(|&k| k == 0.0), || "line has nonzero κ".into())?;
    ensure(smoothness(&l) == 1.0, || format!("line smoothness {}", smoothness(&l)))?;
    within(Duration::from_secs(1), start)
}

fn frenet_orthonormality() -> Check {
    let ff = frenet_frames(&helix(1.0f64, 1.0, 400, 2.0)).map_err(|e| e.to_string())?;
    ensure(ff.degenerate.is_empty() && !ff.frames.is_empty(), || "degenerate helix frames".into())?;
    let worst = ff.frames.iter().map(|(_, f)| f.orthonormality_residual()).fold(0.0, f64::max);
    ensure(worst < 1e-9, || format!("worst residual {worst:e}"))
}

fn turning_rate() -> Check {
    let gaps: Vec<f64> = angle_rate_check(&circle(1.0f64, 200, 0.0))
        .into_iter()
        .map(|(theta, kv)| (theta - kv).abs() / theta)
        .collect();
    let m = median(gaps);
    ensure(m < 0.05, || format!("median relative gap {m}"))
}

fn pca_suite() -> Check {
    let u = [0.6, -0.0, 0.8, 0.0];
    let rank1: Vec<Vec<f64>> = (0..25)
        .map(|i| {
            let t = (i as f64 * 0.7).sin() * 3.0 + i as f64 * 0.1;
            u.iter().zip([1.0, 2.0, 3.0, 4.0]).map(|(a, m)| m + t * a).collect()
        })
        .collect();
    let refs: Vec<&[f64]> = rank1.iter().map(Vec::as_slice).collect();
    let m = fit_pca_points(&refs, 1).map_err(|e| e.to_string())?;
    let alignment = dot(&m.components[0], &u).abs();
    ensure(alignment > 1.0 - 1e-9, || format!("rank-1 alignment {alignment}"))?;

    let ds = synth(20, 20, 6, 5, 11);
    let full = fit_pca(&ds, 6).map_err(|e| e.to_string())?;
    let points: Vec<&Vec<f64>> = ds.iter().flat_map(|c| c.steps()).collect();
    for (i, a) in points.iter().enumerate().step_by(7) {
        for b in points.iter().skip(i + 1).step_by(5) {
            let before = norm(&sub(a, b));
            let after = norm(&sub(&full.project(a), &full.project(b)));
            ensure((before - after).abs() < 1e-9, || format!("distance {before} became {after}"))?;
        }
    }
    ensure(full.explained_variance.windows(2).all(|w| w[0] >= w[1]), || "explained variance increases".into())?;
    ensure(fit_pca(&ds, 6).map_err(|e| e.to_string())? == full, || "refit differs".into())
}

fn conservation_oracles() -> Check {
    let orbit = Chain::new("orbit", circle(1.3, 60, 0.0), vec![0.0, 0.0, 1.0], Label::Valid, None).unwrap();
    let ds = Dataset::new(vec![orbit.clone()], "orbit").unwrap();
    let r = conservation_report(&fit_pca(&ds, 2).unwrap(), &orbit).map_err(|e| e.to_string())?;
    ensure(
        r.hamiltonian_se < 1e-10 && r.angular_momentum_se < 1e-10 && r.energy_like_se < 1e-10,
        || format!("orbit: {r:?}"),
    )?;
    let walk = synth(0, 1, 16, 6, 99);
    let r = conservation_report(&fit_pca(&walk, 2).unwrap(), &walk.chains()[0]).map_err(|e| e.to_string())?;
    ensure(
        r.hamiltonian_se > 1e-3 && r.angular_momentum_se > 1e-3 && r.energy_like_se > 1e-3,
        || format!("random walk: {r:?}"),
    )
}

fn directional_cohort() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let input = dir.path().join("cohort.jsonl");
    hamtraj::write_dataset(&synth(100, 100, 16, 6, 1), &input).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let cfg = RunConfig { seed: 1, ..RunConfig::new(&input, dir.path().join("out")) };
    let report = cmd_analyze(&cfg).map_err(|e| e.to_string())?;
    within(Duration::from_secs(10), start)?;

    let c = &report.cohort;
    let energy = c.energy.ok().ok_or("energy statistics skipped")?;
    ensure(
        energy.valid_mean_h.mean < energy.invalid_mean_h.mean && energy.t_test.p < 0.01,
        || format!("mean H {} vs {} (p={})", energy.valid_mean_h.mean, energy.invalid_mean_h.mean, energy.t_test.p),
    )?;
    let smooth = c.smoothness.ok().ok_or("smoothness comparison skipped")?;
    ensure(
        smooth.valid.mean > smooth.invalid.mean && smooth.t_test.p < 0.01,
        || format!("smoothness {} vs {} (p={})", smooth.valid.mean, smooth.invalid.mean, smooth.t_test.p),
    )?;
    let clf = c.classifier.ok().ok_or("classifier skipped")?;
    ensure(clf.test_accuracy >= 0.9, || format!("held-out accuracy {}", clf.test_accuracy))
}

fn statistics_oracles() -> Check {
    let t = welch_t_test(&[1.0f64, 2.0, 3.0, 4.0, 5.0], &[2.0, 3.0, 4.0, 5.0, 6.0]).map_err(|e| e.to_string())?;
    ensure((t.t + 1.0).abs() < 1e-12 && (t.df - 8.0).abs() < 1e-9, || format!("t={} df={}", t.t, t.df))?;
    ensure((t.p - 0.3466).abs() < 1e-4, || format!("p={}", t.p))?;

    let r = ClassificationReport::from_confusion([[148, 31], [14, 7]]).map_err(|e| e.to_string())?;
    ensure((r.accuracy - 0.775).abs() < 1e-12, || format!("accuracy {}", r.accuracy))?;
    ensure((r.classes[0].precision - 0.9136).abs() < 5e-4, || format!("precision {}", r.classes[0].precision))?;

    let feats: Vec<Vec<f64>> = (0..60)
        .map(|i| {
            let x = i as f64;
            vec![(x * 0.37).sin(), (x * 1.3).cos() + 0.1 * x, (x * 0.11).sin() * (x * 0.7).cos()]
        })
        .collect();
    let labels: Vec<bool> = (0..60).map(|i| i % 3 == 0).collect();
    let a = [[1.5, -0.3, 0.2], [0.4, 2.0, -1.1], [-0.7, 0.5, 0.9]];
    let mapped: Vec<Vec<f64>> = feats
        .iter()
        .map(|f| a.iter().map(|row| dot(row, f)).collect())
        .collect();
    let l0 = manova_two_group(&feats, &labels).map_err(|e| e.to_string())?.wilks_lambda;
    let l1 = manova_two_group(&mapped, &labels).map_err(|e| e.to_string())?.wilks_lambda;
    ensure((l0 - l1).abs() < 1e-8, || format!("Λ {l0} vs {l1}"))
}

fn complexity_harness() -> Check {
    let sizes: Vec<f64> = (0..10).map(|i| 16.0 * 2f64.powi(i)).collect();
    let times: Vec<f64> = sizes
        .iter()
        .enumerate()
        .map(|(i, n)| 3e-6 * n.powf(0.43) * (1.0 + 0.02 * (i as f64 * 2.3).sin()))
        .collect();
    let b = complexity_fit(&sizes, &times).map_err(|e| e.to_string())?;
    ensure((b - 0.43).abs() <= 0.02, || format!("exponent {b}"))
}

fn determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let input = dir.path().join("cohort.jsonl");
    hamtraj::write_dataset(&synth(30, 30, 8, 5, 3), &input).map_err(|e| e.to_string())?;
    let run = |name: &str| -> Result<serde_json::Value, String> {
        let cfg = RunConfig { seed: 5, ..RunConfig::new(&input, dir.path().join(name)) };
        cmd_analyze(&cfg).map_err(|e| e.to_string())?;
        let text = std::fs::read_to_string(dir.path().join(name).join("report.json")).map_err(|e| e.to_string())?;
        let mut v: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        v.as_object_mut().ok_or("report is not an object")?.remove("timestamp");
        Ok(v)
    };
    let (a, b) = (run("a")?, run("b")?);
    ensure(a == b, || "reports differ".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("energy identity suite", energy_identity),
        ("analytic-curve geometry suite", analytic_curves),
        ("Frenet orthonormality", frenet_orthonormality),
        ("turning rate matches curvature times speed", turning_rate),
        ("PCA suite", pca_suite),
        ("conservation oracles", conservation_oracles),
        ("directional cohort reproduction", directional_cohort),
        ("statistics oracles", statistics_oracles),
        ("complexity harness", complexity_harness),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match outcome {
            Ok(()) => println!("PASS  {name} ({ms:.0} ms)"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name} ({ms:.0} ms): {why}");
            }
        }
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
