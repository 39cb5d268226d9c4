use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use hamtraj::{synth_dataset, write_dataset, Chain, Dataset, Label, SynthParams};
use hamtraj_cli::bench::{cmd_bench, size_ladder};
use hamtraj_cli::pipeline::{is_held_out, sha256_hex};
use hamtraj_cli::plot::{cmd_plot, PlotKind};
use hamtraj_cli::report::Outcome;
use hamtraj_cli::{cmd_analyze, CliError, Granularity, RunConfig};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hamtraj"))
}

fn cohort_file(dir: &Path, n: usize, dim: usize) -> PathBuf {
    let path = dir.join("cohort.jsonl");
    let ds = synth_dataset(SynthParams { n_valid: n, n_invalid: n, dim, steps: 5, seed: 9 }).unwrap();
    write_dataset(&ds, &path).unwrap();
    path
}

#[test]
fn analyze_writes_every_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let input = cohort_file(dir.path(), 12, 8);
    let out = dir.path().join("out");
    let report = cmd_analyze(&RunConfig { plot: true, ..RunConfig::new(&input, &out) }).unwrap();

    assert_eq!(report.chains.len(), 24);
    assert_eq!(report.provenance.input_sha256, sha256_hex(&fs::read(&input).unwrap()));
    for name in [
        "report.json",
        "pca_model.json",
        "energy.csv",
        "geometry.csv",
        "phase.csv",
        "conservation.csv",
        "statmech.csv",
        "energy-hist.svg",
        "phase-2d.svg",
        "pca-3d.svg",
        "conservation-hist.svg",
        "entropy-hist.svg",
    ] {
        assert!(out.join(name).is_file(), "{name} missing");
    }
    let energy = fs::read_to_string(out.join("energy.csv")).unwrap();
    assert!(energy.starts_with("chain_id,step_index,T,V,H\n"));
    assert_eq!(energy.lines().count(), 1 + 24 * 4);
    let statmech = fs::read_to_string(out.join("statmech.csv")).unwrap();
    assert_eq!(statmech.lines().count(), 1 + 24);
    let model = hamtraj::PcaModel::from_json(&fs::read_to_string(out.join("pca_model.json")).unwrap()).unwrap();
    assert_eq!(model.k(), 3);
    for c in &report.chains {
        assert_eq!(c.geometry.torsions.as_ref().unwrap().len(), c.n_steps - 3);
        assert!(c.conservation.is_some());
    }
}

#[test]
fn short_chains_flag_conservation_instead_of_dropping() {
    let dir = tempfile::tempdir().unwrap();
    let chains = (0..4)
        .map(|i| {
            let x = i as f64;
            let label = if i % 2 == 0 { Label::Valid } else { Label::Invalid };
            Chain::new(format!("c{i}"), vec![vec![x, 1.0, 0.5], vec![1.0, x, -x]], vec![1.0, 0.0, 0.0], label, None).unwrap()
        })
        .collect();
    let input = dir.path().join("short.jsonl");
    write_dataset(&Dataset::new(chains, "t").unwrap(), &input).unwrap();
    let report = cmd_analyze(&RunConfig { pca_k: 2, ..RunConfig::new(&input, dir.path().join("o")) }).unwrap();
    assert_eq!(report.chains.len(), 4);
    for c in &report.chains {
        assert!(c.conservation.is_none());
        assert!(c.conservation_note.is_some());
    }
    let csv = fs::read_to_string(dir.path().join("o/conservation.csv")).unwrap();
    assert!(csv.lines().nth(1).unwrap().ends_with(",,,"));
}

#[test]
fn unlabeled_input_skips_cohort_statistics() {
    let dir = tempfile::tempdir().unwrap();
    let ds = synth_dataset(SynthParams { n_valid: 6, n_invalid: 0, dim: 5, steps: 4, seed: 1 }).unwrap();
    let ds = ds.map_chains(|c| Ok(c.clone().with_label(Label::Unknown))).unwrap();
    let input = dir.path().join("u.jsonl");
    write_dataset(&ds, &input).unwrap();
    let report = cmd_analyze(&RunConfig::new(&input, dir.path().join("o"))).unwrap();
    assert_eq!(report.cohort.n_unlabeled, 6);
    assert!(matches!(report.cohort.energy, Outcome::Skipped(_)));
    assert!(matches!(report.cohort.classifier, Outcome::Skipped(_)));
}

#[test]
fn per_chain_granularity_changes_manova_sample_count() {
    let dir = tempfile::tempdir().unwrap();
    let input = cohort_file(dir.path(), 15, 6);
    let run = |g, name: &str| {
        let cfg = RunConfig { granularity: g, ..RunConfig::new(&input, dir.path().join(name)) };
        cmd_analyze(&cfg).unwrap().cohort.manova.ok().unwrap().n_samples
    };
    assert_eq!(run(Granularity::PerChain, "a"), 30);
    assert_eq!(run(Granularity::PerStep, "b"), 30 * 5);
}

#[test]
fn held_out_split_is_stable_and_near_one_fifth() {
    let held = (0..2000).filter(|i| is_held_out(3, &format!("chain-{i}"))).count();
    assert!((320..=480).contains(&held), "{held}");
    assert_eq!(is_held_out(3, "x"), is_held_out(3, "x"));
    let differs = (0..200).any(|i| is_held_out(1, &i.to_string()) != is_held_out(2, &i.to_string()));
    assert!(differs);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.jsonl");
    fs::write(&empty, "\n").unwrap();
    let out = bin().args(["analyze", "--input"]).arg(&empty).arg("--out").arg(dir.path().join("o")).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty cohort"));

    let out = bin().args(["analyze", "--input", "/nonexistent/in.jsonl", "--out"]).arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    let bad = dir.path().join("bad.jsonl");
    fs::write(&bad, "{\"id\": \"a\"}\n").unwrap();
    let out = bin().args(["analyze", "--input"]).arg(&bad).arg("--out").arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let input = cohort_file(dir.path(), 3, 4);
    for args in [["--pca-k", "4"], ["--temperature", "0"]] {
        let out = bin().args(["analyze", "--input"]).arg(&input).arg("--out").arg(dir.path()).args(args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    assert_eq!(bin().args(["bench", "--max-n", "4"]).output().unwrap().status.code(), Some(2));
}

#[test]
fn synth_command_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s/c.jsonl");
    let status = bin()
        .args(["synth", "--valid", "3", "--invalid", "2", "--dim", "4", "--steps", "5", "--seed", "8", "--out"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    let ds = hamtraj::load_dataset(&path).unwrap();
    assert_eq!(ds.group_sizes(), (3, 2));
    assert_eq!(ds.dimension(), Some(4));
}

#[test]
fn plots_are_well_formed_svg() {
    let dir = tempfile::tempdir().unwrap();
    let input = cohort_file(dir.path(), 10, 6);
    let out = dir.path().join("o");
    cmd_analyze(&RunConfig::new(&input, &out)).unwrap();
    let kinds: Vec<String> = PlotKind::ALL.iter().map(|k| k.name().to_string()).collect();
    let written = cmd_plot(&out.join("report.json"), &kinds, Some(&dir.path().join("figs"))).unwrap();
    assert_eq!(written.len(), 5);
    for path in &written {
        let text = fs::read_to_string(path).unwrap();
        let doc = roxmltree::Document::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(doc.root_element().tag_name().name(), "svg");
    }
    let phase = fs::read_to_string(dir.path().join("figs/phase-2d.svg")).unwrap();
    let doc = roxmltree::Document::parse(&phase).unwrap();
    let lines: Vec<_> = doc.descendants().filter(|n| n.has_tag_name("polyline")).collect();
    assert_eq!(lines.len(), 20);
    let green = lines.iter().filter(|n| n.attribute("stroke") == Some("#2ca02c")).count();
    let red = lines.iter().filter(|n| n.attribute("stroke") == Some("#d62728")).count();
    assert_eq!((green, red), (10, 10));
}

#[test]
fn plot_errors() {
    let dir = tempfile::tempdir().unwrap();
    let input = cohort_file(dir.path(), 4, 2);
    let out = dir.path().join("o");
    cmd_analyze(&RunConfig { pca_k: 2, ..RunConfig::new(&input, &out) }).unwrap();
    let report = out.join("report.json");

    let err = cmd_plot(&report, &["foo".into()], None).unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("foo") && msg.contains("energy-hist") && msg.contains("entropy-hist"), "{msg}");
    assert_eq!(err.exit_code(), 2);

    assert!(matches!(cmd_plot(&report, &["pca-3d".into()], None), Err(CliError::Invalid(_))));

    let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("chains");
    let stripped = dir.path().join("stripped.json");
    fs::write(&stripped, v.to_string()).unwrap();
    let err = cmd_plot(&stripped, &["energy-hist".into()], None).unwrap_err();
    assert!(matches!(err, CliError::Report { .. }) && err.to_string().contains("chains"), "{err}");
}

#[test]
fn bench_sizes_and_linear_stage() {
    assert_eq!(size_ladder(8), vec![8]);
    assert_eq!(size_ladder(100), vec![8, 16, 32, 64, 100]);
    let r = cmd_bench(256, 3).unwrap();
    assert_eq!(r.sizes.len(), r.seconds.len());
    assert!(r.sizes.windows(2).all(|w| w[0] < w[1]));
    assert!((0.6..1.4).contains(&r.exponent), "exponent {}", r.exponent);
}
