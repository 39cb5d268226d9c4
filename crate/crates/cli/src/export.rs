//! Flat CSV views of the report, one file per stage.

use std::path::Path;

use crate::error::{CliError, CliResult};
use crate::report::CohortReport;

fn cell(x: Option<&f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn write_csv(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> CliResult<()> {
    let io_err = |e: csv::Error| match e.into_kind() {
        csv::ErrorKind::Io(source) => CliError::io(path, source),
        other => CliError::Invalid(format!("{}: {other:?}", path.display())),
    };
    let mut w = csv::Writer::from_path(path).map_err(io_err)?;
    w.write_record(header).map_err(io_err)?;
    for row in rows {
        w.write_record(&row).map_err(io_err)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

pub fn write_all(report: &CohortReport, out: &Path) -> CliResult<()> {
    let chains = &report.chains;

    write_csv(
        &out.join("energy.csv"),
        &["chain_id", "step_index", "T", "V", "H"],
        chains.iter().flat_map(|c| {
            let e = &c.energy;
            (0..e.hamiltonian.len()).map(move |i| {
                vec![
                    c.id.clone(),
                    i.to_string(),
                    e.kinetic[i].to_string(),
                    e.potential[i].to_string(),
                    e.hamiltonian[i].to_string(),
                ]
            })
        }),
    )?;

    write_csv(
        &out.join("geometry.csv"),
        &["chain_id", "length", "smoothness", "step_index", "v", "theta", "kappa", "tau"],
        chains.iter().flat_map(|c| {
            let g = &c.geometry;
            (0..g.magnitudes.len()).map(move |i| {
                vec![
                    c.id.clone(),
                    g.length.to_string(),
                    g.smoothness.to_string(),
                    i.to_string(),
                    g.magnitudes[i].to_string(),
                    cell(g.angles.get(i)),
                    cell(g.curvatures.get(i)),
                    cell(g.torsions.as_ref().and_then(|t| t.get(i))),
                ]
            })
        }),
    )?;

    write_csv(
        &out.join("phase.csv"),
        &["chain_id", "step", "q0", "p0", "I", "theta"],
        chains.iter().flat_map(|c| {
            let p = &c.phase;
            (0..p.q0.len()).map(move |i| {
                vec![
                    c.id.clone(),
                    i.to_string(),
                    p.q0[i].to_string(),
                    p.p0[i].to_string(),
                    p.actions[i].to_string(),
                    p.angles[i].to_string(),
                ]
            })
        }),
    )?;

    write_csv(
        &out.join("conservation.csv"),
        &["chain_id", "hamiltonian_se", "angular_momentum_se", "energy_like_se"],
        chains.iter().map(|c| {
            let s = c.conservation.as_ref();
            vec![
                c.id.clone(),
                cell(s.map(|s| &s.hamiltonian_se)),
                cell(s.map(|s| &s.angular_momentum_se)),
                cell(s.map(|s| &s.energy_like_se)),
            ]
        }),
    )?;

    write_csv(
        &out.join("statmech.csv"),
        &["chain_id", "entropy", "free_energy", "temperature"],
        chains.iter().map(|c| {
            let s = &c.statmech;
            vec![c.id.clone(), s.entropy.to_string(), s.free_energy.to_string(), s.temperature.to_string()]
        }),
    )
}
