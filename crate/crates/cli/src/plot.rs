//! Self-contained SVG figures rendered from a saved report.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use hamtraj::Label;

use crate::error::{CliError, CliResult};
use crate::report::{ChainRecord, CohortReport};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 440.0;
const MARGIN: f64 = 56.0;
const BINS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    EnergyHist,
    Phase2d,
    Pca3d,
    ConservationHist,
    EntropyHist,
}

impl PlotKind {
    pub const ALL: [PlotKind; 5] = [
        PlotKind::EnergyHist,
        PlotKind::Phase2d,
        PlotKind::Pca3d,
        PlotKind::ConservationHist,
        PlotKind::EntropyHist,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PlotKind::EnergyHist => "energy-hist",
            PlotKind::Phase2d => "phase-2d",
            PlotKind::Pca3d => "pca-3d",
            PlotKind::ConservationHist => "conservation-hist",
            PlotKind::EntropyHist => "entropy-hist",
        }
    }

    pub fn file_name(self) -> String {
        format!("{}.svg", self.name())
    }
}

impl FromStr for PlotKind {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Self::ALL.iter().map(|k| k.name()).collect();
            CliError::Invalid(format!("unknown plot kind {s:?}; valid kinds: {}", names.join(", ")))
        })
    }
}

fn color(label: Label) -> &'static str {
    match label {
        Label::Valid => "#2ca02c",
        Label::Invalid => "#d62728",
        Label::Unknown => "#7f7f7f",
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Maps data coordinates onto the plotting area, y pointing up.
struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn fit(xs: impl Iterator<Item = f64> + Clone, ys: impl Iterator<Item = f64> + Clone) -> Self {
        let (x0, x1) = bounds(xs);
        let (y0, y1) = bounds(ys);
        Frame { x0, x1, y0, y1 }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        let pad = lo.abs().max(1.0) * 0.5;
        return (lo - pad, hi + pad);
    }
    let pad = 0.04 * (hi - lo);
    (lo - pad, hi + pad)
}

struct Svg {
    body: String,
}

impl Svg {
    fn new(title: &str) -> Self {
        let mut body = String::new();
        let _ = write!(
            body,
            r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">
<rect width="100%" height="100%" fill="white"/>
<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>
"#,
            WIDTH / 2.0,
            escape(title)
        );
        Svg { body }
    }

    fn axes(&mut self, f: &Frame, x_label: &str, y_label: &str) {
        let (left, right) = (MARGIN, WIDTH - MARGIN);
        let (top, bottom) = (MARGIN, HEIGHT - MARGIN);
        let _ = writeln!(
            self.body,
            r#"<rect x="{left}" y="{top}" width="{}" height="{}" fill="none" stroke="black"/>"#,
            right - left,
            bottom - top
        );
        let _ = writeln!(self.body, r#"<text x="{left}" y="{}" text-anchor="start">{:.3}</text>"#, bottom + 16.0, f.x0);
        let _ = writeln!(self.body, r#"<text x="{right}" y="{}" text-anchor="end">{:.3}</text>"#, bottom + 16.0, f.x1);
        let _ = writeln!(self.body, r#"<text x="{}" y="{bottom}" text-anchor="end">{:.3}</text>"#, left - 4.0, f.y0);
        let _ = writeln!(self.body, r#"<text x="{}" y="{}" text-anchor="end">{:.3}</text>"#, left - 4.0, top + 10.0, f.y1);
        let _ = writeln!(
            self.body,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            WIDTH / 2.0,
            HEIGHT - 14.0,
            escape(x_label)
        );
        let _ = writeln!(
            self.body,
            r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#,
            HEIGHT / 2.0,
            HEIGHT / 2.0,
            escape(y_label)
        );
    }

    fn legend(&mut self, labels: &[Label]) {
        let mut y = MARGIN + 8.0;
        for label in [Label::Valid, Label::Invalid, Label::Unknown] {
            if !labels.contains(&label) {
                continue;
            }
            let x = WIDTH - MARGIN - 90.0;
            let _ = writeln!(
                self.body,
                r#"<rect x="{x}" y="{y}" width="12" height="12" fill="{}"/><text x="{}" y="{}">{}</text>"#,
                color(label),
                x + 18.0,
                y + 10.0,
                label.as_str()
            );
            y += 18.0;
        }
    }

    fn polyline(&mut self, points: &[(f64, f64)], label: Label, id: &str) {
        let coords: Vec<String> = points.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            self.body,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-opacity="0.6" stroke-width="1.2"><title>{}</title></polyline>"#,
            coords.join(" "),
            color(label),
            escape(id)
        );
    }

    fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

fn labels_present(chains: &[ChainRecord]) -> Vec<Label> {
    let mut out: Vec<Label> = Vec::new();
    for c in chains {
        if !out.contains(&c.label) {
            out.push(c.label);
        }
    }
    out
}

fn histogram(title: &str, x_label: &str, chains: &[ChainRecord], value: impl Fn(&ChainRecord) -> f64) -> String {
    let values: Vec<(Label, f64)> = chains
        .iter()
        .map(|c| (c.label, value(c)))
        .filter(|(_, v)| v.is_finite())
        .collect();
    let (lo, hi) = bounds(values.iter().map(|(_, v)| *v));
    let width = (hi - lo) / BINS as f64;
    let groups = labels_present(chains);
    let counts: Vec<Vec<usize>> = groups
        .iter()
        .map(|&g| {
            let mut bins = vec![0usize; BINS];
            for (_, v) in values.iter().filter(|(l, _)| *l == g) {
                bins[(((v - lo) / width) as usize).min(BINS - 1)] += 1;
            }
            bins
        })
        .collect();
    let peak = counts.iter().flatten().copied().max().unwrap_or(0).max(1);

    let frame = Frame { x0: lo, x1: hi, y0: 0.0, y1: peak as f64 * 1.05 };
    let mut svg = Svg::new(title);
    for (g, bins) in groups.iter().zip(&counts) {
        for (i, &n) in bins.iter().enumerate().filter(|(_, n)| **n > 0) {
            let x = frame.px(lo + i as f64 * width);
            let y = frame.py(n as f64);
            let _ = writeln!(
                svg.body,
                r#"<rect x="{x:.2}" y="{y:.2}" width="{:.2}" height="{:.2}" fill="{}" fill-opacity="0.55"/>"#,
                frame.px(lo + width) - frame.px(lo),
                frame.py(0.0) - y,
                color(*g)
            );
        }
    }
    svg.axes(&frame, x_label, "chains");
    svg.legend(&groups);
    svg.finish()
}

fn phase_plot(chains: &[ChainRecord]) -> String {
    let frame = Frame::fit(
        chains.iter().flat_map(|c| c.phase.q0.iter().copied()),
        chains.iter().flat_map(|c| c.phase.p0.iter().copied()),
    );
    let mut svg = Svg::new("Phase portrait (q0, p0)");
    for c in chains {
        let pts: Vec<(f64, f64)> = c
            .phase
            .q0
            .iter()
            .zip(&c.phase.p0)
            .map(|(q, p)| (frame.px(*q), frame.py(*p)))
            .collect();
        svg.polyline(&pts, c.label, &c.id);
    }
    svg.axes(&frame, "q0", "p0");
    svg.legend(&labels_present(chains));
    svg.finish()
}

/// Oblique view of the leading three principal components.
fn pca_plot(chains: &[ChainRecord]) -> CliResult<String> {
    if chains.iter().any(|c| c.projection.first().is_none_or(|s| s.len() < 3)) {
        return Err(CliError::Invalid(
            "report has no three-component projection (embedding dimension below 3)".into(),
        ));
    }
    let (az, el) = (35f64.to_radians(), 25f64.to_radians());
    let view = |s: &[f64]| {
        let x = s[0] * az.cos() - s[1] * az.sin();
        let y = (s[0] * az.sin() + s[1] * az.cos()) * el.sin() + s[2] * el.cos();
        (x, y)
    };
    let flat: Vec<Vec<(f64, f64)>> = chains
        .iter()
        .map(|c| c.projection.iter().map(|s| view(s)).collect())
        .collect();
    let frame = Frame::fit(
        flat.iter().flatten().map(|p| p.0),
        flat.iter().flatten().map(|p| p.1),
    );
    let mut svg = Svg::new("Trajectories in the first three principal components");
    for (c, pts) in chains.iter().zip(&flat) {
        let px: Vec<(f64, f64)> = pts.iter().map(|(x, y)| (frame.px(*x), frame.py(*y))).collect();
        svg.polyline(&px, c.label, &c.id);
    }
    svg.axes(&frame, "view x", "view y");
    svg.legend(&labels_present(chains));
    Ok(svg.finish())
}

pub fn render(kind: PlotKind, report: &CohortReport) -> CliResult<String> {
    let chains = &report.chains;
    Ok(match kind {
        PlotKind::EnergyHist => histogram("Mean Hamiltonian per chain", "mean H", chains, |c| c.energy.mean_h),
        PlotKind::ConservationHist => histogram(
            "Energy conservation score",
            "std(H) / (1 + |mean H|)",
            chains,
            |c| c.energy.conservation_score,
        ),
        PlotKind::EntropyHist => histogram("Trajectory entropy", "entropy (nats)", chains, |c| c.statmech.entropy),
        PlotKind::Phase2d => phase_plot(chains),
        PlotKind::Pca3d => pca_plot(chains)?,
    })
}

pub fn render_to(kinds: &[PlotKind], report: &CohortReport, out: &Path) -> CliResult<Vec<PathBuf>> {
    fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    kinds
        .iter()
        .map(|&k| {
            let path = out.join(k.file_name());
            crate::pipeline::write_text(&path, &render(k, report)?)?;
            Ok(path)
        })
        .collect()
}

/// Every kind the report supports; `pca-3d` is left out for 2-D embeddings.
pub fn render_all(report: &CohortReport, out: &Path) -> CliResult<Vec<PathBuf>> {
    let three_d = report.chains.iter().all(|c| c.projection.first().is_some_and(|s| s.len() >= 3));
    let kinds: Vec<PlotKind> = PlotKind::ALL
        .into_iter()
        .filter(|&k| k != PlotKind::Pca3d || three_d)
        .collect();
    render_to(&kinds, report, out)
}

pub fn load_report(path: &Path) -> CliResult<CohortReport> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Report {
        path: path.to_path_buf(),
        message: format!("missing or malformed section: {e}"),
    })
}

/// `plot`: renders the requested kinds next to the report (or into `out`).
pub fn cmd_plot(report_path: &Path, kinds: &[String], out: Option<&Path>) -> CliResult<Vec<PathBuf>> {
    let kinds: Vec<PlotKind> = kinds.iter().map(|k| k.parse()).collect::<CliResult<_>>()?;
    if kinds.is_empty() {
        return Err(CliError::Invalid("no plot kinds requested".into()));
    }
    let report = load_report(report_path)?;
    let dir = match out {
        Some(d) => d.to_path_buf(),
        None => report_path.parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    render_to(&kinds, &report, &dir)
}
