//! JSONL interchange: one chain object per line.
//!
//! `{"id": "...", "label": "valid"|"invalid"|"unknown", "reference": [..], "steps": [[..], ..], "texts": [..]?}`

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{ChainDataset, EmbeddedChain, Label};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct ChainRecord {
    id: String,
    label: Label,
    reference: Vec<f64>,
    steps: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    texts: Option<Vec<String>>,
}

pub fn load_dataset(path: impl AsRef<Path>) -> Result<ChainDataset<f64>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut ds = parse_dataset(BufReader::new(file), path)?;
    ds.provenance = format!("loaded from {}", path.display());
    Ok(ds)
}

/// Parses JSONL from any reader. Blank lines are skipped.
pub fn parse_dataset(reader: impl BufRead, source: &Path) -> Result<ChainDataset<f64>> {
    let mut ds = ChainDataset::empty(source.display().to_string());
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|source_err| Error::Io {
            path: source.to_path_buf(),
            source: source_err,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: ChainRecord = serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        let chain = EmbeddedChain::new(rec.id, rec.steps, rec.reference, rec.label, rec.texts)?;
        ds.push(chain)?;
    }
    Ok(ds)
}

pub fn write_dataset_to<W: Write>(ds: &ChainDataset<f64>, mut out: W) -> std::io::Result<()> {
    for c in ds.chains() {
        let rec = ChainRecord {
            id: c.id.clone(),
            label: c.label,
            reference: c.reference.clone(),
            steps: c.steps.clone(),
            texts: c.texts.clone(),
        };
        serde_json::to_writer(&mut out, &rec)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

pub fn write_dataset(ds: &ChainDataset<f64>, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    write_dataset_to(ds, BufWriter::new(file)).map_err(io_err)
}
