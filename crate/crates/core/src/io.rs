//! File formats: matrices, integrals, estimates, samples and reports.
//!
//! JSON floats are written in shortest round-trip form, so every `f64`
//! survives a write/read cycle bit for bit.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::algebra::{Bitstring, SignedPermutation};
use crate::compiler::{GateProgram, GateRecord};
use crate::error::{arg, Error, Result};
use crate::partition::{ElectronicIntegrals, SparseEntry};
use crate::shadows::{Estimates, ShadowSample};

/// Row-major data, either flat or as a list of rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixData {
    Flat(Vec<f64>),
    Nested(Vec<Vec<f64>>),
}

/// `{"n_modes": n, "kind": "...", "data": [...]}` for a `2n × 2n` matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n_modes: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub data: MatrixData,
}

impl MatrixFile {
    pub fn from_matrix(kind: &str, m: &DMatrix<f64>) -> Self {
        let data = (0..m.nrows())
            .flat_map(|i| (0..m.ncols()).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)])
            .collect();
        MatrixFile {
            n_modes: m.nrows() / 2,
            kind: Some(kind.to_string()),
            data: MatrixData::Flat(data),
        }
    }

    pub fn to_matrix(&self) -> Result<DMatrix<f64>> {
        let d = 2 * self.n_modes;
        let flat: Vec<f64> = match &self.data {
            MatrixData::Flat(v) => v.clone(),
            MatrixData::Nested(rows) => {
                if rows.iter().any(|r| r.len() != d) {
                    return Err(Error::Dimension(format!("every row must have {d} entries")));
                }
                rows.concat()
            }
        };
        if self.n_modes == 0 || flat.len() != d * d {
            return Err(Error::Dimension(format!(
                "{} entries for n_modes = {}",
                flat.len(),
                self.n_modes
            )));
        }
        Ok(DMatrix::from_row_slice(d, d, &flat))
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    Ok(serde_json::from_reader(BufReader::new(File::open(path)?))?)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

pub fn read_matrix(path: &Path) -> Result<(Option<String>, DMatrix<f64>)> {
    let f: MatrixFile = read_json(path)?;
    Ok((f.kind.clone(), f.to_matrix()?))
}

pub fn write_matrix(path: &Path, kind: &str, m: &DMatrix<f64>) -> Result<()> {
    write_json(path, &MatrixFile::from_matrix(kind, m))
}

/// `{"n": n, "h1": [[...]], "h2": [{"pqrs": [p,q,r,s], "value": v}, ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralsFile {
    pub n: usize,
    pub h1: Vec<Vec<f64>>,
    #[serde(default)]
    pub h2: Vec<SparseEntry>,
}

impl IntegralsFile {
    pub fn from_integrals(ints: &ElectronicIntegrals) -> Self {
        let n = ints.n();
        IntegralsFile {
            n,
            h1: (0..n)
                .map(|i| (0..n).map(|j| ints.h1()[(i, j)]).collect())
                .collect(),
            h2: ints.sparse_entries(),
        }
    }

    pub fn to_integrals(&self) -> Result<ElectronicIntegrals> {
        if self.h1.len() != self.n || self.h1.iter().any(|r| r.len() != self.n) {
            return Err(Error::Dimension(format!("h1 must be {0}x{0}", self.n)));
        }
        let h1 = DMatrix::from_row_slice(self.n, self.n, &self.h1.concat());
        ElectronicIntegrals::from_sparse(h1, &self.h2)
    }
}

pub fn read_program(path: &Path) -> Result<GateProgram> {
    let records: Vec<GateRecord> = read_json(path)?;
    GateProgram::from_records(&records, None)
}

pub fn write_program(path: &Path, p: &GateProgram) -> Result<()> {
    write_json(path, &p.to_records())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateEntry {
    pub mean: f64,
    pub count: u64,
}

fn set_key(set: &[usize]) -> String {
    set.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_key(key: &str) -> Result<Vec<usize>> {
    key.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad index set key {key:?}")))
        })
        .collect()
}

/// Map from `"i1,i2,…"` to `{mean, count}`, ordered by degree then lexicographically.
pub fn estimates_to_json(est: &Estimates) -> BTreeMap<String, EstimateEntry> {
    est.values
        .iter()
        .map(|(k, &mean)| {
            (
                set_key(k),
                EstimateEntry {
                    mean,
                    count: est.count,
                },
            )
        })
        .collect()
}

pub fn write_estimates(path: &Path, est: &Estimates) -> Result<()> {
    // sort keys by (degree, indices) for readability
    let mut entries: Vec<(&Vec<usize>, f64)> = est.values.iter().map(|(k, &v)| (k, v)).collect();
    entries.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
    let map: serde_json::Map<String, serde_json::Value> = entries
        .into_iter()
        .map(|(k, mean)| {
            let v = serde_json::to_value(EstimateEntry {
                mean,
                count: est.count,
            })
            .expect("plain struct serializes");
            (set_key(k), v)
        })
        .collect();
    write_json(path, &serde_json::Value::Object(map))
}

/// Reads an estimates file; `n_modes` is the mode count of the run.
pub fn read_estimates(path: &Path, n_modes: usize) -> Result<Estimates> {
    let map: BTreeMap<String, EstimateEntry> = read_json(path)?;
    let mut values = BTreeMap::new();
    let mut count = 0;
    for (k, e) in map {
        let set = parse_key(&k)?;
        if set.iter().any(|&i| i >= 2 * n_modes) || set.windows(2).any(|w| w[0] >= w[1]) {
            return arg(format!("index set {k:?} invalid for {n_modes} modes"));
        }
        count = e.count;
        values.insert(set, e.mean);
    }
    Ok(Estimates {
        n_modes,
        count,
        values,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct SampleRow {
    seed_id: u64,
    perm: String,
    signs: String,
    bitstring: String,
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// CSV with columns `seed_id, perm, signs, bitstring`; lists are space separated.
pub fn write_samples<'a>(
    path: &Path,
    rows: impl IntoIterator<Item = (u64, &'a ShadowSample)>,
) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for (id, s) in rows {
        w.serialize(SampleRow {
            seed_id: id,
            perm: join(s.q.perm()),
            signs: join(s.q.signs()),
            bitstring: s.b.to_string(),
        })?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_samples(path: &Path) -> Result<Vec<(u64, ShadowSample)>> {
    let mut r = csv::Reader::from_path(path)?;
    let mut out = Vec::new();
    for row in r.deserialize() {
        let row: SampleRow = row?;
        let parse_list = |s: &str| -> Result<Vec<i64>> {
            s.split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::InvalidArgument(format!("bad entry {t:?}")))
                })
                .collect()
        };
        let perm: Vec<usize> = parse_list(&row.perm)?
            .into_iter()
            .map(|x| x as usize)
            .collect();
        let signs: Vec<i8> = parse_list(&row.signs)?
            .into_iter()
            .map(|x| x as i8)
            .collect();
        let b: Bitstring = row.bitstring.parse()?;
        let q = SignedPermutation::new(b.len(), perm, signs)?;
        out.push((row.seed_id, ShadowSample { q, b }));
    }
    Ok(out)
}
