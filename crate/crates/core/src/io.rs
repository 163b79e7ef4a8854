//! Point ingestion and result serialization.
//!
//! Point formats:
//!
//! * CSV: one point per line, comma separated reals, no header, uniform
//!   column count.
//! * VECBIN: `b"VEC1"`, `n: u64 LE`, `d: u64 LE`, then `n·d` `f64 LE`
//!   values, row-major.
//!
//! Text outputs print reals with Rust's shortest round-trippable decimal
//! formatting.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use crate::decompose::RunStats;
use crate::dendrogram::Dendrogram;
use crate::error::{Error, Result};
use crate::geometry::{Metric, PointSet};
use crate::graph::{edge_order, Edge, EdgeList};

pub const VECBIN_MAGIC: &[u8; 4] = b"VEC1";
const VECBIN_HEADER: usize = 4 + 8 + 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointFormat {
    Csv,
    Vecbin,
}

impl PointFormat {
    /// Guesses the format from a file extension: `.vecbin` and `.bin` are
    /// binary, anything else is CSV.
    pub fn from_path(path: &Path) -> PointFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("vecbin") | Some("bin") => PointFormat::Vecbin,
            _ => PointFormat::Csv,
        }
    }
}

impl FromStr for PointFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(PointFormat::Csv),
            "vecbin" => Ok(PointFormat::Vecbin),
            _ => Err(Error::usage(format!(
                "unknown point format '{s}' (expected csv or vecbin)"
            ))),
        }
    }
}

pub fn read_points(path: &Path, format: PointFormat) -> Result<PointSet> {
    let file = File::open(path)?;
    match format {
        PointFormat::Csv => parse_csv(BufReader::new(file)),
        PointFormat::Vecbin => {
            let mut buf = Vec::new();
            BufReader::new(file).read_to_end(&mut buf)?;
            parse_vecbin(&buf)
        }
    }
}

pub fn write_points(points: &PointSet, path: &Path, format: PointFormat) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    match format {
        PointFormat::Csv => write_csv(points, &mut w)?,
        PointFormat::Vecbin => w.write_all(&encode_vecbin(points))?,
    }
    w.flush()?;
    Ok(())
}

fn check_finite(row: usize, values: &[f64]) -> Result<()> {
    if let Some(col) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::ingest(format!(
            "row {row}: non-finite value {} in column {col}",
            values[col]
        )));
    }
    Ok(())
}

pub fn parse_csv<R: BufRead>(input: R) -> Result<PointSet> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input);
    let mut dim = None;
    let mut coords = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::ingest(format!("row {row}: {e}")))?;
        let values = record
            .iter()
            .enumerate()
            .map(|(col, field)| {
                field.parse::<f64>().map_err(|_| {
                    Error::ingest(format!("row {row}, column {col}: cannot parse '{field}'"))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        let expected = *dim.get_or_insert(values.len());
        if values.len() != expected {
            return Err(Error::ingest(format!(
                "row {row}: {} columns, expected {expected}",
                values.len()
            )));
        }
        check_finite(row, &values)?;
        coords.extend(values);
    }
    let dim = dim.ok_or_else(|| Error::ingest("CSV input has no rows"))?;
    if dim == 0 {
        return Err(Error::ingest("CSV rows have no columns"));
    }
    PointSet::new(dim, coords)
}

pub fn write_csv<W: Write>(points: &PointSet, out: &mut W) -> Result<()> {
    for r in 0..points.len() {
        let line: Vec<String> = points.row(r).iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

pub fn parse_vecbin(bytes: &[u8]) -> Result<PointSet> {
    if bytes.len() < VECBIN_HEADER {
        return Err(Error::ingest(format!(
            "truncated header: {} bytes, need {VECBIN_HEADER}",
            bytes.len()
        )));
    }
    if &bytes[..4] != VECBIN_MAGIC {
        return Err(Error::ingest(format!(
            "bad magic {:?} at offset 0, expected \"VEC1\"",
            &bytes[..4]
        )));
    }
    let word = |at: usize| u64::from_le_bytes(bytes[at..at + 8].try_into().unwrap());
    let (n, d) = (word(4), word(12));
    if d == 0 {
        return Err(Error::ingest("dimension 0 at offset 12"));
    }
    let payload = n
        .checked_mul(d)
        .and_then(|c| c.checked_mul(8))
        .and_then(|b| usize::try_from(b).ok())
        .ok_or_else(|| Error::ingest(format!("n = {n}, d = {d} overflows the payload size")))?;
    let body = &bytes[VECBIN_HEADER..];
    if body.len() != payload {
        return Err(Error::ingest(format!(
            "payload is {} bytes after offset {VECBIN_HEADER}, expected {payload} for n = {n}, d = {d}",
            body.len()
        )));
    }
    let d = d as usize;
    let coords: Vec<f64> = body
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    for (row, values) in coords.chunks_exact(d).enumerate() {
        check_finite(row, values).map_err(|e| match e {
            Error::Ingest(m) => {
                Error::Ingest(format!("{m} (offset {})", VECBIN_HEADER + row * d * 8))
            }
            other => other,
        })?;
    }
    PointSet::new(d, coords)
}

pub fn encode_vecbin(points: &PointSet) -> Vec<u8> {
    let mut out = Vec::with_capacity(VECBIN_HEADER + points.coords().len() * 8);
    out.extend_from_slice(VECBIN_MAGIC);
    out.extend_from_slice(&(points.len() as u64).to_le_bytes());
    out.extend_from_slice(&(points.dim() as u64).to_le_bytes());
    for c in points.coords() {
        out.extend_from_slice(&c.to_le_bytes());
    }
    out
}

/// Edge TSV: `u \t v \t weight`, sorted by edge order.
pub fn format_edges<W: Write>(tree: &EdgeList, out: &mut W) -> Result<()> {
    let mut edges = tree.edges.clone();
    edges.sort_unstable_by(edge_order);
    for e in &edges {
        writeln!(out, "{}\t{}\t{}", e.u, e.v, e.w)?;
    }
    Ok(())
}

pub fn write_edges(tree: &EdgeList, path: &Path) -> Result<()> {
    write_with(path, |w| format_edges(tree, w))
}

pub fn parse_edges<R: BufRead>(input: R) -> Result<EdgeList> {
    let mut edges = Vec::new();
    let mut bound = 0;
    for (row, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let bad = || Error::ingest(format!("edge row {row}: malformed line '{line}'"));
        let [u, v, w] = fields.as_slice() else {
            return Err(bad());
        };
        let u: usize = u.parse().map_err(|_| bad())?;
        let v: usize = v.parse().map_err(|_| bad())?;
        let w: f64 = w.parse().map_err(|_| bad())?;
        if !w.is_finite() {
            return Err(bad());
        }
        bound = bound.max(u.max(v) + 1);
        edges.push(Edge::new(u, v, w));
    }
    Ok(EdgeList::new(edges, bound))
}

pub fn read_edges(path: &Path) -> Result<EdgeList> {
    parse_edges(BufReader::new(File::open(path)?))
}

/// Dendrogram TSV: `step \t cluster_a \t cluster_b \t height \t size`.
pub fn format_dendrogram<W: Write>(d: &Dendrogram, out: &mut W) -> Result<()> {
    for (t, s) in d.steps().iter().enumerate() {
        writeln!(
            out,
            "{t}\t{}\t{}\t{}\t{}",
            s.cluster_a, s.cluster_b, s.height, s.size
        )?;
    }
    Ok(())
}

pub fn write_dendrogram(d: &Dendrogram, path: &Path) -> Result<()> {
    write_with(path, |w| format_dendrogram(d, w))
}

/// Parameters recorded next to the counters in a stats file.
#[derive(Clone, Debug, PartialEq)]
pub struct RunParams {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub metric: Metric,
    pub workers: usize,
    pub seed: u64,
}

pub fn format_stats<W: Write>(s: &RunStats, p: &RunParams, out: &mut W) -> Result<()> {
    writeln!(out, "n={}", p.n)?;
    writeln!(out, "d={}", p.d)?;
    writeln!(out, "k={}", p.k)?;
    writeln!(out, "metric={}", p.metric)?;
    writeln!(out, "workers={}", p.workers)?;
    writeln!(out, "seed={}", p.seed)?;
    writeln!(out, "distance_evals={}", s.distance_evals)?;
    writeln!(out, "edges_gathered={}", s.edges_gathered)?;
    writeln!(out, "tasks_executed={}", s.tasks_executed)?;
    writeln!(out, "merge_strategy={}", s.merge_strategy)?;
    writeln!(out, "wall_time_ms={}", s.wall_time.as_secs_f64() * 1e3)?;
    Ok(())
}

pub fn write_stats(s: &RunStats, p: &RunParams, path: &Path) -> Result<()> {
    write_with(path, |w| format_stats(s, p, w))
}

fn write_with(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> Result<()>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    f(&mut w)?;
    w.flush()?;
    Ok(())
}
