//! The `x,y` point-set text format.
//!
//! One integer pair per LF-terminated line. Lines starting with `#` carry
//! `key=value` metadata and are skipped by the point parser.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::geometry::{LatticePoint, PointSet};

#[derive(Debug, Error)]
pub enum PointFileError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: expected `x,y` integer pair, found {content:?}")]
    Parse { line: usize, content: String },
}

/// A parsed point-set file: the points plus any `# key=value` metadata.
#[derive(Debug, Clone, Default)]
pub struct PointFile {
    pub points: PointSet,
    pub metadata: Vec<(String, String)>,
}

impl PointFile {
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

fn parse_pair(s: &str) -> Option<LatticePoint> {
    let (x, y) = s.split_once(',')?;
    Some(LatticePoint::new(
        x.trim().parse().ok()?,
        y.trim().parse().ok()?,
    ))
}

pub fn read_points<R: Read>(reader: R) -> Result<PointFile, PointFileError> {
    let mut out = PointFile::default();
    for (i, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(meta) = trimmed.strip_prefix('#') {
            if let Some((k, v)) = meta.trim().split_once('=') {
                out.metadata
                    .push((k.trim().to_string(), v.trim().to_string()));
            }
            continue;
        }
        let p = parse_pair(trimmed).ok_or_else(|| PointFileError::Parse {
            line: i + 1,
            content: line.clone(),
        })?;
        out.points.insert(p);
    }
    Ok(out)
}

/// Writes `metadata` as `# key=value` lines, then the points sorted by `(x, y)`.
pub fn write_points<W: Write>(
    writer: W,
    set: &PointSet,
    metadata: &[(&str, String)],
) -> io::Result<()> {
    let mut w = BufWriter::new(writer);
    for (k, v) in metadata {
        writeln!(w, "# {k}={v}")?;
    }
    for p in set.sorted() {
        writeln!(w, "{},{}", p.x, p.y)?;
    }
    w.flush()
}

pub fn load(path: impl AsRef<Path>) -> Result<PointFile, PointFileError> {
    read_points(File::open(path)?)
}

pub fn save(
    path: impl AsRef<Path>,
    set: &PointSet,
    metadata: &[(&str, String)],
) -> Result<(), PointFileError> {
    write_points(File::create(path)?, set, metadata)?;
    Ok(())
}
