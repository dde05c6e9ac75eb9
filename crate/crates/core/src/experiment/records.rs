use std::fs;
use std::io::{self, BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{ExperimentError, Model};
use crate::estimate::CountingSample;

pub const RECORDS_HEADER: &str =
    "model,n,seed,set_size,diameter,component_count,singleton_count,elapsed_ms";

/// One `(model, n, seed)` observation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationRecord {
    pub model: Model,
    pub n: u64,
    pub seed: u64,
    pub set_size: u64,
    pub diameter: f64,
    pub component_count: Option<u64>,
    pub singleton_count: Option<u64>,
    pub elapsed_ms: u64,
}

impl SimulationRecord {
    pub fn sort_key(&self) -> (Model, u64, u64) {
        (self.model, self.n, self.seed)
    }

    pub fn to_csv_line(&self) -> String {
        let opt = |v: Option<u64>| v.map(|v| v.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.model,
            self.n,
            self.seed,
            self.set_size,
            self.diameter,
            opt(self.component_count),
            opt(self.singleton_count),
            self.elapsed_ms
        )
    }

    pub fn parse_csv_line(line: &str, line_no: usize) -> Result<Self, ExperimentError> {
        let bad = |msg: &str| ExperimentError::Records {
            line: line_no,
            message: msg.to_string(),
        };
        let fields: Vec<&str> = line.trim_end_matches('\r').split(',').collect();
        if fields.len() != 8 {
            return Err(bad("expected 8 comma-separated fields"));
        }
        let int = |s: &str, name: &str| {
            s.parse::<u64>()
                .map_err(|_| bad(&format!("invalid {name} {s:?}")))
        };
        let opt = |s: &str, name: &str| {
            if s.is_empty() {
                Ok(None)
            } else {
                int(s, name).map(Some)
            }
        };
        Ok(SimulationRecord {
            model: fields[0]
                .parse()
                .map_err(|_| bad(&format!("unknown model {:?}", fields[0])))?,
            n: int(fields[1], "n")?,
            seed: int(fields[2], "seed")?,
            set_size: int(fields[3], "set_size")?,
            diameter: fields[4]
                .parse()
                .map_err(|_| bad(&format!("invalid diameter {:?}", fields[4])))?,
            component_count: opt(fields[5], "component_count")?,
            singleton_count: opt(fields[6], "singleton_count")?,
            elapsed_ms: int(fields[7], "elapsed_ms")?,
        })
    }

    pub fn counting_sample(&self) -> CountingSample<f64> {
        CountingSample {
            n: self.n,
            size: self.set_size as f64,
            diameter: self.diameter,
        }
    }
}

pub fn write_records<W: Write>(mut w: W, records: &[SimulationRecord]) -> io::Result<()> {
    writeln!(w, "{RECORDS_HEADER}")?;
    for r in records {
        writeln!(w, "{}", r.to_csv_line())?;
    }
    w.flush()
}

pub fn read_records<R: BufRead>(reader: R) -> Result<Vec<SimulationRecord>, ExperimentError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if i == 0 {
            if line.trim() != RECORDS_HEADER {
                return Err(ExperimentError::Records {
                    line: 1,
                    message: format!("expected header {RECORDS_HEADER:?}"),
                });
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        out.push(SimulationRecord::parse_csv_line(&line, i + 1)?);
    }
    Ok(out)
}

pub fn load_records(path: impl AsRef<Path>) -> Result<Vec<SimulationRecord>, ExperimentError> {
    read_records(io::BufReader::new(fs::File::open(path)?))
}

/// Writes `records` to `path` through a temporary sibling and a rename.
pub fn save_records(path: impl AsRef<Path>, records: &[SimulationRecord]) -> io::Result<()> {
    let path = path.as_ref();
    let tmp = path.with_extension("csv.tmp");
    write_records(io::BufWriter::new(fs::File::create(&tmp)?), records)?;
    fs::rename(tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<SimulationRecord> {
        vec![
            SimulationRecord {
                model: Model::Walk,
                n: 10,
                seed: 99,
                set_size: 8,
                diameter: 3.605551275463989,
                component_count: None,
                singleton_count: None,
                elapsed_ms: 0,
            },
            SimulationRecord {
                model: Model::Earthworm,
                n: 20,
                seed: 7,
                set_size: 6,
                diameter: 4.0,
                component_count: Some(2),
                singleton_count: Some(1),
                elapsed_ms: 12,
            },
        ]
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_records(&mut buf, &sample()).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            format!(
                "{RECORDS_HEADER}\nwalk,10,99,8,3.605551275463989,,,0\nearthworm,20,7,6,4,2,1,12\n"
            )
        );
        assert_eq!(read_records(buf.as_slice()).unwrap(), sample());
    }

    #[test]
    fn rejects_bad_rows() {
        let text = format!("{RECORDS_HEADER}\nwalk,10,1,2,3.0,,\n");
        assert!(matches!(
            read_records(text.as_bytes()),
            Err(ExperimentError::Records { line: 2, .. })
        ));
        assert!(read_records("model,n\n".as_bytes()).is_err());
    }
}
