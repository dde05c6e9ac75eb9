use std::collections::BTreeSet;
use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::time::Instant;

use rayon::prelude::*;

use super::records::{load_records, save_records, RECORDS_HEADER};
use super::{ExperimentConfig, ExperimentError, Model, ModelOptions, SimulationRecord};
use crate::frontier::extract_frontier_with;
use crate::geometry::{connected_components, diameter, PointSet};
use crate::sim::{mix64, simulate_earthworm_with, simulate_walk_with};

pub const RECORDS_FILE: &str = "records.csv";

/// Seed for replicate `replicate` at step count `n`.
///
/// `(n, replicate)` is packed into one word (40 + 24 bits) and passed with the
/// base seed through two rounds of the SplitMix64 finalizer. Every stage is a
/// bijection, so distinct grid cells never share a seed.
pub fn replicate_seed(base_seed: u64, n: u64, replicate: u64) -> u64 {
    debug_assert!(n <= super::MAX_STEPS && replicate < super::MAX_REPLICATES);
    let key = (n << 24) | replicate;
    mix64(base_seed.wrapping_add(mix64(key)))
}

/// Simulates one model instance and returns the measured set.
pub fn build_set(model: Model, n: u64, seed: u64, options: &ModelOptions) -> PointSet {
    match model {
        Model::Walk => simulate_walk_with(n as usize, seed, options.step_law).visited,
        Model::WalkFrontier => {
            let trace = simulate_walk_with(n as usize, seed, options.step_law);
            extract_frontier_with(&trace.visited, options.frontier)
                .expect("a trace always contains the origin")
                .frontier
        }
        Model::Earthworm => simulate_earthworm_with(n, seed, options.fill_rule)
            .holes
            .to_point_set(),
    }
}

pub fn simulate_record(
    model: Model,
    n: u64,
    seed: u64,
    options: &ModelOptions,
    record_timing: bool,
) -> SimulationRecord {
    let started = Instant::now();
    let set = build_set(model, n, seed, options);
    let diameter = diameter::<f64>(&set).expect("simulated sets are non-empty");
    let census =
        (model == Model::Earthworm).then(|| connected_components(&set, options.census_adjacency));
    let elapsed_ms = if record_timing {
        started.elapsed().as_millis() as u64
    } else {
        0
    };
    SimulationRecord {
        model,
        n,
        seed,
        set_size: set.len() as u64,
        diameter,
        component_count: census.as_ref().map(|c| c.component_count as u64),
        singleton_count: census.as_ref().map(|c| c.singleton_count as u64),
        elapsed_ms,
    }
}

/// Runs every `(n, replicate)` cell of the config and returns the records
/// sorted by `(model, n, seed)`.
///
/// With an output directory, each finished record is appended to
/// `records.csv` as it arrives; cells already present in an existing file are
/// skipped, and the file is rewritten in sorted order at the end.
pub fn run_batch(config: &ExperimentConfig) -> Result<Vec<SimulationRecord>, ExperimentError> {
    let steps = config.validate()?;
    let mut work: Vec<(u64, u64)> = steps
        .iter()
        .flat_map(|&n| {
            (0..config.replicates).map(move |i| (n, replicate_seed(config.base_seed, n, i)))
        })
        .collect();
    let wanted: BTreeSet<(u64, u64)> = work.iter().copied().collect();

    let records_path = match &config.output_dir {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            Some(dir.join(RECORDS_FILE))
        }
        None => None,
    };

    let mut records: Vec<SimulationRecord> = Vec::with_capacity(work.len());
    if let Some(path) = records_path.as_ref().filter(|p| p.exists()) {
        drop_partial_line(path)?;
        records = load_records(path)?
            .into_iter()
            .filter(|r| r.model == config.model && wanted.contains(&(r.n, r.seed)))
            .collect();
        let done: BTreeSet<(u64, u64)> = records.iter().map(|r| (r.n, r.seed)).collect();
        work.retain(|cell| !done.contains(cell));
        save_records(path, &records)?;
    } else if let Some(path) = &records_path {
        fs::write(path, format!("{RECORDS_HEADER}\n"))?;
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.unwrap_or(0))
        .build()
        .map_err(|e| ExperimentError::Config(format!("cannot start worker pool: {e}")))?;

    let (tx, rx) = mpsc::channel::<SimulationRecord>();
    let fresh = std::thread::scope(|scope| -> Result<Vec<SimulationRecord>, ExperimentError> {
        let collector = scope.spawn(move || collect(rx, records_path));
        pool.install(|| {
            work.par_iter().for_each_with(tx, |tx, &(n, seed)| {
                let record =
                    simulate_record(config.model, n, seed, &config.options, config.record_timing);
                // The collector only hangs up after an I/O failure, which is
                // reported below.
                let _ = tx.send(record);
            });
        });
        collector.join().expect("collector thread panicked")
    })?;

    records.extend(fresh);
    records.sort_by_key(SimulationRecord::sort_key);
    if let Some(dir) = &config.output_dir {
        save_records(dir.join(RECORDS_FILE), &records)?;
    }
    Ok(records)
}

/// An interrupted append can leave a final line without its newline.
fn drop_partial_line(path: &Path) -> io::Result<()> {
    let text = fs::read(path)?;
    if text.is_empty() || text.ends_with(b"\n") {
        return Ok(());
    }
    let keep = text.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
    fs::write(path, &text[..keep])
}

/// Single writer of the records file.
fn collect(
    rx: mpsc::Receiver<SimulationRecord>,
    path: Option<PathBuf>,
) -> Result<Vec<SimulationRecord>, ExperimentError> {
    let mut file = match &path {
        Some(p) => Some(OpenOptions::new().append(true).open(p)?),
        None => None,
    };
    let mut out = Vec::new();
    for record in rx {
        if let Some(f) = file.as_mut() {
            writeln!(f, "{}", record.to_csv_line())?;
        }
        out.push(record);
    }
    Ok(out)
}
