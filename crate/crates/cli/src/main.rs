use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use lattice_fractal::estimate::{
    averaging_dimension, Aggregation, AveragingProfile, CountingMode, EstimateError,
    DEFAULT_MAX_CENTERS, DEFAULT_R_MIN,
};
use lattice_fractal::experiment::{
    counting_fit, emit_plot_data, load_records, run_batch, EstimatorParams, ExperimentConfig,
    ExperimentError, FitReport, Model, ModelOptions, PlotSource, Schedule, SimulationRecord,
    RECORDS_FILE,
};
use lattice_fractal::frontier::{extract_frontier_with, FrontierConnectivity};
use lattice_fractal::geometry::{connected_components, diameter, Adjacency, GeometryError};
use lattice_fractal::pointfile::{self, PointFileError};
use lattice_fractal::sim::{simulate_earthworm_with, simulate_walk_with, FillRule, StepLaw};

const EXIT_USAGE: u8 = 2;
const EXIT_ESTIMATE: u8 = 3;
const EXIT_IO: u8 = 4;

/// Lattice random walks, the earthworm model, and fractal dimension estimates.
#[derive(Parser, Debug)]
#[command(name = "latfrac", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one seeded simulation and write its point set.
    Simulate(SimulateArgs),
    /// Extract the outer boundary of a trace.
    Frontier(FrontierArgs),
    /// Run replicates over a step schedule; writes records.csv and fit.json.
    Batch(BatchArgs),
    /// Estimate a dimension.
    Dimension {
        #[command(subcommand)]
        method: DimensionCommand,
    },
    /// Connected-component census of a point set.
    Components(ComponentsArgs),
    /// Write log-log scatter and fitted-line CSVs for external plotting.
    PlotData(PlotDataArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SimModel {
    Walk,
    Earthworm,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum StepLawArg {
    #[default]
    Four,
    Diagonal,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum FillRuleArg {
    #[default]
    Nearest,
    Adjacent,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum AggregationArg {
    #[default]
    Mean,
    PerRecord,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum CountingModeArg {
    /// h / d from separate fits against n.
    #[default]
    Ratio,
    /// ln |S| fitted directly on ln diam.
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Neighbourhood(u8);

fn parse_neighbourhood(s: &str) -> Result<Neighbourhood, String> {
    match s {
        "4" => Ok(Neighbourhood(4)),
        "8" => Ok(Neighbourhood(8)),
        _ => Err(format!("expected 4 or 8, got {s:?}")),
    }
}

impl Neighbourhood {
    fn adjacency(self) -> Adjacency {
        if self.0 == 8 {
            Adjacency::Eight
        } else {
            Adjacency::Four
        }
    }

    fn frontier(self) -> FrontierConnectivity {
        if self.0 == 8 {
            FrontierConnectivity::EightFour
        } else {
            FrontierConnectivity::Four
        }
    }
}

impl From<StepLawArg> for StepLaw {
    fn from(a: StepLawArg) -> Self {
        match a {
            StepLawArg::Four => StepLaw::FourNeighbor,
            StepLawArg::Diagonal => StepLaw::Diagonal,
        }
    }
}

impl From<FillRuleArg> for FillRule {
    fn from(a: FillRuleArg) -> Self {
        match a {
            FillRuleArg::Nearest => FillRule::NearestOnRay,
            FillRuleArg::Adjacent => FillRule::AdjacentOnly,
        }
    }
}

#[derive(Args, Debug)]
struct SimulateArgs {
    model: SimModel,
    #[arg(long)]
    steps: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    step_law: StepLawArg,
    #[arg(long, value_enum, default_value_t)]
    fill_rule: FillRuleArg,
}

#[derive(Args, Debug)]
struct FrontierArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Connectivity of the outside region: 4, or 8 for corner-connected.
    #[arg(long, value_parser = parse_neighbourhood, default_value = "4")]
    connectivity: Neighbourhood,
}

#[derive(Args, Debug)]
struct BatchArgs {
    /// walk, walk-frontier or earthworm.
    #[arg(long)]
    model: Model,
    #[arg(long, default_value = "g:1024:2:11")]
    schedule: Schedule,
    #[arg(long, default_value_t = 10)]
    replicates: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    workers: Option<usize>,
    /// Store wall-clock times in elapsed_ms (otherwise 0).
    #[arg(long)]
    timing: bool,
    #[arg(long, value_enum, default_value_t)]
    aggregation: AggregationArg,
    #[arg(long, value_enum, default_value_t)]
    mode: CountingModeArg,
    #[arg(long, value_enum, default_value_t)]
    step_law: StepLawArg,
    #[arg(long, value_enum, default_value_t)]
    fill_rule: FillRuleArg,
    #[arg(long, value_parser = parse_neighbourhood, default_value = "4")]
    frontier_connectivity: Neighbourhood,
    #[arg(long, value_parser = parse_neighbourhood, default_value = "4")]
    census_adjacency: Neighbourhood,
}

#[derive(Subcommand, Debug)]
enum DimensionCommand {
    /// Exponent ratio from a batch's records.csv.
    Counting {
        #[arg(long)]
        records: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        aggregation: AggregationArg,
        #[arg(long, value_enum, default_value_t)]
        mode: CountingModeArg,
        /// Also write the fit JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mean ball-count scaling of a single point set.
    Averaging {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_R_MIN)]
        rmin: u64,
        /// Defaults to a tenth of the diameter.
        #[arg(long)]
        rmax: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_MAX_CENTERS)]
        centers: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for profile.csv and fit.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct ComponentsArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_parser = parse_neighbourhood, default_value = "4")]
    adjacency: Neighbourhood,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["records", "profile"])))]
struct PlotDataArgs {
    #[arg(long)]
    fit: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// records.csv behind a counting fit.
    #[arg(long)]
    records: Option<PathBuf>,
    /// profile.csv behind an averaging fit.
    #[arg(long)]
    profile: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<ExperimentError>() {
            return match e {
                ExperimentError::Config(_) => EXIT_USAGE,
                ExperimentError::Estimate(_) | ExperimentError::Domain(_) => EXIT_ESTIMATE,
                ExperimentError::Io(_)
                | ExperimentError::Records { .. }
                | ExperimentError::Parse(_)
                | ExperimentError::PointFile(_) => EXIT_IO,
            };
        }
        if cause.is::<EstimateError>() || cause.is::<GeometryError>() {
            return EXIT_ESTIMATE;
        }
        if cause.is::<PointFileError>() || cause.is::<io::Error>() {
            return EXIT_IO;
        }
    }
    EXIT_USAGE
}

/// Writes a line to stdout; a closed pipe is not an error.
fn emit(text: &str) -> Result<()> {
    match writeln!(io::stdout().lock(), "{text}") {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn load_points(path: &Path) -> Result<pointfile::PointFile> {
    pointfile::load(path).with_context(|| format!("reading {}", path.display()))
}

fn read_records_file(path: &Path) -> Result<Vec<SimulationRecord>> {
    load_records(path).with_context(|| format!("reading {}", path.display()))
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Simulate(a) => simulate(a),
        Command::Frontier(a) => frontier(a),
        Command::Batch(a) => batch(a),
        Command::Dimension { method } => dimension(method),
        Command::Components(a) => components(a),
        Command::PlotData(a) => plot_data(a),
    }
}

fn simulate(a: SimulateArgs) -> Result<()> {
    let (set, mut meta) = match a.model {
        SimModel::Walk => {
            let n = usize::try_from(a.steps).context("step count does not fit in memory")?;
            let trace = simulate_walk_with(n, a.seed, a.step_law.into());
            (trace.visited, vec![("model", "walk".to_string())])
        }
        SimModel::Earthworm => {
            let state = simulate_earthworm_with(a.steps, a.seed, a.fill_rule.into());
            let meta = vec![
                ("model", "earthworm".to_string()),
                ("creations", state.creations.to_string()),
                ("fills", state.fills.to_string()),
            ];
            (state.holes.to_point_set(), meta)
        }
    };
    meta.insert(1, ("n", a.steps.to_string()));
    meta.insert(2, ("seed", a.seed.to_string()));
    pointfile::save(&a.out, &set, &meta)?;
    emit(&format!("{} points -> {}", set.len(), a.out.display()))?;
    Ok(())
}

fn frontier(a: FrontierArgs) -> Result<()> {
    let input = load_points(&a.input)?;
    let result = extract_frontier_with(&input.points, a.connectivity.frontier())?;
    let mut meta: Vec<(&str, String)> = input
        .metadata
        .iter()
        .filter(|(k, _)| k != "set")
        .map(|(k, v)| (k.as_str(), v.clone()))
        .collect();
    meta.push(("set", "frontier".to_string()));
    pointfile::save(&a.out, &result.frontier, &meta)?;
    emit(&format!(
        "{} of {} trace points on the frontier -> {}",
        result.frontier.len(),
        result.trace_size,
        a.out.display()
    ))?;
    Ok(())
}

fn batch(a: BatchArgs) -> Result<()> {
    let mut config = ExperimentConfig::new(a.model, a.schedule, a.replicates, a.seed);
    config.output_dir = Some(a.out.clone());
    config.workers = a.workers;
    config.record_timing = a.timing;
    config.params = estimator_params(a.aggregation, a.mode);
    config.options = ModelOptions {
        step_law: a.step_law.into(),
        fill_rule: a.fill_rule.into(),
        frontier: a.frontier_connectivity.frontier(),
        census_adjacency: a.census_adjacency.adjacency(),
    };
    let records = run_batch(&config)?;
    eprintln!(
        "{} records -> {}",
        records.len(),
        a.out.join(RECORDS_FILE).display()
    );
    let report = FitReport::from_counting(&counting_fit(&records, &config.params)?);
    fs::write(a.out.join("fit.json"), report.to_json() + "\n")?;
    emit(&report.to_json())?;
    Ok(())
}

fn estimator_params(aggregation: AggregationArg, mode: CountingModeArg) -> EstimatorParams {
    EstimatorParams {
        aggregation: match aggregation {
            AggregationArg::Mean => Aggregation::MeanPerN,
            AggregationArg::PerRecord => Aggregation::PerRecord,
        },
        counting_mode: match mode {
            CountingModeArg::Ratio => CountingMode::ExponentRatio,
            CountingModeArg::Direct => CountingMode::SizeVsDiameter,
        },
        ..EstimatorParams::default()
    }
}

fn dimension(method: DimensionCommand) -> Result<()> {
    match method {
        DimensionCommand::Counting {
            records,
            aggregation,
            mode,
            out,
        } => {
            let records = read_records_file(&records)?;
            let fit = counting_fit(&records, &estimator_params(aggregation, mode))?;
            let report = FitReport::from_counting(&fit);
            if let Some(out) = out {
                fs::write(out, report.to_json() + "\n")?;
            }
            emit(&report.to_json())?;
        }
        DimensionCommand::Averaging {
            input,
            rmin,
            rmax,
            centers,
            seed,
            out,
        } => {
            let set = load_points(&input)?.points;
            let (profile, _) = averaging_dimension::<f64>(&set, rmin, rmax, centers, seed)?;
            let report = FitReport::from_averaging(&profile.fit()?);
            if let Some(dir) = out {
                fs::create_dir_all(&dir)?;
                fs::write(dir.join("profile.csv"), profile.to_csv())?;
                fs::write(dir.join("fit.json"), report.to_json() + "\n")?;
            }
            eprintln!(
                "{} centers, r in [{}, {}]",
                profile.centers_sampled,
                profile.radii.first().copied().unwrap_or(0),
                profile.radii.last().copied().unwrap_or(0)
            );
            emit(&report.to_json())?;
        }
    }
    Ok(())
}

fn components(a: ComponentsArgs) -> Result<()> {
    let set = load_points(&a.input)?.points;
    let census = connected_components(&set, a.adjacency.adjacency());
    let histogram: BTreeMap<String, usize> = census
        .size_histogram()
        .into_iter()
        .map(|(size, count)| (size.to_string(), count))
        .collect();
    let singleton_area = if census.total_points == 0 {
        0.0
    } else {
        census.singleton_count as f64 / census.total_points as f64
    };
    let summary = serde_json::json!({
        "adjacency": a.adjacency.0,
        "total_points": census.total_points,
        "component_count": census.component_count,
        "singleton_count": census.singleton_count,
        "largest_component": census.component_sizes.first().copied().unwrap_or(0),
        "singleton_area_fraction": singleton_area,
        "diameter": if set.is_empty() { 0.0 } else { diameter::<f64>(&set)? },
        "size_histogram": histogram,
    });
    emit(&serde_json::to_string_pretty(&summary)?)?;
    Ok(())
}

fn plot_data(a: PlotDataArgs) -> Result<()> {
    let report = FitReport::load(&a.fit).with_context(|| format!("reading {}", a.fit.display()))?;
    let written = match (&a.records, &a.profile) {
        (Some(path), None) => {
            let records = read_records_file(path)?;
            emit_plot_data(&a.out, PlotSource::Records(&records), &report)?
        }
        (None, Some(path)) => {
            let profile = read_profile(path)?;
            emit_plot_data(&a.out, PlotSource::Profile(&profile), &report)?
        }
        _ => unreachable!("clap requires exactly one data source"),
    };
    for path in written {
        emit(&path.display().to_string())?;
    }
    Ok(())
}

fn read_profile(path: &Path) -> Result<AveragingProfile<f64>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(AveragingProfile::from_csv(&text)?)
}
