//! Declarative experiment runner behind the `spinlab` binary.
//!
//! A JSON [`ExperimentConfig`] names one experiment and its sweep; [`run`]
//! splits the sweep into independent cells, evaluates them on a rayon pool,
//! and writes CSV/JSON datasets plus a `manifest.json` with checksums.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analysis::{
    basis_samples, dos_histogram, ee_distribution, fixed_intercept_fit, intercept_scan, Basis, FitResult, InterceptScan, ScalingSample, SectorChoice,
};
use crate::classical::{classify_zone, ZoneReport};
use crate::error::SpinError;
use crate::lmg::{build_parity_block, LmgParams};
use crate::symspace::Bipartition;

/// Failures of a run, grouped by exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("task {task} failed: {error}")]
    Task { task: String, error: SpinError },
    #[error(transparent)]
    Numeric(#[from] SpinError),
    #[error("I/O error on {}: {error}", path.display())]
    Io { path: PathBuf, error: std::io::Error },
}

impl CliError {
    /// 2 for configuration, 3 for numeric or domain failures, 4 for I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Task { .. } | CliError::Numeric(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    fn io(path: &Path, error: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            error,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    DickeAverage,
    SuperpositionAverage,
    LmgSpectrum,
    ScalingFit,
    C0Profile,
    Distribution,
    Zones,
}

fn default_fractions() -> Vec<f64> {
    vec![0.5]
}

fn default_bins() -> usize {
    101
}

fn default_intercept() -> f64 {
    0.5
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    /// `[gamma_x, gamma_y, h]` triples.
    #[serde(default)]
    pub params: Vec<[f64; 3]>,
    #[serde(default)]
    pub sizes: Vec<usize>,
    #[serde(default = "default_fractions")]
    pub fractions: Vec<f64>,
    #[serde(default)]
    pub sector: SectorChoice,
    /// `[min, max, step]` of the intercept scan attached to every fit.
    #[serde(default)]
    pub intercept_scan: Option<[f64; 3]>,
    /// Fixed intercept of the reported fit.
    #[serde(default = "default_intercept")]
    pub intercept: f64,
    #[serde(default = "default_bins")]
    pub bins: usize,
    pub output_dir: PathBuf,
    /// Worker count; all cores when absent.
    #[serde(default)]
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let config: Self =
            serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn lmg_params(&self) -> CliResult<Vec<LmgParams>> {
        self.params
            .iter()
            .map(|&[gx, gy, h]| {
                LmgParams::new(gx, gy, h).map_err(|e| CliError::Config(e.to_string()))
            })
            .collect()
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = |msg: String| Err(CliError::Config(msg));
        self.lmg_params()?;
        let needs_params = !matches!(
            self.experiment,
            ExperimentKind::DickeAverage | ExperimentKind::SuperpositionAverage | ExperimentKind::C0Profile
        );
        if needs_params && self.params.is_empty() {
            return bad(format!("{:?} needs at least one parameter set", self.experiment));
        }
        if self.experiment != ExperimentKind::Zones {
            if self.sizes.is_empty() {
                return bad("sizes must not be empty".into());
            }
            if self.fractions.is_empty() {
                return bad("fractions must not be empty".into());
            }
        }
        for &n in &self.sizes {
            if n < 2 || n % 2 != 0 {
                return bad(format!("size {n} must be even and at least 2"));
            }
            for &p in &self.fractions {
                Bipartition::from_fraction(n, p)
                    .map_err(|e| CliError::Config(format!("N = {n}, p = {p}: {e}")))?;
            }
        }
        if let Some([min, max, step]) = self.intercept_scan {
            if !(min < max && step > 0.0 && step.is_finite()) {
                return bad(format!("intercept scan {min}:{max}:{step} needs min < max and step > 0"));
            }
        }
        if !self.intercept.is_finite() {
            return bad("intercept must be finite".into());
        }
        if self.bins == 0 {
            return bad("bins must be positive".into());
        }
        if self.threads == Some(0) {
            return bad("threads must be positive".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaskTiming {
    pub task: String,
    pub wall_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FileRecord {
    pub path: String,
    pub sha256: String,
    pub bytes: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub version: String,
    pub config: ExperimentConfig,
    pub threads: usize,
    pub tasks: Vec<TaskTiming>,
    pub files: Vec<FileRecord>,
}

/// One fit entry of `fit.json`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub basis: String,
    pub fraction: f64,
    pub a: f64,
    pub b: f64,
    pub r2: f64,
    pub one_minus_r2: f64,
    pub one_minus_r2_uncentered: f64,
    pub scan: Vec<ScanRow>,
    pub best_scan_a: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub a: f64,
    pub b: f64,
    pub r2: f64,
    pub one_minus_r2: f64,
}

impl FitReport {
    fn new(basis: String, fraction: f64, fit: FitResult, scan: Option<InterceptScan>) -> Self {
        let best_scan_a = scan.as_ref().map(|s| s.best_fit().intercept_a);
        let scan = scan
            .map(|s| {
                s.fits
                    .iter()
                    .map(|f| ScanRow {
                        a: f.intercept_a,
                        b: f.slope_b,
                        r2: f.r_squared,
                        one_minus_r2: f.one_minus_r2,
                    })
                    .collect()
            })
            .unwrap_or_default();
        Self {
            basis,
            fraction,
            a: fit.intercept_a,
            b: fit.slope_b,
            r2: fit.r_squared,
            one_minus_r2: fit.one_minus_r2,
            one_minus_r2_uncentered: fit.one_minus_r2_uncentered,
            scan,
            best_scan_a,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitFile {
    pub fits: Vec<FitReport>,
}

/// Shortest decimal that parses back to the same `f64`.
pub fn format_float(x: f64) -> String {
    format!("{x:?}")
}

/// CSV body under construction; non-finite numbers are rejected.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

enum Cell {
    Text(String),
    Int(usize),
    Float(f64),
}

impl Table {
    fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, cells: Vec<Cell>) -> CliResult<()> {
        let row = cells
            .into_iter()
            .map(|c| match c {
                Cell::Text(s) => Ok(s),
                Cell::Int(i) => Ok(i.to_string()),
                Cell::Float(x) if x.is_finite() => Ok(format_float(x)),
                Cell::Float(x) => Err(CliError::Numeric(SpinError::Domain(format!(
                    "non-finite value {x} in output"
                )))),
            })
            .collect::<CliResult<Vec<_>>>()?;
        self.rows.push(row);
        Ok(())
    }

    fn to_bytes(&self) -> CliResult<Vec<u8>> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| CliError::Numeric(SpinError::Consistency(e.to_string()));
        writer.write_record(&self.header).map_err(csv_err)?;
        for row in &self.rows {
            writer.write_record(row).map_err(csv_err)?;
        }
        writer
            .into_inner()
            .map_err(|e| CliError::Numeric(SpinError::Consistency(e.to_string())))
    }
}

/// Files produced by a run, keyed by name.
#[derive(Default)]
struct Outputs {
    files: BTreeMap<String, Vec<u8>>,
}

impl Outputs {
    fn csv(&mut self, name: String, table: &Table) -> CliResult<()> {
        self.files.insert(name, table.to_bytes()?);
        Ok(())
    }

    fn json<T: Serialize>(&mut self, name: String, value: &T) -> CliResult<()> {
        let mut bytes = serde_json::to_vec_pretty(value)
            .map_err(|e| CliError::Numeric(SpinError::Consistency(e.to_string())))?;
        bytes.push(b'\n');
        self.files.insert(name, bytes);
        Ok(())
    }
}

fn basis_column(basis: &Basis) -> String {
    basis.to_string()
}

fn scaling_table(samples: &[ScalingSample]) -> CliResult<Table> {
    let mut table = Table::new(&["basis", "N", "p", "s_max", "avg_ee", "normalized"]);
    for s in samples {
        table.push(vec![
            Cell::Text(basis_column(&s.basis)),
            Cell::Int(s.n_qubits),
            Cell::Float(s.fraction),
            Cell::Float(s.s_max),
            Cell::Float(s.avg_ee),
            Cell::Float(s.normalized),
        ])?;
    }
    Ok(table)
}

/// A scaling point tagged with its basis label.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPoint {
    pub basis: String,
    pub n_qubits: usize,
    pub fraction: f64,
    pub s_max: f64,
    pub normalized: f64,
}

impl From<&ScalingSample> for LabeledPoint {
    fn from(s: &ScalingSample) -> Self {
        Self {
            basis: basis_column(&s.basis),
            n_qubits: s.n_qubits,
            fraction: s.fraction,
            s_max: s.s_max,
            normalized: s.normalized,
        }
    }
}

/// Fits every `(basis, p)` series with at least two sizes, in order of first
/// appearance.
pub fn fit_series(
    points: &[LabeledPoint],
    intercept: f64,
    scan: Option<[f64; 3]>,
) -> CliResult<Vec<FitReport>> {
    let mut groups: Vec<(&str, f64, Vec<(f64, f64)>)> = Vec::new();
    for pt in points {
        let xy = (1.0 / pt.s_max, pt.normalized);
        match groups
            .iter_mut()
            .find(|(b, p, _)| *b == pt.basis && *p == pt.fraction)
        {
            Some(group) => group.2.push(xy),
            None => groups.push((&pt.basis, pt.fraction, vec![xy])),
        }
    }
    groups
        .into_iter()
        .filter(|(_, _, xy)| xy.len() >= 2)
        .map(|(basis, p, xy)| {
            let fit = fixed_intercept_fit(&xy, intercept)?;
            let scan = scan
                .map(|[min, max, step]| intercept_scan(&xy, min, max, step))
                .transpose()?;
            Ok(FitReport::new(basis.to_string(), p, fit, scan))
        })
        .collect()
}

struct Task<T> {
    name: String,
    result: T,
    seconds: f64,
}

/// Runs `f` over `items` in parallel, keeping input order and naming the
/// first failing task.
fn run_tasks<I, T, F>(items: Vec<(String, I)>, f: F) -> CliResult<Vec<Task<T>>>
where
    I: Send,
    T: Send,
    F: Fn(I) -> crate::Result<T> + Sync,
{
    items
        .into_par_iter()
        .map(|(name, item)| {
            let start = Instant::now();
            match f(item) {
                Ok(result) => Ok(Task {
                    name,
                    result,
                    seconds: start.elapsed().as_secs_f64(),
                }),
                Err(error) => Err(CliError::Task { task: name, error }),
            }
        })
        .collect()
}

fn cell_name(params: Option<&LmgParams>, n: usize) -> String {
    match params {
        Some(p) => format!("params={p} N={n}"),
        None => format!("N={n}"),
    }
}

/// Runs `config` and writes its outputs and manifest into `output_dir`.
pub fn run(config: &ExperimentConfig) -> CliResult<RunManifest> {
    config.validate()?;
    let threads = config.threads.unwrap_or_else(rayon::current_num_threads);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Config(format!("cannot start {threads} workers: {e}")))?;
    let (outputs, tasks) = pool.install(|| execute(config))?;

    let dir = &config.output_dir;
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut files = Vec::new();
    for (name, bytes) in &outputs.files {
        let path = dir.join(name);
        fs::write(&path, bytes).map_err(|e| CliError::io(&path, e))?;
        files.push(FileRecord {
            path: name.clone(),
            sha256: hex_digest(bytes),
            bytes: bytes.len(),
        });
    }
    let manifest = RunManifest {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        threads,
        tasks,
        files,
    };
    let path = dir.join("manifest.json");
    let mut bytes = serde_json::to_vec_pretty(&manifest)
        .map_err(|e| CliError::Numeric(SpinError::Consistency(e.to_string())))?;
    bytes.push(b'\n');
    fs::write(&path, bytes).map_err(|e| CliError::io(&path, e))?;
    Ok(manifest)
}

pub fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn timings<T>(tasks: &[Task<T>]) -> Vec<TaskTiming> {
    tasks
        .iter()
        .map(|t| TaskTiming {
            task: t.name.clone(),
            wall_seconds: t.seconds,
        })
        .collect()
}

fn execute(config: &ExperimentConfig) -> CliResult<(Outputs, Vec<TaskTiming>)> {
    let params = config.lmg_params()?;
    let mut out = Outputs::default();
    let timing = match config.experiment {
        ExperimentKind::DickeAverage
        | ExperimentKind::SuperpositionAverage
        | ExperimentKind::ScalingFit
        | ExperimentKind::C0Profile => {
            let bases: Vec<Basis> = match config.experiment {
                ExperimentKind::DickeAverage => vec![Basis::Dicke],
                ExperimentKind::SuperpositionAverage => vec![Basis::Superposition],
                ExperimentKind::C0Profile if params.is_empty() => vec![Basis::Dicke],
                _ => params
                    .iter()
                    .map(|&p| Basis::Lmg {
                        params: p,
                        sector: config.sector,
                    })
                    .collect(),
            };
            let cells: Vec<(String, (Basis, usize))> = bases
                .iter()
                .flat_map(|&basis| {
                    config
                        .sizes
                        .iter()
                        .map(move |&n| (format!("{basis} N={n}"), (basis, n)))
                })
                .collect();
            let tasks = run_tasks(cells, |(basis, n)| basis_samples(basis, n, &config.fractions))?;
            let samples: Vec<ScalingSample> =
                tasks.iter().flat_map(|t| t.result.iter().cloned()).collect();
            out.csv("scaling.csv".into(), &scaling_table(&samples)?)?;
            if config.experiment != ExperimentKind::C0Profile {
                let points: Vec<LabeledPoint> = samples.iter().map(LabeledPoint::from).collect();
                let fits = fit_series(&points, config.intercept, config.intercept_scan)?;
                out.json("fit.json".into(), &FitFile { fits })?;
            }
            timings(&tasks)
        }
        ExperimentKind::LmgSpectrum => {
            let cells = lmg_cells(&params, &config.sizes);
            let tasks = run_tasks(cells, |(p, n)| {
                let mut rows = Vec::new();
                for &parity in config.sector.parities() {
                    let block = build_parity_block(&p, n, parity)?;
                    let dec = block.solve(false)?;
                    rows.extend(dec.values.into_iter().map(|e| (parity, e)));
                }
                rows.sort_by(|a, b| a.1.total_cmp(&b.1));
                Ok((p, n, rows))
            })?;
            let mut table = Table::new(&[
                "gamma_x", "gamma_y", "h", "N", "sector", "index", "energy", "scaled_energy",
            ]);
            for task in &tasks {
                let (p, n, rows) = &task.result;
                let j = *n as f64 / 2.0;
                for (i, (parity, e)) in rows.iter().enumerate() {
                    table.push(vec![
                        Cell::Float(p.gamma_x),
                        Cell::Float(p.gamma_y),
                        Cell::Float(p.h),
                        Cell::Int(*n),
                        Cell::Text(parity.as_str().into()),
                        Cell::Int(i),
                        Cell::Float(*e),
                        Cell::Float(e / j),
                    ])?;
                }
            }
            out.csv("spectrum.csv".into(), &table)?;
            timings(&tasks)
        }
        ExperimentKind::Distribution => {
            let mut cells = Vec::new();
            for (name, (p, n)) in lmg_cells(&params, &config.sizes) {
                for &f in &config.fractions {
                    cells.push((format!("{name} p={f}"), (p, n, f)));
                }
            }
            let single = cells.len() == 1;
            let tasks = run_tasks(cells, |(p, n, f)| {
                let profile = ee_distribution(&p, n, f, config.sector)?;
                let dos = dos_histogram(&profile.scaled_energies, config.bins)?;
                Ok((profile, dos))
            })?;
            for (i, task) in tasks.iter().enumerate() {
                let (profile, dos) = &task.result;
                let suffix = if single { String::new() } else { format!("_{i}") };
                let mut table = Table::new(&["index", "energy", "scaled_energy", "entropy"]);
                for k in 0..profile.len() {
                    table.push(vec![
                        Cell::Int(k),
                        Cell::Float(profile.energies[k]),
                        Cell::Float(profile.scaled_energies[k]),
                        Cell::Float(profile.entropies[k]),
                    ])?;
                }
                out.csv(format!("profile{suffix}.csv"), &table)?;
                let mut table = Table::new(&["bin_lo", "bin_hi", "count"]);
                for b in 0..dos.counts.len() {
                    let (lo, hi) = dos.bin(b);
                    table.push(vec![Cell::Float(lo), Cell::Float(hi), Cell::Int(dos.counts[b])])?;
                }
                out.csv(format!("dos{suffix}.csv"), &table)?;
            }
            timings(&tasks)
        }
        ExperimentKind::Zones => {
            let cells = params
                .iter()
                .map(|&p| (format!("params={p}"), p))
                .collect();
            let tasks = run_tasks(cells, |p| classify_zone(&p))?;
            let reports: Vec<&ZoneReport> = tasks.iter().map(|t| &t.result).collect();
            out.json("zones.json".into(), &reports)?;
            timings(&tasks)
        }
    };
    Ok((out, timing))
}

fn lmg_cells(params: &[LmgParams], sizes: &[usize]) -> Vec<(String, (LmgParams, usize))> {
    params
        .iter()
        .flat_map(|&p| sizes.iter().map(move |&n| (cell_name(Some(&p), n), (p, n))))
        .collect()
}

/// Reads a `scaling.csv` and fits each `(basis, p)` series.
pub fn fit_scaling_csv(
    path: &Path,
    intercept: f64,
    scan: Option<[f64; 3]>,
) -> CliResult<FitFile> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let points = parse_scaling_csv(&text)?;
    let fits = fit_series(&points, intercept, scan)?;
    if fits.is_empty() {
        return Err(CliError::Numeric(SpinError::DegenerateFit(
            "no series with at least two sizes".into(),
        )));
    }
    Ok(FitFile { fits })
}

#[derive(Debug, Deserialize)]
struct ScalingRow {
    basis: String,
    #[serde(rename = "N")]
    n: usize,
    p: f64,
    s_max: f64,
    normalized: f64,
}

/// Points of a `scaling.csv` body.
pub fn parse_scaling_csv(text: &str) -> CliResult<Vec<LabeledPoint>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    reader
        .deserialize::<ScalingRow>()
        .map(|row| {
            let row = row.map_err(|e| CliError::Config(format!("scaling.csv: {e}")))?;
            Ok(LabeledPoint {
                basis: row.basis,
                n_qubits: row.n,
                fraction: row.p,
                s_max: row.s_max,
                normalized: row.normalized,
            })
        })
        .collect()
}

/// Parses `min:max:step`.
pub fn parse_scan(text: &str) -> CliResult<[f64; 3]> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Config(format!(
            "scan '{text}' must look like min:max:step"
        )));
    }
    let mut values = [0.0; 3];
    for (v, part) in values.iter_mut().zip(&parts) {
        *v = part
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("'{part}' in scan '{text}' is not a number")))?;
    }
    if !(values[0] < values[1] && values[2] > 0.0) {
        return Err(CliError::Config(format!(
            "scan '{text}' needs min < max and step > 0"
        )));
    }
    Ok(values)
}

/// Zone report for a single parameter set.
pub fn zones_for(gamma_x: f64, gamma_y: f64, h: f64) -> CliResult<ZoneReport> {
    let params = LmgParams::new(gamma_x, gamma_y, h).map_err(|e| CliError::Config(e.to_string()))?;
    Ok(classify_zone(&params)?)
}
