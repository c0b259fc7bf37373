//! Reproducible Monte Carlo harness.
//!
//! An [`ExperimentConfig`] expands into one cell per `n`. Trial `i` of a cell
//! uses the seed `derive_seed(master, [cell_key, i])`, so any record can be
//! recomputed in isolation. Results are appended to `results.jsonl` next to a
//! `manifest.json` holding the config and its SHA-256 hash; re-running skips
//! trials already on disk.
//!
//! `results.jsonl` holds one [`TrialRecord`] per line:
//!
//! | field         | meaning                                              |
//! |---------------|------------------------------------------------------|
//! | `config_hash` | hex SHA-256 of the config's canonical JSON           |
//! | `cell`        | `{model, m1, m2, n}`                                 |
//! | `trial`       | index within the cell                                |
//! | `seed`        | derived seed the trial ran with                      |
//! | `success`     | property verdict                                     |
//! | `stats`       | property-specific statistics (see [`Property`])      |
//! | `elapsed_ms`  | wall time; the only field that is not reproducible   |

use std::collections::{BTreeMap, HashSet};
use std::fmt::{self, Write as _};
use std::fs::{self, OpenOptions};
use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analysis::{expansion_check, good_vertices_check, oldest_degree_bound_check};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::generate::{generate, project, GenParams};
use crate::graph::{simple_view, Model, SimpleView, Vertex};
use crate::hamilton::{posa_search, two_round_hamilton_sim, HamStatus};
use crate::lowerbound::{lonely_stats, no_pm_certificate, sweet_cherries};
use crate::matching::{max_matching, two_round_matching_sim, SimStatus};
use crate::rng::derive_seed;

/// Environment variable holding the worker count.
pub const THREADS_ENV: &str = "ATTACHLAB_THREADS";

pub const RESULTS_FILE: &str = "results.jsonl";
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LemmaName {
    TotalWeight,
    Expansion,
    GoodOld,
    EdgeAbsence,
}

impl LemmaName {
    pub fn tag(self) -> &'static str {
        match self {
            LemmaName::TotalWeight => "total_weight",
            LemmaName::Expansion => "expansion",
            LemmaName::GoodOld => "goodold",
            LemmaName::EdgeAbsence => "edge_absence",
        }
    }
}

impl FromStr for LemmaName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "total_weight" => LemmaName::TotalWeight,
            "expansion" => LemmaName::Expansion,
            "goodold" => LemmaName::GoodOld,
            "edge_absence" => LemmaName::EdgeAbsence,
            other => return Err(Error::UnknownProperty(format!("lemma:{other}"))),
        })
    }
}

/// What a trial measures.
///
/// Statistics recorded per trial:
/// - `pm`: `[ν]`
/// - `hc`: `[longest path length]`
/// - `pm-sim`: `[initial ν, final ν, steps, hits]`
/// - `hc-sim`: `[initial path length, steps, successes]`
/// - `lowerbound`: `[A/n, B/n, C/n, D/n, sweet cherries]`
/// - `lemma:total_weight`: `[violations, max ratio]`
/// - `lemma:expansion`: `[violator size or 0]`
/// - `lemma:goodold`: `[count, y·k]`
/// - `lemma:edge_absence`: `[|W|]`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    Pm,
    Hc,
    PmSim,
    HcSim,
    LowerBound,
    Lemma(LemmaName),
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "pm" => Property::Pm,
            "hc" => Property::Hc,
            "pm-sim" => Property::PmSim,
            "hc-sim" => Property::HcSim,
            "lowerbound" => Property::LowerBound,
            _ => match s.strip_prefix("lemma:") {
                Some(name) => Property::Lemma(name.parse()?),
                None => return Err(Error::UnknownProperty(s.to_string())),
            },
        })
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::Pm => f.write_str("pm"),
            Property::Hc => f.write_str("hc"),
            Property::PmSim => f.write_str("pm-sim"),
            Property::HcSim => f.write_str("hc-sim"),
            Property::LowerBound => f.write_str("lowerbound"),
            Property::Lemma(l) => write!(f, "lemma:{}", l.tag()),
        }
    }
}

fn default_budget() -> u64 {
    1_000_000
}
fn default_k_max() -> usize {
    3
}
fn default_random_budget() -> usize {
    50
}
fn default_a() -> f64 {
    10.0
}
fn default_c_const() -> f64 {
    20.0
}
fn default_c() -> f64 {
    0.25
}
fn default_alpha() -> f64 {
    0.0538
}
fn default_ell() -> u8 {
    1
}
fn default_x() -> f64 {
    0.22791
}
fn default_y() -> f64 {
    0.020063
}
fn default_d() -> f64 {
    0.387967
}
fn default_k() -> usize {
    50
}

/// Algorithm knobs; every field has a default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgoParams {
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default = "default_k_max")]
    pub k_max: usize,
    #[serde(default = "default_random_budget")]
    pub random_budget: usize,
    /// Constant of the total-degree bound.
    #[serde(default = "default_a")]
    pub a: f64,
    /// Constant of the all-neighbours-in-`Q` bound.
    #[serde(default = "default_c_const")]
    pub c_const: f64,
    /// Old/young cutoff fraction.
    #[serde(default = "default_c")]
    pub c: f64,
    /// `None` means `⌈ln n⌉`.
    #[serde(default)]
    pub omega: Option<usize>,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_ell")]
    pub ell: u8,
    #[serde(default = "default_x")]
    pub x: f64,
    #[serde(default = "default_y")]
    pub y: f64,
    #[serde(default = "default_d")]
    pub d: f64,
    #[serde(default = "default_k")]
    pub k: usize,
}

impl Default for AlgoParams {
    fn default() -> Self {
        serde_json::from_str("{}").expect("all fields defaulted")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub name: String,
    pub model: Model,
    /// Uncoloured out-degree; exclusive with `m1`/`m2`.
    #[serde(default)]
    pub m: Option<u32>,
    #[serde(default)]
    pub m1: Option<u32>,
    #[serde(default)]
    pub m2: Option<u32>,
    pub n: Vec<u32>,
    pub trials: u32,
    pub property: String,
    pub seed: u64,
    /// Replace generated graphs by a built-in fixture (`"cycle"`).
    #[serde(default)]
    pub fixture: Option<String>,
    #[serde(default)]
    pub params: AlgoParams,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellKey {
    pub model: Model,
    pub m1: u32,
    pub m2: u32,
    pub n: u32,
}

impl CellKey {
    /// Stable 64-bit key used in seed derivation.
    pub fn key(&self) -> u64 {
        let text = format!("{}:{}:{}:{}", self.model.tag(), self.m1, self.m2, self.n);
        let digest = Sha256::digest(text.as_bytes());
        u64::from_le_bytes(digest[..8].try_into().unwrap())
    }
}

impl fmt::Display for CellKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} m1={} m2={} n={}", self.model, self.m1, self.m2, self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub config_hash: String,
    pub cell: CellKey,
    pub trial: u32,
    pub seed: u64,
    pub success: bool,
    pub stats: Vec<f64>,
    pub elapsed_ms: f64,
}

impl TrialRecord {
    /// Equality ignoring `elapsed_ms`.
    pub fn same_outcome(&self, other: &TrialRecord) -> bool {
        self.config_hash == other.config_hash
            && self.cell == other.cell
            && self.trial == other.trial
            && self.seed == other.seed
            && self.success == other.success
            && self.stats == other.stats
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub cell: CellKey,
    pub trials: u32,
    pub successes: u32,
    pub frequency: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub mean_stats: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    pub name: String,
    pub property: String,
    pub config_hash: String,
    pub cells: Vec<CellSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub config_hash: String,
    pub config: ExperimentConfig,
}

/// Wilson score interval at 95% confidence.
pub fn wilson_interval(successes: u32, trials: u32) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    const Z: f64 = 1.959_963_984_540_054;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z * Z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = Z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

/// Rayon pool sized by `ATTACHLAB_THREADS` (default: all cores).
pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn property(&self) -> Result<Property> {
        self.property.parse()
    }

    /// `(m1, m2, coloured)`.
    pub fn split(&self) -> Result<(u32, u32, bool)> {
        match (self.m, self.m1, self.m2) {
            (Some(m), None, None) => Ok((m, 0, false)),
            (None, Some(a), Some(b)) => Ok((a, b, true)),
            (None, Some(a), None) => Ok((a, 0, true)),
            _ => Err(Error::param("give either m or m1 (with optional m2)")),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::param("trials must be at least 1"));
        }
        if self.n.is_empty() || self.n.contains(&0) {
            return Err(Error::param("n must be a non-empty list of positive sizes"));
        }
        let prop = self.property()?;
        self.split()?;
        if let Some(f) = &self.fixture {
            if f != "cycle" {
                return Err(Error::param(format!("unknown fixture `{f}`")));
            }
            if !matches!(prop, Property::Pm | Property::Hc) {
                return Err(Error::param("fixtures only apply to pm and hc"));
            }
        }
        Ok(())
    }

    pub fn hash(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serialises");
        hex(&Sha256::digest(canonical.as_bytes()))
    }

    pub fn cells(&self) -> Result<Vec<CellKey>> {
        let (m1, m2, _) = self.split()?;
        Ok(self
            .n
            .iter()
            .map(|&n| CellKey {
                model: self.model,
                m1,
                m2,
                n,
            })
            .collect())
    }
}

fn omega_for(p: &AlgoParams, n: u32) -> usize {
    p.omega.unwrap_or_else(|| (n as f64).ln().ceil().max(1.0) as usize)
}

/// Runs one trial; returns `(success, stats)`.
pub fn run_trial(cfg: &ExperimentConfig, cell: &CellKey, seed: u64) -> Result<(bool, Vec<f64>)> {
    let prop = cfg.property()?;
    let (_, _, coloured) = cfg.split()?;
    let p = &cfg.params;
    let gen = || {
        let params = if coloured {
            GenParams::coloured(cell.model, cell.n, cell.m1, cell.m2, seed)
        } else {
            GenParams::new(cell.model, cell.n, cell.m1, seed)
        };
        generate(&params)
    };
    let view = || -> Result<SimpleView> {
        match cfg.fixture.as_deref() {
            Some(_) => Ok(fixtures::cycle(cell.n as usize)),
            None => Ok(simple_view(&gen()?)),
        }
    };
    Ok(match prop {
        Property::Pm => {
            let v = view()?;
            let nu = max_matching(&v).size();
            (nu == v.n() / 2, vec![nu as f64])
        }
        Property::Hc => {
            let v = view()?;
            match posa_search(&v, p.budget, seed) {
                Ok(out) => (out.cycle.is_some(), vec![out.longest.len() as f64]),
                Err(Error::Disconnected) => (false, vec![0.0]),
                Err(e) => return Err(e),
            }
        }
        Property::PmSim => {
            let t = two_round_matching_sim(&gen()?)?;
            (
                t.status == SimStatus::Perfect,
                vec![
                    t.initial_size as f64,
                    t.final_size() as f64,
                    t.steps.len() as f64,
                    t.hits() as f64,
                ],
            )
        }
        Property::HcSim => match two_round_hamilton_sim(&gen()?, p.budget, seed) {
            Ok(t) => (
                t.status == HamStatus::Hamiltonian,
                vec![t.initial_len as f64, t.steps.len() as f64, t.successes() as f64],
            ),
            Err(Error::Disconnected) => (false, vec![0.0, 0.0, 0.0]),
            Err(e) => return Err(e),
        },
        Property::LowerBound => {
            let g = gen()?;
            let s = lonely_stats(&g, p.c)?;
            let cherries = sweet_cherries(&g)?.count;
            let witness = no_pm_certificate(&g, p.c)?;
            let n = s.n as f64;
            (
                witness.is_some(),
                vec![
                    s.a_n as f64 / n,
                    s.b_n as f64 / n,
                    s.c_n as f64 / n,
                    s.d_n as f64 / n,
                    cherries as f64,
                ],
            )
        }
        Property::Lemma(LemmaName::TotalWeight) => {
            let g = gen()?;
            let ks: Vec<usize> = [1, 10, 100]
                .into_iter()
                .filter(|&k| k <= cell.n as usize)
                .collect();
            let r = oldest_degree_bound_check(&g, p.a, omega_for(p, cell.n), &ks, 0, seed)?;
            let max = r.buckets.iter().map(|b| b.max_ratio).fold(0.0, f64::max);
            (r.violations.is_empty(), vec![r.violations.len() as f64, max])
        }
        Property::Lemma(LemmaName::Expansion) => {
            let g = gen()?;
            let g = if g.is_coloured() { project(&g, 1)? } else { g };
            let v = simple_view(&g);
            let bad = expansion_check(&v, p.alpha, p.ell, p.k_max, p.random_budget, seed);
            (bad.is_none(), vec![bad.map_or(0, |s| s.len()) as f64])
        }
        Property::Lemma(LemmaName::GoodOld) => {
            let g = gen()?;
            let g = if g.is_coloured() { project(&g, 1)? } else { g };
            let k = p.k.min(cell.n as usize).max(1);
            let r = good_vertices_check(&g, p.x, p.d, k)?;
            let cap = p.y * k as f64;
            (r.count as f64 <= cap, vec![r.count as f64, cap])
        }
        Property::Lemma(LemmaName::EdgeAbsence) => {
            // v = n, W = the older half of [n-1]; success = no edge between them
            let g = gen()?;
            let g = if g.is_coloured() { project(&g, 1)? } else { g };
            let v = cell.n;
            let w = (v.saturating_sub(1) / 2) as Vertex;
            let absent = v < 2 || !g.stems_of(v).iter().any(|&t| t <= w && t < v);
            (absent, vec![w as f64])
        }
    })
}

fn read_records(path: &Path) -> Result<Vec<TrialRecord>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let text =
        fs::read_to_string(path).map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::Parse {
                line: i + 1,
                msg: format!("{}: {e}", path.display()),
            })
        })
        .collect()
}

fn summarise(cells: &[CellKey], records: &[TrialRecord]) -> Vec<CellSummary> {
    cells
        .iter()
        .map(|cell| {
            let mut rs: Vec<&TrialRecord> = records.iter().filter(|r| r.cell == *cell).collect();
            rs.sort_by_key(|r| r.trial);
            let trials = rs.len() as u32;
            let successes = rs.iter().filter(|r| r.success).count() as u32;
            let width = rs.iter().map(|r| r.stats.len()).max().unwrap_or(0);
            let mean_stats = (0..width)
                .map(|i| {
                    let vals: Vec<f64> = rs.iter().filter_map(|r| r.stats.get(i).copied()).collect();
                    vals.iter().sum::<f64>() / vals.len().max(1) as f64
                })
                .collect();
            let (ci_low, ci_high) = wilson_interval(successes, trials);
            CellSummary {
                cell: *cell,
                trials,
                successes,
                frequency: if trials == 0 { 0.0 } else { successes as f64 / trials as f64 },
                ci_low,
                ci_high,
                mean_stats,
            }
        })
        .collect()
}

/// Executes every cell. With `out` set, results are persisted and trials
/// already present for this config hash are skipped.
pub fn run_experiment(cfg: &ExperimentConfig, out: Option<&Path>) -> Result<ResultTable> {
    cfg.validate()?;
    let hash = cfg.hash();
    let cells = cfg.cells()?;
    let results_path = out.map(|d| d.join(RESULTS_FILE));

    let mut records = Vec::new();
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| Error::io(format!("creating {}", dir.display()), e))?;
        let manifest_path = dir.join(MANIFEST_FILE);
        if manifest_path.exists() {
            let text = fs::read_to_string(&manifest_path)
                .map_err(|e| Error::io(format!("reading {}", manifest_path.display()), e))?;
            let old: Manifest = serde_json::from_str(&text)?;
            if old.config_hash != hash {
                return Err(Error::Precondition(format!(
                    "{} belongs to experiment {}, not {hash}",
                    dir.display(),
                    old.config_hash
                )));
            }
        } else {
            let manifest = Manifest {
                config_hash: hash.clone(),
                config: cfg.clone(),
            };
            fs::write(&manifest_path, serde_json::to_string_pretty(&manifest)?)
                .map_err(|e| Error::io(format!("writing {}", manifest_path.display()), e))?;
        }
        records = read_records(results_path.as_ref().unwrap())?
            .into_iter()
            .filter(|r| r.config_hash == hash)
            .collect();
    }
    let done: HashSet<(CellKey, u32)> = records.iter().map(|r| (r.cell, r.trial)).collect();

    let pool = thread_pool()?;
    for cell in &cells {
        let todo: Vec<u32> = (0..cfg.trials).filter(|t| !done.contains(&(*cell, *t))).collect();
        if todo.is_empty() {
            continue;
        }
        let fresh: Vec<TrialRecord> = pool.install(|| {
            todo.par_iter()
                .map(|&trial| {
                    let seed = derive_seed(cfg.seed, &[cell.key(), trial as u64]);
                    let start = Instant::now();
                    let (success, stats) = run_trial(cfg, cell, seed).map_err(|e| {
                        Error::Precondition(format!("cell {cell}, trial {trial}: {e}"))
                    })?;
                    Ok(TrialRecord {
                        config_hash: hash.clone(),
                        cell: *cell,
                        trial,
                        seed,
                        success,
                        stats,
                        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })?;
        if let Some(path) = &results_path {
            let mut file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| Error::io(format!("cell {cell}: opening {}", path.display()), e))?;
            let mut buf = String::new();
            for r in &fresh {
                buf.push_str(&serde_json::to_string(r)?);
                buf.push('\n');
            }
            file.write_all(buf.as_bytes())
                .map_err(|e| Error::io(format!("cell {cell}: appending results"), e))?;
        }
        records.extend(fresh);
    }
    Ok(ResultTable {
        name: cfg.name.clone(),
        property: cfg.property.clone(),
        config_hash: hash,
        cells: summarise(&cells, &records),
    })
}

/// Rebuilds the table of a persisted experiment without running anything.
pub fn load_table(dir: &Path) -> Result<ResultTable> {
    let manifest_path = dir.join(MANIFEST_FILE);
    let text = fs::read_to_string(&manifest_path)
        .map_err(|e| Error::io(format!("reading {}", manifest_path.display()), e))?;
    let manifest: Manifest = serde_json::from_str(&text)?;
    let records: Vec<TrialRecord> = read_records(&dir.join(RESULTS_FILE))?
        .into_iter()
        .filter(|r| r.config_hash == manifest.config_hash)
        .collect();
    let cells = manifest.config.cells()?;
    Ok(ResultTable {
        name: manifest.config.name.clone(),
        property: manifest.config.property.clone(),
        config_hash: manifest.config_hash,
        cells: summarise(&cells, &records),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "md" | "markdown" => Ok(ReportFormat::Markdown),
            other => Err(Error::param(format!("unknown report format `{other}`"))),
        }
    }
}

pub fn render_table(t: &ResultTable, format: ReportFormat) -> String {
    let mut out = String::new();
    let header = [
        "model", "m1", "m2", "n", "trials", "successes", "frequency", "ci_low", "ci_high", "mean_stats",
    ];
    let row = |c: &CellSummary| {
        let stats = c
            .mean_stats
            .iter()
            .map(|s| format!("{s:.6}"))
            .collect::<Vec<_>>()
            .join(" ");
        vec![
            c.cell.model.tag().to_string(),
            c.cell.m1.to_string(),
            c.cell.m2.to_string(),
            c.cell.n.to_string(),
            c.trials.to_string(),
            c.successes.to_string(),
            format!("{:.4}", c.frequency),
            format!("{:.4}", c.ci_low),
            format!("{:.4}", c.ci_high),
            stats,
        ]
    };
    match format {
        ReportFormat::Csv => {
            out.push_str(&header.join(","));
            out.push('\n');
            for c in &t.cells {
                out.push_str(&row(c).join(","));
                out.push('\n');
            }
        }
        ReportFormat::Markdown => {
            let title = if t.name.is_empty() { &t.property } else { &t.name };
            let _ = writeln!(out, "### {title} (`{}`)\n", t.property);
            let _ = writeln!(out, "| {} |", header.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
            for c in &t.cells {
                let _ = writeln!(out, "| {} |", row(c).join(" | "));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentStats {
    pub n: u32,
    pub trials: usize,
    pub counts: Vec<usize>,
    pub mean: f64,
    pub std_dev: f64,
    /// `(1/2) ln n`.
    pub half_log_n: f64,
    /// `Σ_{t ≤ n} 1/(2t−1)`, the exact expectation.
    pub exact_expected: f64,
}

/// Component counts of preferential attachment with `m = 1`.
pub fn component_count_check(n: u32, trials: usize, seed: u64) -> Result<ComponentStats> {
    if trials == 0 {
        return Err(Error::param("trials must be at least 1"));
    }
    let pool = thread_pool()?;
    let counts: Vec<usize> = pool.install(|| {
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let p = GenParams::new(Model::Preferential, n, 1, derive_seed(seed, &[i as u64]));
                generate(&p).map(|g| simple_view(&g).component_count())
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mean = counts.iter().sum::<usize>() as f64 / trials as f64;
    let var = if trials > 1 {
        counts.iter().map(|&c| (c as f64 - mean).powi(2)).sum::<f64>() / (trials - 1) as f64
    } else {
        0.0
    };
    let exact_expected = (1..=n as u64).rev().map(|t| 1.0 / (2 * t - 1) as f64).sum();
    Ok(ComponentStats {
        n,
        trials,
        counts,
        mean,
        std_dev: var.sqrt(),
        half_log_n: 0.5 * (n as f64).ln(),
        exact_expected,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points: usize,
    /// Too few distinct ccdf values to fit a line.
    pub degenerate: bool,
    pub max_degree: u64,
}

/// Least-squares slope of `log P(D ≥ k)` against `log k` for `k` in
/// `[k_min, k_max]` with non-zero ccdf.
pub fn fit_ccdf_slope(degrees: &[u64], k_min: u64, k_max: u64) -> PowerLawFit {
    let total = degrees.len() as f64;
    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    let mut hist = BTreeMap::new();
    for &d in degrees {
        *hist.entry(d).or_insert(0usize) += 1;
    }
    let mut pts = Vec::new();
    let mut at_least = degrees.len();
    let mut iter = hist.iter().peekable();
    for k in 0..=k_max {
        while let Some((&d, &c)) = iter.peek() {
            if d < k {
                at_least -= c;
                iter.next();
            } else {
                break;
            }
        }
        if k >= k_min && at_least > 0 {
            pts.push(((k as f64).ln(), (at_least as f64 / total).ln()));
        }
    }
    let distinct = {
        let mut ys: Vec<u64> = pts.iter().map(|p| p.1.to_bits()).collect();
        ys.sort_unstable();
        ys.dedup();
        ys.len()
    };
    let np = pts.len() as f64;
    let (mx, my) = pts
        .iter()
        .fold((0.0, 0.0), |(a, b), p| (a + p.0 / np, b + p.1 / np));
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let degenerate = distinct < 3 || syy == 0.0 || sxx == 0.0;
    let slope = if degenerate { f64::NAN } else { sxy / sxx };
    PowerLawFit {
        slope,
        intercept: if degenerate { f64::NAN } else { my - slope * mx },
        r_squared: if degenerate { f64::NAN } else { sxy * sxy / (sxx * syy) },
        points: pts.len(),
        degenerate,
        max_degree,
    }
}

/// Pools multigraph degrees of `trials` preferential graphs and fits the
/// ccdf slope over `k ∈ [5, 100]`.
pub fn degree_powerlaw_check(n: u32, m: u32, trials: usize, seed: u64) -> Result<PowerLawFit> {
    if trials == 0 {
        return Err(Error::param("trials must be at least 1"));
    }
    let pool = thread_pool()?;
    let pooled: Vec<Vec<u64>> = pool.install(|| {
        (0..trials)
            .into_par_iter()
            .map(|i| {
                let p = GenParams::new(Model::Preferential, n, m, derive_seed(seed, &[i as u64]));
                generate(&p).map(|g| g.degrees()[1..].to_vec())
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let all: Vec<u64> = pooled.concat();
    Ok(fit_ccdf_slope(&all, 5, 100))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(property: &str) -> ExperimentConfig {
        ExperimentConfig {
            name: "t".into(),
            model: Model::Uniform,
            m: Some(1),
            m1: None,
            m2: None,
            n: vec![30, 60],
            trials: 5,
            property: property.into(),
            seed: 7,
            fixture: None,
            params: AlgoParams::default(),
        }
    }

    #[test]
    fn property_parsing() {
        for p in ["pm", "hc", "pm-sim", "hc-sim", "lowerbound", "lemma:total_weight", "lemma:goodold"] {
            assert_eq!(p.parse::<Property>().unwrap().to_string(), p);
        }
        assert!(matches!("xyz".parse::<Property>(), Err(Error::UnknownProperty(_))));
        assert!(matches!("lemma:nope".parse::<Property>(), Err(Error::UnknownProperty(_))));
    }

    #[test]
    fn wilson_contains_frequency() {
        for (s, t) in [(0, 10), (3, 10), (10, 10), (1, 1), (50, 100)] {
            let (lo, hi) = wilson_interval(s, t);
            let p = s as f64 / t as f64;
            assert!(lo <= p && p <= hi, "{s}/{t}");
        }
    }

    #[test]
    fn uniform_m1_has_no_perfect_matching_at_even_n() {
        let t = run_experiment(&cfg("pm"), None).unwrap();
        assert!(t.cells.iter().all(|c| c.frequency < 0.5));
    }

    #[test]
    fn cycle_fixture_is_hamiltonian() {
        let mut c = cfg("hc");
        c.fixture = Some("cycle".into());
        let t = run_experiment(&c, None).unwrap();
        assert!(t.cells.iter().all(|c| c.frequency == 1.0));
    }

    #[test]
    fn default_params_and_validation() {
        assert_eq!(AlgoParams::default().budget, 1_000_000);
        let mut c = cfg("pm");
        c.trials = 0;
        assert!(c.validate().is_err());
        let mut c = cfg("pm");
        c.m1 = Some(2);
        assert!(c.validate().is_err());
        let mut c = cfg("pm-sim");
        c.fixture = Some("cycle".into());
        assert!(c.validate().is_err());
    }

    #[test]
    fn regular_degrees_are_degenerate() {
        let fit = fit_ccdf_slope(&vec![6; 1000], 5, 100);
        assert!(fit.degenerate);
        let fit = fit_ccdf_slope(&[], 5, 100);
        assert!(fit.degenerate);
    }

    #[test]
    fn exact_component_sum() {
        let s = component_count_check(1, 3, 0).unwrap();
        assert_eq!(s.counts, vec![1, 1, 1]);
        assert_eq!(s.exact_expected, 1.0);
    }
}
