use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use attachlab::analysis::{
    check_conditions, edge_absence_freq, expansion_check, good_vertices_check,
    oldest_degree_bound_check, ConstantSet,
};
use attachlab::experiments::{
    load_table, render_table, run_experiment, ExperimentConfig, ReportFormat,
};
use attachlab::hamilton::{exact_hamiltonian, longest_path_greedy, posa_search, EXACT_MAX_N};
use attachlab::lowerbound::{lonely_stats, no_pm_certificate, sweet_cherries};
use attachlab::matching::{isolatable_set, max_matching, tutte_certificate};
use attachlab::rng::derive_seed;
use attachlab::{
    generate, io, neighbourhood, project, simple_view, AttachGraph, Error, GenParams, Model,
    Vertex,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "attachlab", version, about = "Attachment random graphs: generate, analyse, simulate")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it as an edge list.
    Gen {
        #[command(flatten)]
        spec: GenSpec,
        #[arg(long)]
        out: PathBuf,
    },
    /// Maximum matching of a stored graph, as JSON.
    Match {
        #[arg(long = "in")]
        input: PathBuf,
        /// Attach a certificate: the matching if perfect, else a Tutte set.
        #[arg(long)]
        certify: bool,
    },
    /// Rotation–extension search for a Hamiltonian cycle, as JSON.
    Ham {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Deterministic and empirical checks.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Lonely-vertex statistics and no-perfect-matching witnesses for m = 2.
    Lowerbound {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 10)]
        trials: u64,
        #[arg(long, default_value_t = 0.25)]
        c: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run (or resume) a Monte Carlo experiment.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Summarise a persisted experiment.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Check the expansion conditions for a constant set.
    Constants {
        /// `a`, `b`, `c`, `d`, or a JSON file holding a constant set.
        #[arg(long)]
        set: String,
    },
    /// Empirical check of one lemma on a stored or freshly generated graph.
    Lemma {
        #[arg(long, value_enum)]
        name: Lemma,
        #[arg(long = "in", conflicts_with = "gen")]
        input: Option<PathBuf>,
        /// Generate the graph from --model/--n/--m/--seed instead of reading it.
        #[arg(long)]
        gen: bool,
        #[command(flatten)]
        spec: OptGenSpec,
        #[command(flatten)]
        knobs: LemmaKnobs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lemma {
    #[value(name = "total_weight")]
    TotalWeight,
    Expansion,
    Goodold,
    #[value(name = "edge_absence")]
    EdgeAbsence,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Ua,
    Pa,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Ua => Model::Uniform,
            ModelArg::Pa => Model::Preferential,
        }
    }
}

#[derive(Args)]
struct GenSpec {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long)]
    n: u32,
    /// Edges per vertex (uncoloured).
    #[arg(long, required_unless_present = "m1", conflicts_with_all = ["m1", "m2"])]
    m: Option<u32>,
    /// Blue edges per vertex (two-round colouring).
    #[arg(long)]
    m1: Option<u32>,
    /// Red edges per vertex.
    #[arg(long, requires = "m1")]
    m2: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct OptGenSpec {
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    m1: Option<u32>,
    #[arg(long)]
    m2: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct LemmaKnobs {
    #[arg(long, default_value_t = 10.0)]
    a: f64,
    /// Defaults to ⌈ln n⌉.
    #[arg(long)]
    omega: Option<usize>,
    #[arg(long, default_value_t = 0.0538)]
    alpha: f64,
    #[arg(long, default_value_t = 1)]
    ell: u8,
    #[arg(long, default_value_t = 3)]
    k_max: usize,
    #[arg(long, default_value_t = 50)]
    random_budget: usize,
    #[arg(long, default_value_t = 0.22791)]
    x: f64,
    #[arg(long, default_value_t = 0.387967)]
    d: f64,
    #[arg(long, default_value_t = 50)]
    k: usize,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
}

impl GenSpec {
    fn params(&self) -> GenParams {
        match self.m {
            Some(m) => GenParams::new(self.model.into(), self.n, m, self.seed),
            None => GenParams::coloured(
                self.model.into(),
                self.n,
                self.m1.unwrap_or(0),
                self.m2.unwrap_or(0),
                self.seed,
            ),
        }
    }
}

impl OptGenSpec {
    fn params(&self) -> Result<GenParams> {
        let (Some(model), Some(n)) = (self.model, self.n) else {
            bail!("--gen needs --model and --n");
        };
        Ok(match (self.m, self.m1) {
            (Some(m), None) => GenParams::new(model.into(), n, m, self.seed),
            (None, Some(m1)) => GenParams::coloured(model.into(), n, m1, self.m2.unwrap_or(0), self.seed),
            _ => bail!("--gen needs exactly one of --m or --m1"),
        })
    }
}

fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        // a closed pipe (`| head`) is not an error
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => r.context("writing to stdout"),
    }
}

fn print(v: &Value) -> Result<()> {
    emit(&format!("{}\n", serde_json::to_string_pretty(v)?))
}

fn load(path: &Path) -> Result<AttachGraph> {
    io::load(path).with_context(|| format!("loading graph from {}", path.display()))
}

fn cmd_gen(spec: &GenSpec, out: &Path) -> Result<()> {
    let g = generate(&spec.params()).context("generating graph")?;
    io::save(&g, out).with_context(|| format!("writing {}", out.display()))?;
    eprintln!("wrote {} edges on {} vertices to {}", g.len(), g.n(), out.display());
    Ok(())
}

fn cmd_match(input: &Path, certify: bool) -> Result<()> {
    let view = simple_view(&load(input)?);
    let m = max_matching(&view);
    let perfect = m.size() == view.n() / 2;
    let mut out = json!({
        "n": view.n(),
        "edges": view.edge_count(),
        "size": m.size(),
        "perfect": perfect,
        "exposed": m.exposed().len(),
    });
    if certify {
        out["certificate"] = if perfect {
            json!({ "kind": "matching", "pairs": m.pairs() })
        } else {
            // Gallai–Edmonds: S = N(A(G)) attains the Tutte–Berge bound
            let s = neighbourhood(&view, &isolatable_set(&view));
            match tutte_certificate(&view, &s)? {
                Some(w) => json!({ "kind": "tutte", "set": s, "witness": w }),
                None => bail!("no Tutte witness found for a non-perfect matching"),
            }
        };
    }
    print(&out)
}

fn cmd_ham(input: &Path, budget: u64, seed: u64) -> Result<()> {
    let view = simple_view(&load(input)?);
    let mut out = match posa_search(&view, budget, seed) {
        Ok(o) => json!({
            "hamiltonian": o.cycle.is_some(),
            "cycle": o.cycle.as_ref().map(|c| c.vertices().to_vec()),
            "longest_path_len": o.longest.len(),
            "steps": o.steps,
            "restarts": o.restarts,
        }),
        Err(Error::Disconnected) => json!({
            "hamiltonian": false,
            "cycle": Value::Null,
            "longest_path_len": longest_path_greedy(&view, seed).path.len(),
            "disconnected": true,
        }),
        Err(e) => return Err(e.into()),
    };
    if view.n() <= EXACT_MAX_N {
        out["exact"] = json!(exact_hamiltonian(&view)?);
    }
    print(&out)
}

fn cmd_constants(set: &str) -> Result<bool> {
    let c = match set {
        "a" | "b" | "c" | "d" => ConstantSet::published(set.chars().next().unwrap()).unwrap(),
        path => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            serde_json::from_str(&text).with_context(|| format!("parsing constant set {path}"))?
        }
    };
    let report = check_conditions(&c)?;
    print(&serde_json::to_value(&report)?)?;
    Ok(report.overall)
}

fn cmd_lemma(
    name: Lemma,
    input: Option<&Path>,
    gen: bool,
    spec: &OptGenSpec,
    k: &LemmaKnobs,
) -> Result<bool> {
    if let Lemma::EdgeAbsence = name {
        if !gen {
            bail!("edge_absence samples fresh graphs; use --gen");
        }
        let p = spec.params()?;
        let v = p.n;
        let w: Vec<Vertex> = (1..=(v - 1) / 2).collect();
        let sigma = 1;
        let r = edge_absence_freq(&p, v, &w, sigma, k.trials)?;
        let sigma_at = |q: f64| (q * (1.0 - q) / k.trials as f64).sqrt();
        let ok = match p.model {
            Model::Uniform => (r.frequency - r.exact_uniform).abs() <= 4.0 * sigma_at(r.exact_uniform),
            Model::Preferential => r.frequency <= r.bound_past + 4.0 * sigma_at(r.bound_past),
        };
        print(&json!({ "lemma": "edge_absence", "v": v, "w_size": w.len(), "report": r, "consistent": ok }))?;
        return Ok(ok);
    }
    let g = match (input, gen) {
        (Some(path), _) => load(path)?,
        (None, true) => generate(&spec.params()?)?,
        (None, false) => bail!("give --in FILE or --gen"),
    };
    let g = if g.is_coloured() { project(&g, 1)? } else { g };
    let n = g.n() as usize;
    Ok(match name {
        Lemma::TotalWeight => {
            let omega = k.omega.unwrap_or_else(|| (n as f64).ln().ceil().max(1.0) as usize);
            let ks: Vec<usize> = [1, 10, 100, 1000].into_iter().filter(|&x| x <= n).collect();
            let r = oldest_degree_bound_check(&g, k.a, omega, &ks, 20, spec.seed)?;
            let ok = r.violations.is_empty();
            print(&json!({ "lemma": "total_weight", "report": r, "holds": ok }))?;
            ok
        }
        Lemma::Expansion => {
            let view = simple_view(&g);
            let bad = expansion_check(&view, k.alpha, k.ell, k.k_max, k.random_budget, spec.seed);
            print(&json!({ "lemma": "expansion", "alpha": k.alpha, "ell": k.ell, "violator": bad, "holds": bad.is_none() }))?;
            bad.is_none()
        }
        Lemma::Goodold => {
            let kk = k.k.clamp(1, n.max(1));
            let r = good_vertices_check(&g, k.x, k.d, kk)?;
            print(&json!({ "lemma": "goodold", "report": r }))?;
            true
        }
        Lemma::EdgeAbsence => unreachable!(),
    })
}

fn cmd_lowerbound(n: u32, trials: u64, c: f64, seed: u64) -> Result<()> {
    let mut rows = Vec::new();
    let mut witnesses = 0;
    let mut means = [0.0f64; 4];
    for i in 0..trials {
        let s = derive_seed(seed, &[i]);
        let g = generate(&GenParams::new(Model::Preferential, n, 2, s))?;
        let st = lonely_stats(&g, c)?;
        let cherries = sweet_cherries(&g)?.count;
        let w = no_pm_certificate(&g, c)?;
        witnesses += w.is_some() as u64;
        for (acc, x) in means.iter_mut().zip([st.a_n, st.b_n, st.c_n, st.d_n]) {
            *acc += x as f64 / n as f64 / trials as f64;
        }
        rows.push(json!({ "trial": i, "seed": s, "stats": st, "sweet_cherries": cherries, "witness": w }));
    }
    print(&json!({
        "n": n,
        "c": c,
        "trials": trials,
        "mean_fractions": { "a": means[0], "b": means[1], "c": means[2], "d": means[3] },
        "witness_rate": witnesses as f64 / trials.max(1) as f64,
        "trials_detail": rows,
    }))
}

fn cmd_experiment(config: &Path, out: &Path) -> Result<()> {
    let text = fs::read_to_string(config).with_context(|| format!("reading {}", config.display()))?;
    let cfg = ExperimentConfig::from_json(&text).context("invalid experiment config")?;
    let table = run_experiment(&cfg, Some(out))?;
    emit(&render_table(&table, ReportFormat::Markdown))
}

fn cmd_report(input: &Path, format: Format) -> Result<()> {
    let table = load_table(input).with_context(|| format!("reading experiment in {}", input.display()))?;
    let f = match format {
        Format::Csv => ReportFormat::Csv,
        Format::Md => ReportFormat::Markdown,
    };
    emit(&render_table(&table, f))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen { spec, out } => cmd_gen(&spec, &out)?,
        Command::Match { input, certify } => cmd_match(&input, certify)?,
        Command::Ham { input, budget, seed } => cmd_ham(&input, budget, seed)?,
        Command::Verify { what: Verify::Constants { set } } => return cmd_constants(&set),
        Command::Verify {
            what: Verify::Lemma { name, input, gen, spec, knobs },
        } => return cmd_lemma(name, input.as_deref(), gen, &spec, &knobs),
        Command::Lowerbound { n, trials, c, seed } => cmd_lowerbound(n, trials, c, seed)?,
        Command::Experiment { config, out } => cmd_experiment(&config, &out)?,
        Command::Report { input, format } => cmd_report(&input, format)?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        // a check ran and reported a failure
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
