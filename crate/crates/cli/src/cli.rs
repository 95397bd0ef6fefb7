//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use quietvoyage_core::acoustics::{tl_grid, GridSpec, TlTensor};
use quietvoyage_core::optimizer::{topsis_rank_weighted, VoyageProblem};

use crate::error::{AppError, AppResult};
use crate::io::{fmt_f64, read_pareto, write_pareto, write_table};
use crate::manifest::{Overrides, RunManifest};
use crate::parallel;
use crate::pipeline::{self, RunRequest};
use crate::scenario_file::{load_scenario, BasisSpec};
use crate::validation::{load_case, validate_resistance};

pub const TL_GRID_FILE: &str = "tl_grid.csv";
pub const TL_TENSOR_FILE: &str = "tl_tensor.csv";
pub const RERANKED_FILE: &str = "pareto_reranked.csv";

#[derive(Debug, Parser)]
#[command(name = "quietvoyage", version, about = "Noise- and fuel-aware ship speed planning")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Optimizer seed, overriding the scenario's `rng_seed`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory [default: results].
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// NSGA-II generations, overriding the scenario.
    #[arg(long, global = true)]
    pub generations: Option<usize>,
    /// NSGA-II population size, overriding the scenario.
    #[arg(long, global = true)]
    pub population: Option<usize>,
}

impl GlobalArgs {
    pub fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("results"))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimize a scenario and export the Pareto front and profiles.
    Run(RunArgs),
    /// Export a range-depth TL field, or the full TL tensor.
    Tl(TlArgs),
    /// Compare the resistance model with a tabulated dataset.
    Validate(ValidateArgs),
    /// Re-rank an exported front with TOPSIS.
    Pareto(ParetoArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Scenario JSON file.
    #[arg(long, required_unless_present = "manifest", conflicts_with = "manifest")]
    pub scenario: Option<PathBuf>,
    /// Replay the run recorded in a manifest.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// TOPSIS decision matrix basis.
    #[arg(long, value_enum)]
    pub basis: Option<BasisSpec>,
}

#[derive(Debug, Args)]
pub struct TlArgs {
    /// Scenario JSON file.
    #[arg(long)]
    pub scenario: PathBuf,
    /// Source waypoint index.
    #[arg(long, default_value_t = 0)]
    pub waypoint: usize,
    /// Grid frequency, Hz.
    #[arg(long, default_value_t = 20.0)]
    pub frequency: f64,
    /// Grid range pitch, m.
    #[arg(long, default_value_t = 100.0)]
    pub range_pitch: f64,
    /// Grid depth pitch, m.
    #[arg(long, default_value_t = 5.0)]
    pub depth_pitch: f64,
    /// Horizontal extent ahead of the waypoint, m.
    #[arg(long, default_value_t = 18_520.0)]
    pub range_extent: f64,
    /// Write the waypoint × mammal × frequency tensor instead of a grid.
    #[arg(long)]
    pub tensor: bool,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// CSV with `speed_kt,resistance_kn`.
    #[arg(long, default_value = "data/keller_validation.csv")]
    pub data: PathBuf,
    /// Hull, water and chart description.
    #[arg(long, default_value = "data/keller_case.json")]
    pub case: PathBuf,
    /// Largest acceptable absolute error, percent.
    #[arg(long, default_value_t = 0.25)]
    pub threshold: f64,
}

#[derive(Debug, Args)]
pub struct ParetoArgs {
    /// A `pareto.csv` written by `run`.
    #[arg(long)]
    pub front: PathBuf,
    #[arg(long, value_enum, default_value = "raw")]
    pub basis: BasisSpec,
    /// Criterion weights `w1,w2`.
    #[arg(long, value_delimiter = ',', default_values_t = [0.5, 0.5])]
    pub weights: Vec<f64>,
    /// Re-evaluate every row against this scenario and fail on mismatch.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    /// Relative tolerance of the re-evaluation check.
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error ({}): {e}", e.category());
            e.exit_code()
        }
    }
}

pub fn dispatch(cli: &Cli, out: &mut dyn Write) -> AppResult<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Run(a) => cmd_run(g, a, out),
        Command::Tl(a) => cmd_tl(g, a, out),
        Command::Validate(a) => cmd_validate(a, out),
        Command::Pareto(a) => cmd_pareto(g, a, out),
    }
}

fn say(out: &mut dyn Write, msg: impl std::fmt::Display) {
    let _ = writeln!(out, "{msg}");
}

fn cmd_run(g: &GlobalArgs, a: &RunArgs, out: &mut dyn Write) -> AppResult<()> {
    let req = match &a.manifest {
        Some(m) => {
            let manifest = RunManifest::read(m)?;
            RunRequest::replay(&manifest, g.out.clone(), g.threads)?
        }
        None => RunRequest {
            scenario: a.scenario.clone().expect("clap requires a scenario"),
            out: g.out_dir(),
            overrides: Overrides {
                seed: g.seed,
                generations: g.generations,
                population: g.population,
                topsis_basis: a.basis,
            },
            threads: g.threads,
        },
    };
    let report = pipeline::run(&req)?;
    let r = &report.outcome.result;
    let t = r.trade_off();
    say(
        out,
        format_args!(
            "{}: {} front members, {} evaluations, seed {}",
            report.name,
            r.front.len(),
            r.evaluations,
            report.manifest.rng_seed
        ),
    );
    say(
        out,
        format_args!(
            "trade-off: J1 {:.6e} W/m², J2 {:.4} MT, normalized ({:.4}, {:.4})",
            t.raw_objectives[0], t.raw_objectives[1], t.normalized_objectives[0], t.normalized_objectives[1]
        ),
    );
    say(out, format_args!("results in {}", report.manifest.output_dir.display()));
    Ok(())
}

fn cmd_tl(g: &GlobalArgs, a: &TlArgs, out: &mut dyn Write) -> AppResult<()> {
    let loaded = load_scenario(&a.scenario)?;
    let dir = g.out_dir();
    std::fs::create_dir_all(&dir).map_err(|e| AppError::io(&dir, e))?;
    let pool = parallel::thread_pool(g.threads)?;
    if a.tensor {
        let tl = pool.install(|| parallel::tl_tensor(&loaded.scenario, &loaded.propagation))?;
        let path = dir.join(TL_TENSOR_FILE);
        write_tensor(&path, &tl)?;
        say(
            out,
            format_args!(
                "{} entries ({} capped) in {}",
                tl.values().len(),
                tl.capped_count(),
                path.display()
            ),
        );
        return Ok(());
    }
    let n = loaded.scenario.route().n_waypoints();
    if a.waypoint >= n {
        return Err(AppError::Usage(format!(
            "waypoint {} is out of range (0..{n})",
            a.waypoint
        )));
    }
    if !(a.frequency > 0.0 && a.frequency.is_finite()) {
        return Err(AppError::Usage(format!(
            "frequency must be positive, got {}",
            a.frequency
        )));
    }
    let grid = GridSpec {
        range_pitch_m: a.range_pitch,
        depth_pitch_m: a.depth_pitch,
        range_extent_m: a.range_extent,
    };
    let cells = pool.install(|| tl_grid(&loaded.scenario, &loaded.propagation, a.waypoint, a.frequency, &grid))?;
    let path = dir.join(TL_GRID_FILE);
    write_table(
        &path,
        &["range_m".into(), "depth_m".into(), "tl_db".into()],
        cells
            .iter()
            .map(|c| vec![fmt_f64(c.range_m), fmt_f64(c.depth_m), fmt_f64(c.tl_db)]),
    )?;
    say(
        out,
        format_args!("{} cells at {} Hz in {}", cells.len(), a.frequency, path.display()),
    );
    Ok(())
}

pub fn write_tensor(path: &Path, tl: &TlTensor) -> AppResult<()> {
    let ids = tl.mammal_ids();
    let freqs = tl.frequencies_hz();
    let mut rows = Vec::with_capacity(tl.values().len());
    for i in 0..tl.n_waypoints() {
        for (j, id) in ids.iter().enumerate() {
            for (k, f) in freqs.iter().enumerate() {
                rows.push(vec![
                    i.to_string(),
                    id.to_string(),
                    fmt_f64(*f),
                    fmt_f64(tl.get(i, j, k)),
                ]);
            }
        }
    }
    write_table(
        path,
        &[
            "waypoint_index".into(),
            "mammal_id".into(),
            "frequency_hz".into(),
            "tl_db".into(),
        ],
        rows,
    )
}

fn cmd_validate(a: &ValidateArgs, out: &mut dyn Write) -> AppResult<()> {
    if !(a.threshold >= 0.0) {
        return Err(AppError::Usage(format!(
            "threshold must be nonnegative, got {}",
            a.threshold
        )));
    }
    let case = load_case(&a.case)?;
    let report = validate_resistance(&a.data, &case)?;
    let _ = write!(out, "{}", report.render());
    if report.passes(a.threshold) {
        say(out, format_args!("PASS (threshold {}%)", a.threshold));
        Ok(())
    } else {
        Err(AppError::CheckFailed(format!(
            "max resistance error {:.4}% exceeds {}%",
            report.max_abs_error_percent, a.threshold
        )))
    }
}

fn cmd_pareto(g: &GlobalArgs, a: &ParetoArgs, out: &mut dyn Write) -> AppResult<()> {
    let rows = read_pareto(&a.front)?;
    let weights = match a.weights[..] {
        [w1, w2] => [w1, w2],
        _ => {
            return Err(AppError::Usage(format!(
                "--weights needs two values, got {}",
                a.weights.len()
            )))
        }
    };

    if let Some(path) = &a.scenario {
        let loaded = load_scenario(path)?;
        let pool = parallel::thread_pool(g.threads)?;
        let tl = pool.install(|| parallel::tl_tensor(&loaded.scenario, &loaded.propagation))?;
        let problem = VoyageProblem::new(&loaded.scenario, &tl)?;
        let mut worst: f64 = 0.0;
        for r in &rows {
            let e = problem.assess(&r.speeds_kt)?;
            for (got, stored) in [(e.j1_w_m2, r.j1_w_m2), (e.j2_mt, r.j2_mt)] {
                worst = worst.max((got - stored).abs() / stored.abs().max(f64::MIN_POSITIVE));
            }
        }
        say(
            out,
            format_args!("re-evaluation: largest relative difference {worst:.3e}"),
        );
        if !(worst <= a.tolerance) {
            return Err(AppError::CheckFailed(format!(
                "stored objectives differ from re-evaluation by {worst:.3e} (tolerance {})",
                a.tolerance
            )));
        }
    }

    let matrix: Vec<[f64; 2]> = rows
        .iter()
        .map(|r| match a.basis {
            BasisSpec::Raw => [r.j1_w_m2, r.j2_mt],
            BasisSpec::Normalized => [r.normalized_j1, r.normalized_j2],
        })
        .collect();
    let ranking = topsis_rank_weighted(&matrix, weights)?;
    let rows: Vec<_> = ranking
        .order
        .iter()
        .enumerate()
        .map(|(k, &i)| {
            let mut r = rows[i].clone();
            r.rank = k + 1;
            r.closeness = ranking.closeness[i];
            r
        })
        .collect();

    let dir = g.out_dir();
    std::fs::create_dir_all(&dir).map_err(|e| AppError::io(&dir, e))?;
    let path = dir.join(RERANKED_FILE);
    write_pareto(&path, &rows)?;
    let best = &rows[0];
    say(
        out,
        format_args!(
            "best: J1 {:.6e} W/m², J2 {:.4} MT, closeness {:.4}; {} rows in {}",
            best.j1_w_m2,
            best.j2_mt,
            best.closeness,
            rows.len(),
            path.display()
        ),
    );
    Ok(())
}
