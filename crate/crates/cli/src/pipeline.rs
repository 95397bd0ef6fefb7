//! The `run` pipeline: TL tensor, normalization, NSGA-II, TOPSIS, exports.

use std::path::{Path, PathBuf};

use quietvoyage_core::acoustics::TlTensor;
use quietvoyage_core::noise::{intensity_to_db, noise_objective, received_spl_by_leg};
use quietvoyage_core::optimizer::{
    compute_normalization, evolve, GAConfig, Individual, NormalizationRun, ParetoResult, VoyageProblem,
};

use crate::error::{AppError, AppResult};
use crate::io::{fmt_f64, write_pareto, write_table, ParetoRow};
use crate::manifest::{sha256_file, unix_now, Overrides, RunManifest, RunStatus, Versions, MANIFEST_FILE};
use crate::parallel::{self, Parallel};
use crate::scenario_file::{load_scenario, LoadedScenario};

pub const PARETO_FILE: &str = "pareto.csv";
pub const SPEED_PROFILE_FILE: &str = "speed_profile.csv";
pub const NOISE_BREAKDOWN_FILE: &str = "noise_breakdown.csv";
pub const HYPERVOLUME_FILE: &str = "hypervolume.csv";

/// Result files of `run`, manifest last.
pub const RUN_FILES: [&str; 5] = [
    PARETO_FILE,
    SPEED_PROFILE_FILE,
    NOISE_BREAKDOWN_FILE,
    HYPERVOLUME_FILE,
    MANIFEST_FILE,
];

/// Applies command-line overrides to the scenario's optimizer settings.
pub fn effective_ga(loaded: &LoadedScenario, o: &Overrides) -> GAConfig {
    let mut ga = loaded.ga;
    if let Some(s) = o.seed {
        ga.rng_seed = s;
    }
    if let Some(g) = o.generations {
        ga.n_generations = g;
    }
    if let Some(p) = o.population {
        ga.population_size = p;
    }
    if let Some(b) = o.topsis_basis {
        ga.topsis_basis = b.into();
    }
    ga
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub tl: TlTensor,
    pub normalization: NormalizationRun,
    pub result: ParetoResult,
    pub ga: GAConfig,
}

/// Runs the optimization on the current rayon pool.
pub fn solve(loaded: &LoadedScenario, ga: &GAConfig) -> AppResult<RunOutcome> {
    let s = &loaded.scenario;
    let tl = parallel::tl_tensor(s, &loaded.propagation)?;
    let mut problem = VoyageProblem::new(s, &tl)?;
    if let Some(levels) = &loaded.speed_levels {
        problem = problem.with_speed_levels(levels)?;
    }
    let problem = Parallel(problem);
    let normalization = compute_normalization(&problem, ga)?;
    let result = evolve(&problem, &normalization.context, ga)?;
    Ok(RunOutcome {
        tl,
        normalization,
        result,
        ga: *ga,
    })
}

/// Pareto rows in TOPSIS order, trade-off first.
pub fn pareto_rows(loaded: &LoadedScenario, outcome: &RunOutcome) -> AppResult<Vec<ParetoRow>> {
    let problem = VoyageProblem::new(&loaded.scenario, &outcome.tl)?;
    let r = &outcome.result;
    r.topsis_order
        .iter()
        .enumerate()
        .map(|(k, &i)| {
            let m = &r.front[i];
            let a = problem.assess(&m.plan)?;
            Ok(ParetoRow {
                rank: k + 1,
                closeness: r.closeness[i],
                j1_w_m2: m.raw_objectives[0],
                j1_db: intensity_to_db(m.raw_objectives[0]),
                j2_mt: m.raw_objectives[1],
                eta_h: a.voyage_time_h,
                normalized_j1: m.normalized_objectives[0],
                normalized_j2: m.normalized_objectives[1],
                speeds_kt: m.plan.clone(),
            })
        })
        .collect()
}

fn named_solutions(r: &ParetoResult) -> [(&'static str, &Individual); 3] {
    [
        ("noise_dominant", r.noise_dominant()),
        ("fuel_dominant", r.fuel_dominant()),
        ("trade_off", r.trade_off()),
    ]
}

/// Writes the four result tables into `dir`.
pub fn write_results(dir: &Path, loaded: &LoadedScenario, outcome: &RunOutcome) -> AppResult<()> {
    let s = &loaded.scenario;
    let r = &outcome.result;
    write_pareto(&dir.join(PARETO_FILE), &pareto_rows(loaded, outcome)?)?;

    let route = s.route();
    let (noise, fuel, trade) = (r.noise_dominant(), r.fuel_dominant(), r.trade_off());
    write_table(
        &dir.join(SPEED_PROFILE_FILE),
        &header(&[
            "leg_index",
            "range_start_nm",
            "v_noise_kt",
            "v_fuel_kt",
            "v_tradeoff_kt",
        ]),
        (0..s.n_legs()).map(|i| {
            vec![
                i.to_string(),
                fmt_f64(route.waypoint_range_nm(i)),
                fmt_f64(noise.plan[i]),
                fmt_f64(fuel.plan[i]),
                fmt_f64(trade.plan[i]),
            ]
        }),
    )?;

    let mut rows = Vec::new();
    let nm = s.mammals().len();
    for (name, m) in named_solutions(r) {
        let b = noise_objective(&m.plan, &outcome.tl, s)?;
        let spl: Vec<Vec<f64>> = (0..nm)
            .map(|j| received_spl_by_leg(&m.plan, &outcome.tl, s, j))
            .collect::<Result<_, _>>()?;
        for (i, excess) in b.per_leg_mammal.chunks(nm.max(1)).enumerate() {
            for (j, mammal) in s.mammals().iter().enumerate() {
                rows.push(vec![
                    name.to_string(),
                    i.to_string(),
                    fmt_f64(route.waypoint_range_nm(i)),
                    mammal.id.to_string(),
                    mammal.group.to_string(),
                    fmt_f64(excess[j]),
                    fmt_f64(spl[j][i]),
                ]);
            }
        }
    }
    write_table(
        &dir.join(NOISE_BREAKDOWN_FILE),
        &header(&[
            "solution",
            "leg_index",
            "range_start_nm",
            "mammal_id",
            "hearing_group",
            "excess_intensity_w_m2",
            "received_spl_db",
        ]),
        rows,
    )?;

    write_table(
        &dir.join(HYPERVOLUME_FILE),
        &header(&["generation", "hypervolume"]),
        r.hypervolume_history
            .iter()
            .enumerate()
            .map(|(g, hv)| vec![g.to_string(), fmt_f64(*hv)]),
    )
}

fn header(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|s| s.to_string()).collect()
}

/// What to run and where.
#[derive(Debug, Clone)]
pub struct RunRequest {
    pub scenario: PathBuf,
    pub out: PathBuf,
    pub overrides: Overrides,
    pub threads: Option<usize>,
}

impl RunRequest {
    /// The run recorded in a manifest, optionally redirected to `out`.
    pub fn replay(manifest: &RunManifest, out: Option<PathBuf>, threads: Option<usize>) -> AppResult<Self> {
        manifest.check_scenario()?;
        Ok(RunRequest {
            scenario: manifest.scenario_path.clone(),
            out: out.unwrap_or_else(|| manifest.output_dir.clone()),
            overrides: manifest.overrides.clone(),
            threads: threads.or(manifest.threads),
        })
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub name: String,
    pub manifest: RunManifest,
    pub outcome: RunOutcome,
}

/// Loads, solves and exports. The manifest is written before any result
/// and rewritten once all results are in place.
pub fn run(req: &RunRequest) -> AppResult<RunReport> {
    let scenario_path = std::fs::canonicalize(&req.scenario).map_err(|e| AppError::io(&req.scenario, e))?;
    let loaded = load_scenario(&scenario_path)?;
    let ga = effective_ga(&loaded, &req.overrides);
    ga.validate()?;

    std::fs::create_dir_all(&req.out).map_err(|e| AppError::io(&req.out, e))?;
    let out = std::fs::canonicalize(&req.out).map_err(|e| AppError::io(&req.out, e))?;
    let mut manifest = RunManifest {
        scenario_sha256: sha256_file(&scenario_path)?,
        scenario_path,
        overrides: req.overrides.clone(),
        rng_seed: ga.rng_seed,
        output_dir: out.clone(),
        threads: req.threads,
        started_unix_s: unix_now(),
        finished_unix_s: None,
        status: RunStatus::Running,
        versions: Versions::current(),
        files: Vec::new(),
    };
    manifest.write(&out)?;

    let pool = parallel::thread_pool(req.threads)?;
    let outcome = pool.install(|| solve(&loaded, &ga))?;
    write_results(&out, &loaded, &outcome)?;

    manifest.finished_unix_s = Some(unix_now());
    manifest.status = RunStatus::Complete;
    manifest.files = RUN_FILES.iter().map(|s| s.to_string()).collect();
    manifest.write(&out)?;
    Ok(RunReport {
        name: loaded.name,
        manifest,
        outcome,
    })
}
