//! JSON scenario files. See `docs/scenario_schema.md` for the format.
//!
//! Relative paths inside a scenario file resolve against the directory that
//! contains it.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use quietvoyage_core::acoustics::{BeamFanConfig, PropagationConfig};
use quietvoyage_core::env::{
    default_frequency_grid, log_frequency_grid, scatter_mammals, BathymetryProfile, HearingGroup, Mammal, Route,
    ScatterSpec, Scenario, ScenarioParts, SfocCurve, ShipCharacteristics, SoundSpeedProfile, VoyageConstraints,
    WaterProperties,
};
use quietvoyage_core::fuel::ResidualChart;
use quietvoyage_core::noise::{Audiogram, AudiogramTable};
use quietvoyage_core::optimizer::{GAConfig, TopsisBasis};

use crate::error::{AppError, AppResult};
use crate::io;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default)]
    pub name: Option<String>,
    pub route: RouteSpec,
    pub bathymetry: ProfileSource,
    pub ssp: ProfileSource,
    #[serde(default)]
    pub mammals: Vec<MammalSpec>,
    #[serde(default)]
    pub mammal_scatter: Option<ScatterFile>,
    pub audiograms: TableSource<AudiogramSpec>,
    pub ship: ShipSpec,
    pub residual_chart: TableSource<(f64, f64, f64)>,
    pub constraints: ConstraintsSpec,
    #[serde(default)]
    pub frequencies: Option<FrequencySpec>,
    pub source_depth_m: f64,
    #[serde(default)]
    pub water: Option<WaterSpec>,
    #[serde(default)]
    pub rng_seed: u64,
    #[serde(default)]
    pub acoustics: AcousticsSpec,
    #[serde(default)]
    pub optimizer: OptimizerSpec,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RouteSpec {
    pub total_distance_nm: f64,
    pub n_waypoints: usize,
}

/// A two-column profile: a CSV file, inline samples, or one constant value.
#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileSource {
    Csv(PathBuf),
    Samples(Vec<(f64, f64)>),
    Constant(f64),
}

/// A table held in a CSV file or inline.
#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum TableSource<T> {
    Csv(PathBuf),
    Rows(Vec<T>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MammalSpec {
    #[serde(default)]
    pub id: Option<usize>,
    pub range_nm: f64,
    pub depth_m: f64,
    pub group: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScatterFile {
    pub count: usize,
    pub range_nm: (f64, f64),
    #[serde(default = "default_depth_fraction")]
    pub depth_fraction: (f64, f64),
    #[serde(default)]
    pub max_depth_m: Option<f64>,
    #[serde(default)]
    pub groups: Vec<String>,
    /// Defaults to the scenario `rng_seed`.
    #[serde(default)]
    pub seed: Option<u64>,
}

fn default_depth_fraction() -> (f64, f64) {
    (0.1, 0.9)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AudiogramSpec {
    pub group: String,
    pub alpha0_db: f64,
    pub p1_db: f64,
    pub p2_hz: f64,
    pub p3_hz: f64,
    pub p4: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShipSpec {
    pub length_pp_m: f64,
    pub breadth_m: f64,
    pub draft_m: f64,
    pub block_coeff: f64,
    pub midship_coeff: f64,
    pub displacement_mt: f64,
    pub max_power_kw: f64,
    pub propulsion_efficiency: f64,
    #[serde(default = "default_incremental")]
    pub incremental_coeff: f64,
    /// Load fraction against SFOC in g/kWh.
    pub sfoc: TableSource<(f64, f64)>,
}

fn default_incremental() -> f64 {
    4.0e-4
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintsSpec {
    pub eta_h: f64,
    pub v_min_kt: f64,
    pub v_max_kt: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum FrequencySpec {
    Grid {
        f_min_hz: f64,
        f_max_hz: f64,
        per_decade: usize,
    },
    List(Vec<f64>),
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaterSpec {
    pub density_kg_m3: f64,
    pub kinematic_viscosity_m2_s: f64,
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AcousticsSpec {
    pub n_rays: Option<usize>,
    pub angle_min_deg: Option<f64>,
    pub angle_max_deg: Option<f64>,
    pub step_m: Option<f64>,
    pub max_range_m: Option<f64>,
    pub surface_reflection: Option<f64>,
    pub bottom_reflection: Option<f64>,
    pub tl_cap_db: Option<f64>,
    pub coherent: Option<bool>,
    pub volume_attenuation: Option<bool>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizerSpec {
    pub population_size: Option<usize>,
    pub n_generations: Option<usize>,
    pub crossover_probability: Option<f64>,
    pub mutation_probability: Option<f64>,
    pub sbx_eta: Option<f64>,
    pub mutation_eta: Option<f64>,
    pub topsis_basis: Option<BasisSpec>,
    pub hv_reference: Option<[f64; 2]>,
    /// Restricts every leg speed to these values.
    pub speed_levels_kt: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum BasisSpec {
    Raw,
    Normalized,
}

impl From<BasisSpec> for TopsisBasis {
    fn from(b: BasisSpec) -> Self {
        match b {
            BasisSpec::Raw => TopsisBasis::Raw,
            BasisSpec::Normalized => TopsisBasis::Normalized,
        }
    }
}

/// A validated scenario together with the solver settings from its file.
#[derive(Debug, Clone)]
pub struct LoadedScenario {
    pub name: String,
    pub path: PathBuf,
    pub scenario: Scenario,
    pub propagation: PropagationConfig,
    pub ga: GAConfig,
    pub speed_levels: Option<Vec<f64>>,
}

/// Reads, resolves and validates a scenario file.
pub fn load_scenario(path: &Path) -> AppResult<LoadedScenario> {
    let text = std::fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
    let file: ScenarioFile = serde_json::from_str(&text).map_err(|e| AppError::parse(path, e))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let name = file.name.clone().unwrap_or_else(|| {
        path.file_stem()
            .map_or_else(String::new, |s| s.to_string_lossy().into_owned())
    });
    let scenario = build_scenario(&file, base)?;
    Ok(LoadedScenario {
        name,
        path: path.to_path_buf(),
        propagation: propagation_config(&file.acoustics),
        ga: ga_config(&file.optimizer, file.rng_seed),
        speed_levels: file.optimizer.speed_levels_kt.clone(),
        scenario,
    })
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

fn group(s: &str) -> AppResult<HearingGroup> {
    s.parse().map_err(AppError::Core)
}

pub fn build_scenario(file: &ScenarioFile, base: &Path) -> AppResult<Scenario> {
    let route = Route::new(file.route.total_distance_nm, file.route.n_waypoints)?;
    let total = route.total_distance_nm();

    let bathymetry = match &file.bathymetry {
        ProfileSource::Csv(p) => BathymetryProfile::new(&io::read_pairs(&resolve(base, p), io::BATHYMETRY_HEADER)?)?,
        ProfileSource::Samples(s) => BathymetryProfile::new(s)?,
        ProfileSource::Constant(d) => BathymetryProfile::flat(*d, total)?,
    };
    let ssp = match &file.ssp {
        ProfileSource::Csv(p) => SoundSpeedProfile::new(&io::read_pairs(&resolve(base, p), io::SSP_HEADER)?)?,
        ProfileSource::Samples(s) => SoundSpeedProfile::new(s)?,
        ProfileSource::Constant(c) => SoundSpeedProfile::isovelocity(*c)?,
    };

    let mut mammals = file
        .mammals
        .iter()
        .enumerate()
        .map(|(k, m)| {
            Ok(Mammal {
                id: m.id.unwrap_or(k),
                range_nm: m.range_nm,
                depth_m: m.depth_m,
                group: group(&m.group)?,
            })
        })
        .collect::<AppResult<Vec<_>>>()?;
    if let Some(sc) = &file.mammal_scatter {
        let spec = ScatterSpec {
            count: sc.count,
            range_nm: sc.range_nm,
            depth_fraction: sc.depth_fraction,
            max_depth_m: sc.max_depth_m,
            groups: sc.groups.iter().map(|g| group(g)).collect::<AppResult<_>>()?,
        };
        let first_id = mammals.iter().map(|m| m.id + 1).max().unwrap_or(0);
        for mut m in scatter_mammals(&spec, &bathymetry, sc.seed.unwrap_or(file.rng_seed))? {
            m.id += first_id;
            mammals.push(m);
        }
    }

    let audiograms = match &file.audiograms {
        TableSource::Csv(p) => io::read_audiograms(&resolve(base, p))?,
        TableSource::Rows(rows) => rows
            .iter()
            .map(|a| {
                Ok(Audiogram {
                    group: group(&a.group)?,
                    alpha0_db: a.alpha0_db,
                    p1_db: a.p1_db,
                    p2_hz: a.p2_hz,
                    p3_hz: a.p3_hz,
                    p4: a.p4,
                })
            })
            .collect::<AppResult<_>>()?,
    };

    let frequencies_hz = match &file.frequencies {
        None => default_frequency_grid(),
        Some(FrequencySpec::Grid {
            f_min_hz,
            f_max_hz,
            per_decade,
        }) => {
            if !(*f_min_hz > 0.0 && f_max_hz > f_min_hz && *per_decade > 0) {
                return Err(AppError::Usage(
                    "frequency grid needs 0 < f_min_hz < f_max_hz and per_decade > 0".into(),
                ));
            }
            log_frequency_grid(*f_min_hz, *f_max_hz, *per_decade)
        }
        Some(FrequencySpec::List(f)) => f.clone(),
    };

    let water = file.water.map_or_else(WaterProperties::default, |w| WaterProperties {
        density_kg_m3: w.density_kg_m3,
        kinematic_viscosity_m2_s: w.kinematic_viscosity_m2_s,
    });

    let scenario = Scenario::new(ScenarioParts {
        route,
        bathymetry,
        ssp,
        mammals,
        audiograms: AudiogramTable::from_entries(audiograms)?,
        ship: build_ship(&file.ship, base)?,
        residual_chart: load_chart(&file.residual_chart, base)?,
        constraints: VoyageConstraints {
            eta_h: file.constraints.eta_h,
            v_min_kt: file.constraints.v_min_kt,
            v_max_kt: file.constraints.v_max_kt,
        },
        frequencies_hz,
        source_depth_m: file.source_depth_m,
        water,
        rng_seed: file.rng_seed,
    })?;
    Ok(scenario)
}

pub fn build_ship(spec: &ShipSpec, base: &Path) -> AppResult<ShipCharacteristics> {
    let sfoc_g: Vec<(f64, f64)> = match &spec.sfoc {
        TableSource::Csv(p) => io::read_pairs(&resolve(base, p), io::SFOC_HEADER)?,
        TableSource::Rows(r) => r.clone(),
    };
    let sfoc: Vec<(f64, f64)> = sfoc_g.into_iter().map(|(l, g)| (l, g * 1e-6)).collect();
    let ship = ShipCharacteristics {
        length_pp_m: spec.length_pp_m,
        breadth_m: spec.breadth_m,
        draft_m: spec.draft_m,
        block_coeff: spec.block_coeff,
        midship_coeff: spec.midship_coeff,
        displacement_mt: spec.displacement_mt,
        max_power_kw: spec.max_power_kw,
        sfoc: SfocCurve::new(&sfoc)?,
        propulsion_efficiency: spec.propulsion_efficiency,
        incremental_coeff: spec.incremental_coeff,
    };
    ship.validate()?;
    Ok(ship)
}

pub fn load_chart(src: &TableSource<(f64, f64, f64)>, base: &Path) -> AppResult<ResidualChart> {
    let rows: Vec<(f64, f64, f64)> = match src {
        TableSource::Csv(p) => io::read_numeric(&resolve(base, p), &io::CHART_HEADER)?
            .into_iter()
            .map(|r| (r[0], r[1], r[2]))
            .collect(),
        TableSource::Rows(r) => r.clone(),
    };
    Ok(ResidualChart::from_rows(&rows)?)
}

pub fn propagation_config(a: &AcousticsSpec) -> PropagationConfig {
    let d = PropagationConfig::default();
    let f = BeamFanConfig::default();
    PropagationConfig {
        fan: BeamFanConfig {
            n_rays: a.n_rays.unwrap_or(f.n_rays),
            angle_min_deg: a.angle_min_deg.unwrap_or(f.angle_min_deg),
            angle_max_deg: a.angle_max_deg.unwrap_or(f.angle_max_deg),
            step_m: a.step_m.unwrap_or(f.step_m),
            max_range_m: a.max_range_m.or(f.max_range_m),
        },
        surface_reflection: a.surface_reflection.unwrap_or(d.surface_reflection),
        bottom_reflection: a.bottom_reflection.unwrap_or(d.bottom_reflection),
        tl_cap_db: a.tl_cap_db.unwrap_or(d.tl_cap_db),
        coherent: a.coherent.unwrap_or(d.coherent),
        volume_attenuation: a.volume_attenuation.unwrap_or(d.volume_attenuation),
    }
}

pub fn ga_config(o: &OptimizerSpec, seed: u64) -> GAConfig {
    let d = GAConfig::default();
    GAConfig {
        population_size: o.population_size.unwrap_or(d.population_size),
        n_generations: o.n_generations.unwrap_or(d.n_generations),
        crossover_probability: o.crossover_probability.unwrap_or(d.crossover_probability),
        mutation_probability: o.mutation_probability.unwrap_or(d.mutation_probability),
        sbx_eta: o.sbx_eta.unwrap_or(d.sbx_eta),
        mutation_eta: o.mutation_eta.unwrap_or(d.mutation_eta),
        rng_seed: seed,
        topsis_basis: o.topsis_basis.map_or(d.topsis_basis, Into::into),
        hv_reference: o.hv_reference.unwrap_or(d.hv_reference),
    }
}
