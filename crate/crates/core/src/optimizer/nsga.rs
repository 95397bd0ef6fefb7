use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hypervolume::ParetoArchive;
use super::operators::{polynomial_mutation, sbx_crossover, tournament_select};
use super::sort::{crowding_distance, non_dominated_sort};
use super::topsis::{topsis_rank, TopsisBasis};
use super::{Evaluation, Problem};
use crate::{Error, Result};

const MAIN_STREAM: u64 = 0;
const SINGLE_STREAM: [u64; 2] = [1, 2];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GAConfig {
    pub population_size: usize,
    pub n_generations: usize,
    pub crossover_probability: f64,
    /// Per gene.
    pub mutation_probability: f64,
    pub sbx_eta: f64,
    pub mutation_eta: f64,
    pub rng_seed: u64,
    pub topsis_basis: TopsisBasis,
    /// Hypervolume reference point in normalized objective space.
    pub hv_reference: [f64; 2],
}

impl Default for GAConfig {
    fn default() -> Self {
        GAConfig {
            population_size: 200,
            n_generations: 250,
            crossover_probability: 0.88,
            mutation_probability: 0.025,
            sbx_eta: 15.0,
            mutation_eta: 20.0,
            rng_seed: 0,
            topsis_basis: TopsisBasis::Raw,
            hv_reference: [1.1, 1.1],
        }
    }
}

impl GAConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 4 || self.population_size % 2 != 0 {
            return Err(Error::invalid(
                "ga config",
                format!("population must be even and at least 4, got {}", self.population_size),
            ));
        }
        for (name, p) in [
            ("crossover probability", self.crossover_probability),
            ("mutation probability", self.mutation_probability),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::invalid("ga config", format!("{name} {p} is outside [0, 1]")));
            }
        }
        for (name, e) in [("sbx eta", self.sbx_eta), ("mutation eta", self.mutation_eta)] {
            if !(e.is_finite() && e >= 0.0) {
                return Err(Error::invalid(
                    "ga config",
                    format!("{name} must be finite and >= 0, got {e}"),
                ));
            }
        }
        if !self.hv_reference.iter().all(|r| r.is_finite()) {
            return Err(Error::invalid("ga config", "hypervolume reference must be finite"));
        }
        Ok(())
    }
}

/// Ideal and nadir objective vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizationContext {
    pub ideal: [f64; 2],
    pub nadir: [f64; 2],
}

impl NormalizationContext {
    /// Fails unless nadir exceeds ideal in both components by more than a
    /// relative 1e-12.
    pub fn new(ideal: [f64; 2], nadir: [f64; 2]) -> Result<Self> {
        for k in 0..2 {
            let scale = ideal[k].abs().max(nadir[k].abs()).max(f64::MIN_POSITIVE);
            if !(ideal[k].is_finite() && nadir[k].is_finite()) || nadir[k] - ideal[k] <= 1e-12 * scale {
                return Err(Error::DegenerateNormalization(format!(
                    "objective {}: ideal {} and nadir {} do not span a range",
                    k + 1,
                    ideal[k],
                    nadir[k]
                )));
            }
        }
        Ok(NormalizationContext { ideal, nadir })
    }

    /// Ĵ = (J − J*)/(J^N − J*).
    pub fn normalize(&self, raw: [f64; 2]) -> [f64; 2] {
        [0, 1].map(|k| (raw[k] - self.ideal[k]) / (self.nadir[k] - self.ideal[k]))
    }
}

/// The single-objective minimizers that define the normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationRun {
    pub context: NormalizationContext,
    /// `extremes[k]` minimizes objective `k`.
    pub extremes: [Vec<f64>; 2],
    pub extreme_evaluations: [Evaluation; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub plan: Vec<f64>,
    pub raw_objectives: [f64; 2],
    pub normalized_objectives: [f64; 2],
    pub constraint_violation: f64,
    /// Front index, 0 for the nondominated front.
    pub rank: usize,
    pub crowding: f64,
}

impl Individual {
    pub fn is_feasible(&self) -> bool {
        self.constraint_violation <= 0.0
    }

    pub fn evaluation(&self) -> Evaluation {
        Evaluation::new(self.raw_objectives, self.constraint_violation)
    }

    /// Rebuilds a feasible front member from stored values, e.g. a re-read
    /// front.
    pub fn from_raw(plan: Vec<f64>, raw: [f64; 2], ctx: &NormalizationContext) -> Self {
        Individual {
            plan,
            raw_objectives: raw,
            normalized_objectives: ctx.normalize(raw),
            constraint_violation: 0.0,
            rank: 0,
            crowding: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParetoResult {
    /// Feasible nondominated members of the final population, distinct
    /// plans, ascending J1.
    pub front: Vec<Individual>,
    /// TOPSIS closeness per front member.
    pub closeness: Vec<f64>,
    /// Front indices by descending closeness.
    pub topsis_order: Vec<usize>,
    pub noise_dominant: usize,
    pub fuel_dominant: usize,
    pub trade_off: usize,
    /// Archive hypervolume after initialization and after each generation.
    pub hypervolume_history: Vec<f64>,
    pub normalization: NormalizationContext,
    pub evaluations: usize,
}

impl ParetoResult {
    pub fn noise_dominant(&self) -> &Individual {
        &self.front[self.noise_dominant]
    }

    pub fn fuel_dominant(&self) -> &Individual {
        &self.front[self.fuel_dominant]
    }

    pub fn trade_off(&self) -> &Individual {
        &self.front[self.trade_off]
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn initial_plans<P: Problem + ?Sized, R: Rng>(problem: &P, n: usize, rng: &mut R) -> Result<Vec<Vec<f64>>> {
    let (lo, hi) = problem.bounds();
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::invalid(
            "problem bounds",
            format!("[{lo}, {hi}] is not a valid box"),
        ));
    }
    let dim = problem.n_vars();
    let mut plans = Vec::with_capacity(n);
    if let Some(mut a) = problem.anchor() {
        if a.len() != dim {
            return Err(Error::DimensionMismatch {
                what: "anchor plan",
                expected: dim,
                got: a.len(),
            });
        }
        problem.repair(&mut a);
        plans.push(a);
    }
    while plans.len() < n {
        let mut x: Vec<f64> = (0..dim).map(|_| lo + (hi - lo) * rng.random::<f64>()).collect();
        problem.repair(&mut x);
        plans.push(x);
    }
    Ok(plans)
}

fn offspring<P, R, F>(problem: &P, parents: &[Vec<f64>], cfg: &GAConfig, rng: &mut R, mut select: F) -> Vec<Vec<f64>>
where
    P: Problem + ?Sized,
    R: Rng,
    F: FnMut(&mut R) -> usize,
{
    let (lo, hi) = problem.bounds();
    let mut kids = Vec::with_capacity(parents.len());
    while kids.len() < parents.len() {
        let a = select(rng);
        let b = select(rng);
        let (mut c1, mut c2) = sbx_crossover(
            &parents[a],
            &parents[b],
            cfg.sbx_eta,
            cfg.crossover_probability,
            lo,
            hi,
            rng,
        );
        for c in [&mut c1, &mut c2] {
            polynomial_mutation(c, cfg.mutation_eta, cfg.mutation_probability, lo, hi, rng);
            problem.repair(c);
        }
        kids.push(c1);
        kids.push(c2);
    }
    kids
}

fn check_finite(evals: &[Evaluation]) -> Result<()> {
    match evals
        .iter()
        .find(|e| !(e.objectives.iter().all(|x| x.is_finite()) && e.violation.is_finite() && e.violation >= 0.0))
    {
        Some(e) => Err(Error::invalid(
            "evaluation",
            format!("non-finite objectives {:?} or violation {}", e.objectives, e.violation),
        )),
        None => Ok(()),
    }
}

/// Feasible before infeasible, then smaller violation, then objective `k`,
/// then the other objective.
fn single_cmp(a: &Evaluation, b: &Evaluation, k: usize) -> Ordering {
    match (a.is_feasible(), b.is_feasible()) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (false, false) => a.violation.total_cmp(&b.violation),
        (true, true) => a.objectives[k]
            .total_cmp(&b.objectives[k])
            .then(a.objectives[1 - k].total_cmp(&b.objectives[1 - k])),
    }
}

/// Elitist single-objective GA on objective `k` (0 or 1) with the same
/// operators as [`evolve`] and feasibility-first comparison.
pub fn minimize_objective<P: Problem + ?Sized>(
    problem: &P,
    k: usize,
    cfg: &GAConfig,
) -> Result<(Vec<f64>, Evaluation)> {
    assert!(k < 2, "objective index must be 0 or 1");
    cfg.validate()?;
    let mut rng = rng_for(cfg.rng_seed, SINGLE_STREAM[k]);
    let n = cfg.population_size;
    let mut plans = initial_plans(problem, n, &mut rng)?;
    let mut evals = problem.evaluate_batch(&plans)?;
    check_finite(&evals)?;
    sort_pool(&mut plans, &mut evals, k, n);

    for _ in 0..cfg.n_generations {
        // Population is kept sorted, so a lower index is a better member.
        let kids = offspring(problem, &plans, cfg, &mut rng, |r| {
            let i = r.random_range(0..n);
            let j = r.random_range(0..n);
            i.min(j)
        });
        let kid_evals = problem.evaluate_batch(&kids)?;
        check_finite(&kid_evals)?;
        plans.extend(kids);
        evals.extend(kid_evals);
        sort_pool(&mut plans, &mut evals, k, n);
    }

    if !evals[0].is_feasible() {
        return Err(Error::Infeasible(format!(
            "no feasible plan found while minimizing objective {} (least violation {})",
            k + 1,
            evals[0].violation
        )));
    }
    Ok((plans.swap_remove(0), evals[0]))
}

fn sort_pool(plans: &mut Vec<Vec<f64>>, evals: &mut Vec<Evaluation>, k: usize, keep: usize) {
    let mut idx: Vec<usize> = (0..plans.len()).collect();
    idx.sort_by(|&a, &b| single_cmp(&evals[a], &evals[b], k).then(a.cmp(&b)));
    idx.truncate(keep);
    let mut p = Vec::with_capacity(keep);
    let mut e = Vec::with_capacity(keep);
    for i in idx {
        p.push(core::mem::take(&mut plans[i]));
        e.push(evals[i]);
    }
    *plans = p;
    *evals = e;
}

/// Ideal from two single-objective minimizations, nadir from evaluating
/// each minimizer on the other objective.
pub fn compute_normalization<P: Problem + ?Sized>(problem: &P, cfg: &GAConfig) -> Result<NormalizationRun> {
    let (x1, e1) = minimize_objective(problem, 0, cfg)?;
    let (x2, e2) = minimize_objective(problem, 1, cfg)?;
    let context = NormalizationContext::new(
        [e1.objectives[0], e2.objectives[1]],
        [e2.objectives[0], e1.objectives[1]],
    )?;
    Ok(NormalizationRun {
        context,
        extremes: [x1, x2],
        extreme_evaluations: [e1, e2],
    })
}

struct Population {
    plans: Vec<Vec<f64>>,
    evals: Vec<Evaluation>,
    rank: Vec<usize>,
    crowding: Vec<f64>,
}

impl Population {
    /// Keeps the best `keep` members of the pool by front, then crowding.
    fn select(plans: Vec<Vec<f64>>, evals: Vec<Evaluation>, ctx: &NormalizationContext, keep: usize) -> Self {
        let fronts = non_dominated_sort(&evals);
        let mut chosen: Vec<(usize, usize, f64)> = Vec::with_capacity(keep);
        for (r, front) in fronts.iter().enumerate() {
            if chosen.len() >= keep {
                break;
            }
            let pts: Vec<[f64; 2]> = front.iter().map(|&i| ctx.normalize(evals[i].objectives)).collect();
            let cd = crowding_distance(&pts);
            let mut members: Vec<(usize, usize, f64)> = front.iter().zip(cd).map(|(&i, d)| (i, r, d)).collect();
            if chosen.len() + members.len() > keep {
                members.sort_by(|a, b| b.2.total_cmp(&a.2).then(a.0.cmp(&b.0)));
                members.truncate(keep - chosen.len());
            }
            chosen.extend(members);
        }
        chosen.sort_by_key(|c| c.0);

        let mut plans = plans;
        let mut pop = Population {
            plans: Vec::with_capacity(keep),
            evals: Vec::with_capacity(keep),
            rank: Vec::with_capacity(keep),
            crowding: Vec::with_capacity(keep),
        };
        for (i, r, d) in chosen {
            pop.plans.push(core::mem::take(&mut plans[i]));
            pop.evals.push(evals[i]);
            pop.rank.push(r);
            pop.crowding.push(d);
        }
        pop
    }
}

fn archive_feasible(archive: &mut ParetoArchive, evals: &[Evaluation], ctx: &NormalizationContext) {
    for e in evals.iter().filter(|e| e.is_feasible()) {
        archive.insert(ctx.normalize(e.objectives));
    }
}

/// Constrained NSGA-II with (μ+λ) elitist replacement.
pub fn evolve<P: Problem + ?Sized>(problem: &P, ctx: &NormalizationContext, cfg: &GAConfig) -> Result<ParetoResult> {
    cfg.validate()?;
    let n = cfg.population_size;
    let mut rng = rng_for(cfg.rng_seed, MAIN_STREAM);

    let plans = initial_plans(problem, n, &mut rng)?;
    let evals = problem.evaluate_batch(&plans)?;
    check_finite(&evals)?;
    if !evals.iter().any(|e| e.is_feasible()) {
        let least = evals.iter().map(|e| e.violation).fold(f64::INFINITY, f64::min);
        return Err(Error::Infeasible(format!(
            "no feasible plan in the initial population (least violation {least})"
        )));
    }
    let mut evaluations = evals.len();
    let mut archive = ParetoArchive::new();
    archive_feasible(&mut archive, &evals, ctx);
    let mut history = Vec::with_capacity(cfg.n_generations + 1);
    history.push(archive.hypervolume(cfg.hv_reference));
    let mut pop = Population::select(plans, evals, ctx, n);

    for _ in 0..cfg.n_generations {
        let kids = offspring(problem, &pop.plans, cfg, &mut rng, |r| {
            tournament_select(&pop.rank, &pop.crowding, r)
        });
        let kid_evals = problem.evaluate_batch(&kids)?;
        check_finite(&kid_evals)?;
        evaluations += kid_evals.len();
        archive_feasible(&mut archive, &kid_evals, ctx);
        history.push(archive.hypervolume(cfg.hv_reference));

        let mut plans = pop.plans;
        let mut evals = pop.evals;
        plans.extend(kids);
        evals.extend(kid_evals);
        pop = Population::select(plans, evals, ctx, n);
    }

    let front = extract_front(&pop, ctx);
    if front.is_empty() {
        return Err(Error::Infeasible(
            "no feasible plan survived to the final population".into(),
        ));
    }
    finish(front, history, *ctx, cfg.topsis_basis, evaluations)
}

fn extract_front(pop: &Population, ctx: &NormalizationContext) -> Vec<Individual> {
    let mut front: Vec<Individual> = (0..pop.plans.len())
        .filter(|&i| pop.rank[i] == 0 && pop.evals[i].is_feasible())
        .map(|i| Individual {
            plan: pop.plans[i].clone(),
            raw_objectives: pop.evals[i].objectives,
            normalized_objectives: ctx.normalize(pop.evals[i].objectives),
            constraint_violation: pop.evals[i].violation,
            rank: 0,
            crowding: pop.crowding[i],
        })
        .collect();
    front.sort_by(|a, b| {
        a.raw_objectives[0]
            .total_cmp(&b.raw_objectives[0])
            .then(a.raw_objectives[1].total_cmp(&b.raw_objectives[1]))
            .then_with(|| cmp_plans(&a.plan, &b.plan))
    });
    front.dedup_by(|a, b| a.plan == b.plan);
    front
}

fn cmp_plans(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

fn finish(
    front: Vec<Individual>,
    hypervolume_history: Vec<f64>,
    normalization: NormalizationContext,
    basis: TopsisBasis,
    evaluations: usize,
) -> Result<ParetoResult> {
    let matrix: Vec<[f64; 2]> = front
        .iter()
        .map(|m| match basis {
            TopsisBasis::Raw => m.raw_objectives,
            TopsisBasis::Normalized => m.normalized_objectives,
        })
        .collect();
    let ranking = topsis_rank(&matrix)?;
    let argmin = |k: usize| {
        (0..front.len())
            .min_by(|&a, &b| {
                front[a].raw_objectives[k]
                    .total_cmp(&front[b].raw_objectives[k])
                    .then(front[a].raw_objectives[1 - k].total_cmp(&front[b].raw_objectives[1 - k]))
                    .then(a.cmp(&b))
            })
            .expect("front is nonempty")
    };
    Ok(ParetoResult {
        noise_dominant: argmin(0),
        fuel_dominant: argmin(1),
        trade_off: ranking.best,
        closeness: ranking.closeness,
        topsis_order: ranking.order,
        front,
        hypervolume_history,
        normalization,
        evaluations,
    })
}

/// Re-ranks an existing front under another TOPSIS basis.
pub fn rerank(result: &ParetoResult, basis: TopsisBasis) -> Result<ParetoResult> {
    finish(
        result.front.clone(),
        result.hypervolume_history.clone(),
        result.normalization,
        basis,
        result.evaluations,
    )
}

/// Normalization followed by the multi-objective run.
pub fn optimize<P: Problem + ?Sized>(problem: &P, cfg: &GAConfig) -> Result<(NormalizationRun, ParetoResult)> {
    let norm = compute_normalization(problem, cfg)?;
    let result = evolve(problem, &norm.context, cfg)?;
    Ok((norm, result))
}

/// Builds a result from an externally supplied front (for re-ranking).
pub fn result_from_front(
    front: Vec<Individual>,
    ctx: NormalizationContext,
    basis: TopsisBasis,
) -> Result<ParetoResult> {
    if front.is_empty() {
        return Err(Error::invalid("front", "is empty"));
    }
    finish(front, Vec::new(), ctx, basis, 0)
}
