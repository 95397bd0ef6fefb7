//! Constrained NSGA-II over per-leg speeds, ideal/nadir normalization,
//! hypervolume and TOPSIS trade-off selection.
//!
//! Constraints use feasibility-first domination: a feasible individual beats
//! an infeasible one, two infeasible ones compare by violation, and two
//! feasible ones by Pareto dominance. All random draws come from one seeded
//! ChaCha8 stream per run, so results do not depend on how a
//! [`Problem::evaluate_batch`] implementation schedules its work.

mod hypervolume;
mod nsga;
pub mod operators;
mod problem;
mod sort;
mod topsis;

pub use hypervolume::{hypervolume, ParetoArchive};
pub use nsga::{
    compute_normalization, evolve, minimize_objective, optimize, rerank, result_from_front, GAConfig, Individual,
    NormalizationContext, NormalizationRun, ParetoResult,
};
pub use operators::{
    mutation_delta, polynomial_mutation, sbx_beta, sbx_crossover, tournament_select, tournament_winner,
};
pub use problem::{Evaluation, PlanAssessment, Problem, VoyageProblem};
pub use sort::{constrained_dominates, crowding_distance, non_dominated_sort, pareto_dominates};
pub use topsis::{topsis_rank, topsis_rank_weighted, TopsisBasis, TopsisRanking, TIE_TOLERANCE};
