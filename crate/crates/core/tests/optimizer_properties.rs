use proptest::prelude::*;
use quietvoyage_core::optimizer::{
    constrained_dominates, crowding_distance, evolve, hypervolume, mutation_delta, non_dominated_sort, optimize,
    pareto_dominates, sbx_beta, topsis_rank, Evaluation, GAConfig, NormalizationContext, ParetoArchive, Problem,
};
use quietvoyage_core::Result;

/// Exhaustive peeling: each front is every remaining member no remaining
/// member dominates.
fn oracle_fronts(pop: &[Evaluation]) -> Vec<Vec<usize>> {
    let mut left: Vec<usize> = (0..pop.len()).collect();
    let mut fronts = Vec::new();
    while !left.is_empty() {
        let front: Vec<usize> = left
            .iter()
            .copied()
            .filter(|&i| !left.iter().any(|&j| constrained_dominates(&pop[j], &pop[i])))
            .collect();
        left.retain(|i| !front.contains(i));
        fronts.push(front);
    }
    fronts
}

fn population() -> impl Strategy<Value = Vec<Evaluation>> {
    // Coarse grid values so duplicates and ties are common.
    let point = (
        0u8..8,
        0u8..8,
        prop_oneof![3 => Just(0.0), 1 => (1u8..5).prop_map(|v| v as f64 * 0.25)],
    );
    prop::collection::vec(point, 1..50).prop_map(|ps| {
        ps.into_iter()
            .map(|(a, b, v)| Evaluation::new([a as f64, b as f64], v))
            .collect()
    })
}

fn front_points(max: usize) -> impl Strategy<Value = Vec<[f64; 2]>> {
    prop::collection::vec((0.001f64..1.0, 0.001f64..1.0), 1..=max)
        .prop_map(|v| v.into_iter().map(|(a, b)| [a, b]).collect())
}

/// Random bi-objective problem: f1 = Σ a_k x_k, f2 = Σ b_k (1 − x_k)²,
/// feasible iff Σ x_k ≥ t.
#[derive(Debug, Clone)]
struct Quadratic {
    a: Vec<f64>,
    b: Vec<f64>,
    t: f64,
}

impl Problem for Quadratic {
    fn n_vars(&self) -> usize {
        self.a.len()
    }
    fn bounds(&self) -> (f64, f64) {
        (0.0, 1.0)
    }
    fn evaluate(&self, x: &[f64]) -> Result<Evaluation> {
        let f1 = self.a.iter().zip(x).map(|(a, x)| a * x).sum();
        let f2 = self.b.iter().zip(x).map(|(b, x)| b * (1.0 - x) * (1.0 - x)).sum();
        let s: f64 = x.iter().sum();
        Ok(Evaluation::new([f1, f2], (self.t - s).max(0.0)))
    }
    fn anchor(&self) -> Option<Vec<f64>> {
        Some(vec![1.0; self.a.len()])
    }
}

fn quadratic() -> impl Strategy<Value = Quadratic> {
    (1usize..4).prop_flat_map(|n| {
        (
            prop::collection::vec(0.5f64..2.0, n),
            prop::collection::vec(0.5f64..2.0, n),
            0.0f64..0.5,
        )
            .prop_map(move |(a, b, f)| Quadratic { a, b, t: f * n as f64 })
    })
}

fn tiny(seed: u64) -> GAConfig {
    GAConfig {
        population_size: 12,
        n_generations: 6,
        rng_seed: seed,
        ..GAConfig::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sorting_matches_exhaustive_oracle(pop in population()) {
        prop_assert_eq!(non_dominated_sort(&pop), oracle_fronts(&pop));
    }

    #[test]
    fn crowding_marks_extremes(front in front_points(12)) {
        let d = crowding_distance(&front);
        prop_assert_eq!(d.len(), front.len());
        prop_assert!(d.iter().all(|x| *x >= 0.0));
        for axis in 0..2 {
            let lo = (0..front.len()).min_by(|&a, &b| front[a][axis].total_cmp(&front[b][axis]).then(a.cmp(&b))).unwrap();
            prop_assert!(d[lo].is_infinite());
        }
    }

    #[test]
    fn operators_stay_in_bounds(a in 0.0f64..1.0, b in 0.0f64..1.0, u in 0.0f64..1.0, eta in 0.0f64..50.0) {
        let beta = sbx_beta(u, eta);
        prop_assert!(beta.is_finite() && beta >= 0.0);
        let (c1, c2) = quietvoyage_core::optimizer::operators::sbx_gene(a, b, u, eta, 0.0, 1.0);
        prop_assert!((0.0..=1.0).contains(&c1) && (0.0..=1.0).contains(&c2));
        let d = mutation_delta(u, eta);
        prop_assert!((-1.0..=1.0).contains(&d));
        let m = quietvoyage_core::optimizer::operators::mutate_gene(a, u, eta, 0.0, 1.0);
        prop_assert!((0.0..=1.0).contains(&m));
    }

    #[test]
    fn topsis_ranking_ignores_column_scale(front in front_points(15), k in 1e-6f64..1e6, col in 0usize..2) {
        let base = topsis_rank(&front).unwrap();
        let scaled: Vec<[f64; 2]> = front
            .iter()
            .map(|p| {
                let mut q = *p;
                q[col] *= k;
                q
            })
            .collect();
        let r = topsis_rank(&scaled).unwrap();
        prop_assert_eq!(base.order, r.order);
        for (a, b) in base.closeness.iter().zip(&r.closeness) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn dominated_points_add_no_hypervolume(front in front_points(10), extra in (0.0f64..1.0, 0.0f64..1.0)) {
        let hv = hypervolume(&front, [1.1, 1.1]).unwrap();
        prop_assert!((0.0..=1.21).contains(&hv));
        let q = [extra.0, extra.1];
        let mut with = front.clone();
        with.push(q);
        let hv2 = hypervolume(&with, [1.1, 1.1]).unwrap();
        if front.iter().any(|p| pareto_dominates(p, &q) || *p == q) {
            prop_assert!((hv2 - hv).abs() < 1e-15);
        } else {
            prop_assert!(hv2 >= hv);
        }
    }

    #[test]
    fn archive_hypervolume_never_drops(points in prop::collection::vec((0.0f64..1.3, 0.0f64..1.3), 1..60)) {
        let mut archive = ParetoArchive::new();
        let mut last = 0.0;
        for (a, b) in points {
            archive.insert([a, b]);
            let hv = archive.hypervolume([1.1, 1.1]);
            prop_assert!(hv >= last);
            last = hv;
            let pts = archive.points();
            for p in pts {
                prop_assert!(!pts.iter().any(|q| pareto_dominates(q, p)));
            }
        }
    }

    #[test]
    fn seeded_runs_are_bit_identical(p in quadratic(), seed: u64) {
        let cfg = tiny(seed);
        let a = optimize(&p, &cfg);
        let b = optimize(&p, &cfg);
        prop_assert_eq!(format!("{a:?}"), format!("{b:?}"));
    }

    #[test]
    fn front_is_feasible_nondominated_and_archive_is_monotone(p in quadratic(), seed: u64) {
        let ctx = NormalizationContext::new([0.0, 0.0], [p.a.iter().sum(), p.b.iter().sum()]).unwrap();
        let res = evolve(&p, &ctx, &tiny(seed)).unwrap();
        prop_assert!(!res.front.is_empty());
        for m in &res.front {
            prop_assert_eq!(m.constraint_violation, 0.0);
            prop_assert!(m.plan.iter().all(|x| (0.0..=1.0).contains(x)));
            let e = p.evaluate(&m.plan).unwrap();
            prop_assert_eq!(e.objectives, m.raw_objectives);
            prop_assert!(!res.front.iter().any(|o| pareto_dominates(&o.raw_objectives, &m.raw_objectives)));
        }
        prop_assert!(res.hypervolume_history.windows(2).all(|w| w[1] >= w[0]));
        prop_assert!(res.trade_off < res.front.len());
    }
}
