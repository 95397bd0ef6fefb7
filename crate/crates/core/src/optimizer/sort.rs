use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::Evaluation;

/// Constraint-domination: feasibility first, then smaller violation, then
/// Pareto dominance on the objectives (both minimized).
pub fn constrained_dominates(a: &Evaluation, b: &Evaluation) -> bool {
    match (a.is_feasible(), b.is_feasible()) {
        (true, false) => true,
        (false, true) => false,
        (false, false) => a.violation < b.violation,
        (true, true) => pareto_dominates(&a.objectives, &b.objectives),
    }
}

/// `a` is no worse in every component and strictly better in at least one.
pub fn pareto_dominates(a: &[f64; 2], b: &[f64; 2]) -> bool {
    a[0] <= b[0] && a[1] <= b[1] && (a[0] < b[0] || a[1] < b[1])
}

/// Fast nondominated sorting under constraint-domination.
///
/// Fronts are returned best first, each with ascending indices.
pub fn non_dominated_sort(pop: &[Evaluation]) -> Vec<Vec<usize>> {
    let n = pop.len();
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut counts = vec![0usize; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if constrained_dominates(&pop[i], &pop[j]) {
                dominated_by[i].push(j);
                counts[j] += 1;
            } else if constrained_dominates(&pop[j], &pop[i]) {
                dominated_by[j].push(i);
                counts[i] += 1;
            }
        }
    }

    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| counts[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominated_by[i] {
                counts[j] -= 1;
                if counts[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    fronts
}

/// Crowding distance of each member of one front.
///
/// Extremes along either objective get `f64::INFINITY`. Members sharing an
/// objective vector are scored as one point: the lowest-index copy gets that
/// point's distance and the other copies get 0, so repeated extremes cannot
/// crowd out the rest of the front.
pub fn crowding_distance(objectives: &[[f64; 2]]) -> Vec<f64> {
    let n = objectives.len();
    if n == 0 {
        return Vec::new();
    }

    let mut by_value: Vec<usize> = (0..n).collect();
    by_value.sort_by(|&a, &b| cmp_point(&objectives[a], &objectives[b]).then(a.cmp(&b)));
    let mut group = vec![0usize; n];
    let mut first = vec![false; n];
    let mut unique: Vec<[f64; 2]> = Vec::new();
    for (k, &i) in by_value.iter().enumerate() {
        if k == 0 || objectives[i] != objectives[by_value[k - 1]] {
            unique.push(objectives[i]);
            first[i] = true;
        }
        group[i] = unique.len() - 1;
    }

    let m = unique.len();
    let mut dist = vec![if m == 1 { f64::INFINITY } else { 0.0 }; m];
    let mut order: Vec<usize> = (0..m).collect();
    let axes = if m > 1 { 2 } else { 0 };
    #[allow(clippy::needless_range_loop)]
    for axis in 0..axes {
        order.sort_by(|&a, &b| unique[a][axis].total_cmp(&unique[b][axis]).then(a.cmp(&b)));
        let lo = unique[order[0]][axis];
        let hi = unique[order[m - 1]][axis];
        dist[order[0]] = f64::INFINITY;
        dist[order[m - 1]] = f64::INFINITY;
        let span = hi - lo;
        if span <= 0.0 {
            continue;
        }
        for k in 1..m - 1 {
            let gap = unique[order[k + 1]][axis] - unique[order[k - 1]][axis];
            dist[order[k]] += gap / span;
        }
    }
    (0..n).map(|i| if first[i] { dist[group[i]] } else { 0.0 }).collect()
}

fn cmp_point(a: &[f64; 2], b: &[f64; 2]) -> Ordering {
    a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn feasible(a: f64, b: f64) -> Evaluation {
        Evaluation::new([a, b], 0.0)
    }

    #[test]
    fn simple_fronts() {
        let pop = [feasible(1.0, 2.0), feasible(2.0, 1.0), feasible(3.0, 3.0)];
        assert_eq!(non_dominated_sort(&pop), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn infeasible_point_sorts_last() {
        let pop = [
            feasible(5.0, 5.0),
            Evaluation::new([0.0, 0.0], 0.3),
            feasible(6.0, 4.0),
            Evaluation::new([-1.0, -1.0], 0.1),
        ];
        assert_eq!(non_dominated_sort(&pop), vec![vec![0, 2], vec![3], vec![1]]);
    }

    #[test]
    fn crowding_examples() {
        let d = crowding_distance(&[[0.0, 2.0], [2.0, 0.0]]);
        assert!(d.iter().all(|x| x.is_infinite()));
        let d = crowding_distance(&[[0.0, 2.0], [1.0, 1.0], [2.0, 0.0]]);
        assert_eq!(d[1], 2.0);
        assert!(d[0].is_infinite() && d[2].is_infinite());
    }

    #[test]
    fn duplicates_get_finite_distances() {
        let d = crowding_distance(&[[0.0, 4.0], [1.0, 2.0], [3.0, 1.0], [1.0, 2.0], [4.0, 0.0], [4.0, 0.0]]);
        assert_eq!(d[1], 1.5);
        assert_eq!(d[3], 0.0);
        assert!(d[4].is_infinite());
        assert_eq!(d[5], 0.0);
        let d = crowding_distance(&[[1.0, 1.0]; 3]);
        assert!(d[0].is_infinite());
        assert_eq!(&d[1..], [0.0, 0.0]);
        assert!(crowding_distance(&[[1.0, 1.0]])[0].is_infinite());
    }
}
