use serde::Serialize;

use super::Trajectory;
use crate::preorder::PreorderRelation;
use crate::refinement::Partition;
use crate::scalar::Real;

/// A recorded time where `i ⪰ j` but `y_j` exceeded `y_i` by `gap > tol`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation<T> {
    pub t: T,
    pub i: usize,
    pub j: usize,
    pub gap: T,
}

/// Checks `y_i(t) ≥ y_j(t) − tol` for every related pair at every recorded
/// time. An empty result means the order was kept throughout.
pub fn order_monitor<T: Real>(
    traj: &Trajectory<T>,
    r: &PreorderRelation,
    tol: T,
) -> Vec<Violation<T>> {
    let pairs: Vec<(usize, usize)> = r.pairs().collect();
    let mut out = Vec::new();
    for (&t, y) in traj.times.iter().zip(&traj.states) {
        for &(i, j) in &pairs {
            let gap = y[j] - y[i];
            if gap > tol {
                out.push(Violation { t, i, j, gap });
            }
        }
    }
    out
}

/// Largest spread `max − min` inside any class of `p`, over all records.
pub fn max_class_spread<T: Real>(traj: &Trajectory<T>, p: &Partition) -> T {
    let mut worst = T::zero();
    for y in &traj.states {
        for class in p.classes() {
            let (lo, hi) = class
                .iter()
                .fold((T::infinity(), T::neg_infinity()), |(lo, hi), &v| {
                    (lo.min(y[v]), hi.max(y[v]))
                });
            worst = worst.max(hi - lo);
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::generate;
    use crate::preorder::max_inductive_preorder;

    #[test]
    fn zero_trajectory_is_clean() {
        let g = generate("disjoint_union_cliques", &[3.0, 2.0], None).unwrap();
        let r = max_inductive_preorder(&g);
        let traj: Trajectory<f64> = Trajectory {
            times: vec![0.0, 1.0],
            states: vec![vec![0.0; 5], vec![0.0; 5]],
        };
        assert!(order_monitor(&traj, &r, 1e-8).is_empty());
    }

    #[test]
    fn reports_crossing_pairs() {
        let g = generate("disjoint_union_cliques", &[3.0, 2.0], None).unwrap();
        let r = max_inductive_preorder(&g);
        let traj: Trajectory<f64> = Trajectory {
            times: vec![0.0, 1.0],
            states: vec![vec![0.5, 0.5, 0.5, 0.1, 0.1], vec![0.5, 0.5, 0.5, 0.6, 0.1]],
        };
        let report = order_monitor(&traj, &r, 1e-8);
        assert_eq!(report.len(), 4); // K2 node 3 now above all three triangle nodes and its partner 4
        assert!(report.iter().all(|v| v.t == 1.0 && v.j == 3));
        assert!(report
            .iter()
            .any(|v| v.i == 0 && (v.gap - 0.1).abs() < 1e-12));
        assert_eq!(
            serde_json::to_string(&report[0]).unwrap(),
            format!(
                r#"{{"t":1.0,"i":{},"j":3,"gap":{}}}"#,
                report[0].i, report[0].gap
            )
        );
    }

    #[test]
    fn spread_per_class() {
        let p = Partition::from_labels(&[0, 0, 1]);
        let traj: Trajectory<f64> = Trajectory {
            times: vec![0.0],
            states: vec![vec![0.2, 0.5, 0.9]],
        };
        assert!((max_class_spread(&traj, &p) - 0.3).abs() < 1e-15);
    }
}
