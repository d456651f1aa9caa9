use serde::Serialize;

use super::field::QuotientSystem;
use super::integrate::{integrate_rk4, simulate_logistic, LogisticParams, Trajectory};
use super::lumping::lift;
use super::{check_len, DynamicsError};
use crate::graph::Graph;
use crate::refinement::Partition;
use crate::scalar::Real;

/// Full trajectory with lower and upper lumped envelopes.
#[derive(Clone, Debug)]
pub struct BoundRun<T> {
    pub lower: Trajectory<T>,
    pub upper: Trajectory<T>,
    pub full: Trajectory<T>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BracketSide {
    Lower,
    Upper,
}

/// A record where the full state left the envelope by more than the tolerance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BracketViolation<T> {
    pub t: T,
    pub node: usize,
    pub side: BracketSide,
    pub gap: T,
}

impl<T: Real> BoundRun<T> {
    /// Every record and node where `lower ≤ full ≤ upper` fails by more than `tol`.
    pub fn bracket_violations(&self, tol: T) -> Vec<BracketViolation<T>> {
        let mut out = Vec::new();
        for (k, &t) in self.full.times.iter().enumerate() {
            let (lo, y, hi) = (
                &self.lower.states[k],
                &self.full.states[k],
                &self.upper.states[k],
            );
            for node in 0..y.len() {
                if lo[node] - y[node] > tol {
                    out.push(BracketViolation {
                        t,
                        node,
                        side: BracketSide::Lower,
                        gap: lo[node] - y[node],
                    });
                }
                if y[node] - hi[node] > tol {
                    out.push(BracketViolation {
                        t,
                        node,
                        side: BracketSide::Upper,
                        gap: y[node] - hi[node],
                    });
                }
            }
        }
        out
    }
}

/// Integrates the full system from `y0` alongside the lumped system started
/// from the per-class minimum and maximum of `y0`, lifted back to nodes.
///
/// `p` should be the coarsest equitable partition of `g`; any equitable
/// partition is accepted.
pub fn bound_run<T: Real>(
    g: &Graph,
    params: &LogisticParams<T>,
    y0: &[T],
    p: &Partition,
) -> Result<BoundRun<T>, DynamicsError> {
    check_len(g.node_count(), y0.len())?;
    let system = QuotientSystem::from_partition(g, p, params.gamma)?;
    let extreme = |pick: fn(T, T) -> T| -> Vec<T> {
        p.classes()
            .iter()
            .map(|class| {
                class
                    .iter()
                    .map(|&v| y0[v])
                    .reduce(pick)
                    .expect("classes are nonempty")
            })
            .collect()
    };
    let (z_lo, z_hi) = (extreme(T::min), extreme(T::max));
    let lifted = |z: &[T]| -> Result<Trajectory<T>, DynamicsError> {
        let traj = integrate_rk4(&system, z, params.horizon, params.dt)?;
        Ok(traj.map_states(|s| lift(p, s).expect("class count matches")))
    };
    Ok(BoundRun {
        lower: lifted(&z_lo)?,
        upper: lifted(&z_hi)?,
        full: simulate_logistic(g, params, y0)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::generate;
    use crate::refinement::color_refinement;

    fn params() -> LogisticParams<f64> {
        LogisticParams::new(1.0, 10.0, 1e-3).unwrap()
    }

    #[test]
    fn class_constant_start_collapses_envelope() {
        let g = generate("path", &[4.0], None).unwrap();
        let p = color_refinement(&g);
        let run = bound_run(&g, &params(), &[0.3, 0.6, 0.6, 0.3], &p).unwrap();
        assert!(run.lower.max_abs_diff(&run.full) <= 1e-8);
        assert!(run.upper.max_abs_diff(&run.full) <= 1e-8);
    }

    #[test]
    fn cycle_bracketed_by_scalar_bounds() {
        let g = generate("cycle", &[4.0], None).unwrap();
        let p = color_refinement(&g);
        let run = bound_run(&g, &params(), &[0.1, 0.2, 0.1, 0.2], &p).unwrap();
        assert!(run.bracket_violations(1e-8).is_empty());
        assert_eq!(run.lower.states[0], vec![0.1; 4]);
        assert_eq!(run.upper.states[0], vec![0.2; 4]);
        // the envelope is not trivially wide: both bounds approach the endemic state
        let last = run.upper.last_state()[0] - run.lower.last_state()[0];
        assert!(last < 1e-3);
    }

    #[test]
    fn zero_start() {
        let g = generate("star", &[4.0], None).unwrap();
        let p = color_refinement(&g);
        let run = bound_run(&g, &params(), &[0.0; 5], &p).unwrap();
        for traj in [&run.lower, &run.upper, &run.full] {
            assert!(traj.states.iter().flatten().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn detects_escape() {
        let g = generate("cycle", &[4.0], None).unwrap();
        let p = color_refinement(&g);
        let mut run = bound_run(&g, &params(), &[0.1, 0.2, 0.1, 0.2], &p).unwrap();
        run.full.states[5][2] = 0.9;
        let v = run.bracket_violations(1e-8);
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].node, v[0].side), (2, BracketSide::Upper));
    }
}
