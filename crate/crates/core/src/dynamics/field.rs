use std::cmp::Ordering;

use super::{check_len, DynamicsError};
use crate::graph::Graph;
use crate::refinement::{quotient_matrix, Partition, QuotientMatrix};
use crate::scalar::Scalar;

/// An autonomous vector field `ẏ = F(y)`.
pub trait VectorField<T> {
    fn dim(&self) -> usize;
    fn eval(&self, y: &[T], out: &mut [T]);

    fn eval_vec(&self, y: &[T]) -> Vec<T>
    where
        T: Scalar,
    {
        let mut out = vec![T::zero(); self.dim()];
        self.eval(y, &mut out);
        out
    }
}

/// Wraps a closure as a [`VectorField`].
pub struct FnField<F> {
    pub dim: usize,
    pub f: F,
}

impl<T, F: Fn(&[T], &mut [T])> VectorField<T> for FnField<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, y: &[T], out: &mut [T]) {
        (self.f)(y, out)
    }
}

/// The logistic field on a graph.
#[derive(Clone, Debug)]
pub struct LogisticField<'g, T> {
    pub graph: &'g Graph,
    pub gamma: T,
}

impl<T: Scalar> VectorField<T> for LogisticField<'_, T> {
    fn dim(&self) -> usize {
        self.graph.node_count()
    }

    fn eval(&self, y: &[T], out: &mut [T]) {
        for (i, slot) in out.iter_mut().enumerate() {
            let pressure = self
                .graph
                .neighbors(i)
                .iter()
                .fold(T::zero(), |acc, &j| acc + y[j].clone());
            *slot = self.gamma.clone() * pressure * (T::one() - y[i].clone()) - y[i].clone();
        }
    }
}

/// `(Σ_{j~i} γ y_j)(1 − y_i) − y_i` for every node.
pub fn logistic_field<T: Scalar>(g: &Graph, gamma: T, y: &[T]) -> Result<Vec<T>, DynamicsError> {
    check_len(g.node_count(), y.len())?;
    Ok(LogisticField { graph: g, gamma }.eval_vec(y))
}

/// Field built from a node kernel `F̄(own value, neighbor values)`.
///
/// Neighbor values are handed to the kernel sorted ascending, so the result
/// never depends on how neighbors are listed. The kernel should be
/// nondecreasing in each neighbor value for the order results to apply.
/// Kernels written for a fixed arity pad with zeros themselves.
pub struct GenericField<'g, F> {
    pub graph: &'g Graph,
    pub kernel: F,
}

impl<T, F> VectorField<T> for GenericField<'_, F>
where
    T: Scalar,
    F: Fn(&T, &[T]) -> T,
{
    fn dim(&self) -> usize {
        self.graph.node_count()
    }

    fn eval(&self, y: &[T], out: &mut [T]) {
        let mut around = Vec::with_capacity(self.graph.max_degree());
        for (i, slot) in out.iter_mut().enumerate() {
            around.clear();
            around.extend(self.graph.neighbors(i).iter().map(|&j| y[j].clone()));
            around.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
            *slot = (self.kernel)(&y[i], &around);
        }
    }
}

pub fn generic_field<T, F>(g: &Graph, kernel: F, y: &[T]) -> Result<Vec<T>, DynamicsError>
where
    T: Scalar,
    F: Fn(&T, &[T]) -> T,
{
    check_len(g.node_count(), y.len())?;
    Ok(GenericField { graph: g, kernel }.eval_vec(y))
}

/// The logistic right-hand side as a node kernel.
pub fn logistic_kernel<T: Scalar>(gamma: T) -> impl Fn(&T, &[T]) -> T + Clone {
    move |x, around| {
        let pressure = around.iter().fold(T::zero(), |acc, v| acc + v.clone());
        gamma.clone() * pressure * (T::one() - x.clone()) - x.clone()
    }
}

/// Largest step `h` with `h·(1 + γ·d_max) ≤ 1`.
pub fn max_discrete_step<T: Scalar>(g: &Graph, gamma: T) -> T {
    T::one() / (T::one() + gamma * T::count(g.max_degree()))
}

fn check_step<T: Scalar>(max_degree: usize, gamma: &T, h: &T) -> Result<(), DynamicsError> {
    let load = h.clone() * (T::one() + gamma.clone() * T::count(max_degree));
    // one part in 10^12 of slack absorbs rounding in 1/(1 + γ·d_max)
    if *h <= T::zero() || load > T::one() + T::lit(1e-12) {
        return Err(DynamicsError::StepTooLarge {
            h: format!("{h:?}"),
            max: format!(
                "{:?}",
                T::one() / (T::one() + gamma.clone() * T::count(max_degree))
            ),
        });
    }
    Ok(())
}

/// One explicit-Euler step `y + h·F(y)` of the logistic system.
///
/// The step bound `h·(1 + γ·d_max) ≤ 1` keeps the unit box invariant and
/// makes the update nondecreasing in every coordinate.
pub fn discrete_step<T: Scalar>(
    g: &Graph,
    gamma: T,
    h: T,
    y: &[T],
) -> Result<Vec<T>, DynamicsError> {
    check_len(g.node_count(), y.len())?;
    check_step(g.max_degree(), &gamma, &h)?;
    let field = logistic_field(g, gamma, y)?;
    Ok(y.iter()
        .zip(field)
        .map(|(v, f)| v.clone() + h.clone() * f)
        .collect())
}

/// Lumped logistic system on the classes of an equitable partition.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientSystem<T> {
    pub s: Vec<Vec<usize>>,
    pub sizes: Vec<usize>,
    pub gamma: T,
}

impl<T: Scalar> QuotientSystem<T> {
    pub fn new(q: &QuotientMatrix, gamma: T) -> Result<Self, DynamicsError> {
        if q.s.len() != q.k || q.sizes.len() != q.k || q.s.iter().any(|row| row.len() != q.k) {
            return Err(DynamicsError::InvalidParams(
                "quotient matrix is not K×K".into(),
            ));
        }
        Ok(QuotientSystem {
            s: q.s.clone(),
            sizes: q.sizes.clone(),
            gamma,
        })
    }

    pub fn from_partition(g: &Graph, p: &Partition, gamma: T) -> Result<Self, DynamicsError> {
        let q = quotient_matrix(g, p).map_err(|_| DynamicsError::NotEquitable)?;
        QuotientSystem::new(&q, gamma)
    }

    pub fn num_classes(&self) -> usize {
        self.s.len()
    }

    /// Largest class degree (row sum of `S`).
    pub fn max_degree(&self) -> usize {
        self.s.iter().map(|row| row.iter().sum()).max().unwrap_or(0)
    }
}

impl<T: Scalar> VectorField<T> for QuotientSystem<T> {
    fn dim(&self) -> usize {
        self.s.len()
    }

    fn eval(&self, z: &[T], out: &mut [T]) {
        for (c, slot) in out.iter_mut().enumerate() {
            let pressure = self.s[c].iter().zip(z).fold(T::zero(), |acc, (&count, v)| {
                acc + T::count(count) * v.clone()
            });
            *slot = self.gamma.clone() * pressure * (T::one() - z[c].clone()) - z[c].clone();
        }
    }
}

/// `(Σ_{c'} γ S[c][c'] z_{c'})(1 − z_c) − z_c` for every class.
pub fn quotient_field<T: Scalar>(q: &QuotientSystem<T>, z: &[T]) -> Result<Vec<T>, DynamicsError> {
    check_len(q.num_classes(), z.len())?;
    Ok(q.eval_vec(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::generate;
    use crate::refinement::color_refinement;
    use approx::assert_abs_diff_eq;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn q(n: i64, d: i64) -> Q {
        Ratio::new(n, d)
    }

    fn named(name: &str, params: &[f64]) -> Graph {
        generate(name, params, Some(2)).unwrap()
    }

    #[test]
    fn zero_is_disease_free_equilibrium() {
        let g = named("erdos_renyi", &[10.0, 0.4]);
        assert_eq!(logistic_field(&g, 2.5, &[0.0; 10]).unwrap(), vec![0.0; 10]);
    }

    #[test]
    fn all_ones_decays_at_unit_rate() {
        let g = named("erdos_renyi", &[10.0, 0.4]);
        assert_eq!(logistic_field(&g, 2.5, &[1.0; 10]).unwrap(), vec![-1.0; 10]);
    }

    #[test]
    fn cycle_endemic_equilibrium_exact() {
        let g = named("cycle", &[4.0]);
        let f = logistic_field(&g, q(1, 1), &[q(1, 2); 4]).unwrap();
        assert_eq!(f, vec![q(0, 1); 4]);
        // d-regular: 1 − 1/(γd) is stationary exactly
        let frucht = named("frucht", &[]);
        let f = logistic_field(&frucht, q(1, 1), &[q(2, 3); 12]).unwrap();
        assert_eq!(f, vec![q(0, 1); 12]);
        let f = logistic_field(&frucht, q(5, 7), &[q(1, 1) - q(7, 15); 12]).unwrap();
        assert_eq!(f, vec![q(0, 1); 12]);
    }

    #[test]
    fn kernel_matches_logistic_field_exactly_on_rationals() {
        let g = named("erdos_renyi", &[9.0, 0.5]);
        let y: Vec<Q> = (0..9).map(|k| q(k * 7 % 11, 11)).collect();
        let direct = logistic_field(&g, q(3, 2), &y).unwrap();
        let via_kernel = generic_field(&g, logistic_kernel(q(3, 2)), &y).unwrap();
        assert_eq!(direct, via_kernel);
    }

    #[test]
    fn decoupled_decay_kernel() {
        let g = named("cycle", &[5.0]);
        let y = [0.1, 0.2, 0.3, 0.4, 0.5];
        let f = generic_field(&g, |x: &f64, _: &[f64]| -*x, &y).unwrap();
        assert_eq!(f, vec![-0.1, -0.2, -0.3, -0.4, -0.5]);
    }

    #[test]
    fn mean_minus_self_kernel() {
        let g = named("cycle", &[4.0]);
        let mean = |x: &f64, m: &[f64]| m.iter().sum::<f64>() / m.len() as f64 - x;
        let f = generic_field(&g, mean, &[0.0, 1.0, 0.0, 1.0]).unwrap();
        assert_eq!(f, vec![1.0, -1.0, 1.0, -1.0]);
    }

    #[test]
    fn discrete_step_examples() {
        let g = named("cycle", &[4.0]);
        assert_eq!(
            discrete_step(&g, 1.0, 0.2, &[0.0; 4]).unwrap(),
            vec![0.0; 4]
        );
        assert_eq!(
            discrete_step(&g, q(1, 1), q(1, 3), &[q(1, 2); 4]).unwrap(),
            vec![q(1, 2); 4]
        );
        let single = Graph::empty(1);
        let y = discrete_step(&single, 3.0, 0.1, &[0.8]).unwrap();
        assert_abs_diff_eq!(y[0], 0.72, epsilon = 1e-15);
        assert_eq!(
            discrete_step(&single, q(3, 1), q(1, 10), &[q(4, 5)]).unwrap(),
            vec![q(18, 25)]
        );
    }

    #[test]
    fn discrete_step_bound() {
        let g = named("cycle", &[4.0]);
        // d_max = 2, γ = 1: h ≤ 1/3
        assert_eq!(max_discrete_step(&g, q(1, 1)), q(1, 3));
        assert!(discrete_step(&g, q(1, 1), q(1, 3), &[q(1, 5); 4]).is_ok());
        assert!(matches!(
            discrete_step(&g, q(1, 1), q(34, 100), &[q(1, 5); 4]),
            Err(DynamicsError::StepTooLarge { .. })
        ));
        assert!(discrete_step(&g, 1.0, max_discrete_step(&g, 1.0), &[0.3; 4]).is_ok());
        assert!(discrete_step(&g, 1.0, 0.0, &[0.3; 4]).is_err());
    }

    #[test]
    fn quotient_field_examples() {
        let c4 = named("cycle", &[4.0]);
        let sys = QuotientSystem::from_partition(&c4, &Partition::unit(4), 1.0).unwrap();
        assert_eq!(quotient_field(&sys, &[0.5]).unwrap(), vec![0.0]);
        assert_eq!(quotient_field(&sys, &[0.0]).unwrap(), vec![0.0]);

        let p4 = named("path", &[4.0]);
        let sys = QuotientSystem::from_partition(&p4, &color_refinement(&p4), 1.0).unwrap();
        assert_eq!(quotient_field(&sys, &[0.0, 1.0]).unwrap(), vec![1.0, -1.0]);
        assert_eq!(sys.max_degree(), 2);
    }

    #[test]
    fn quotient_needs_equitable_partition() {
        let p4 = named("path", &[4.0]);
        assert_eq!(
            QuotientSystem::from_partition(&p4, &Partition::unit(4), 1.0),
            Err(DynamicsError::NotEquitable)
        );
    }

    #[test]
    fn size_mismatch() {
        let g = named("cycle", &[4.0]);
        assert_eq!(
            logistic_field(&g, 1.0, &[0.0; 3]),
            Err(DynamicsError::SizeMismatch {
                expected: 4,
                got: 3
            })
        );
    }
}
