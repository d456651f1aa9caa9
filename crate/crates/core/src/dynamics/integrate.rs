use std::io::Write;

use super::field::{LogisticField, VectorField};
use super::{check_len, DynamicsError};
use crate::graph::Graph;
use crate::scalar::Real;

/// Infection rate, time horizon and step size for a logistic run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogisticParams<T> {
    pub gamma: T,
    pub horizon: T,
    pub dt: T,
}

impl<T: Real> LogisticParams<T> {
    pub fn new(gamma: T, horizon: T, dt: T) -> Result<Self, DynamicsError> {
        if !gamma.is_finite() || gamma < T::zero() {
            return Err(DynamicsError::InvalidParams(format!(
                "gamma = {gamma} must be finite and ≥ 0"
            )));
        }
        if !dt.is_finite() || dt <= T::zero() || !horizon.is_finite() || dt > horizon {
            return Err(DynamicsError::InvalidParams(format!(
                "need 0 < dt ≤ horizon, got dt = {dt}, horizon = {horizon}"
            )));
        }
        Ok(LogisticParams { gamma, horizon, dt })
    }
}

/// Time-stamped states of a run.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory<T> {
    pub times: Vec<T>,
    pub states: Vec<Vec<T>>,
}

impl<T: Real> Trajectory<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.states.first().map_or(0, Vec::len)
    }

    pub fn last_state(&self) -> &[T] {
        self.states.last().map_or(&[], Vec::as_slice)
    }

    /// Largest distance of any recorded coordinate outside `[0, 1]`.
    pub fn max_box_excursion(&self) -> T {
        self.states
            .iter()
            .flatten()
            .map(|&v| (-v).max(v - T::one()).max(T::zero()))
            .fold(T::zero(), T::max)
    }

    /// Largest coordinatewise gap `|self − other|` over matching records.
    pub fn max_abs_diff(&self, other: &Trajectory<T>) -> T {
        self.states
            .iter()
            .zip(&other.states)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| (x - y).abs()))
            .fold(T::zero(), T::max)
    }

    /// Applies `f` to every recorded state, keeping the time stamps.
    pub fn map_states<F: FnMut(&[T]) -> Vec<T>>(&self, mut f: F) -> Trajectory<T> {
        Trajectory {
            times: self.times.clone(),
            states: self.states.iter().map(|s| f(s)).collect(),
        }
    }

    /// CSV with header `t,y0,…,y{N−1}` and one row per record.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let header: Vec<String> = std::iter::once("t".to_string())
            .chain((0..self.dim()).map(|i| format!("y{i}")))
            .collect();
        w.write_record(&header)?;
        for (t, state) in self.times.iter().zip(&self.states) {
            let row: Vec<String> = std::iter::once(t.to_string())
                .chain(state.iter().map(|v| v.to_string()))
                .collect();
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV is UTF-8")
    }
}

fn axpy<T: Real>(y: &[T], h: T, k: &[T], out: &mut [T]) {
    for ((o, &a), &b) in out.iter_mut().zip(y).zip(k) {
        *o = a + h * b;
    }
}

/// Classical fixed-step RK4 from `t = 0` to `horizon`.
///
/// Every step has length `dt` except possibly the last, which is shortened
/// to land on `horizon`. States are recorded after every step, and not
/// clamped.
pub fn integrate_rk4<T, F>(
    field: &F,
    y0: &[T],
    horizon: T,
    dt: T,
) -> Result<Trajectory<T>, DynamicsError>
where
    T: Real,
    F: VectorField<T> + ?Sized,
{
    check_len(field.dim(), y0.len())?;
    if !dt.is_finite() || dt <= T::zero() || !horizon.is_finite() || horizon < T::zero() {
        return Err(DynamicsError::InvalidParams(format!(
            "dt = {dt}, horizon = {horizon}"
        )));
    }
    let ratio = horizon / dt;
    // landing within 1e-6 of a step boundary counts as an exact fit
    let steps = (ratio - T::lit(1e-6)).ceil().max(T::zero());
    let steps = steps
        .to_usize()
        .ok_or_else(|| DynamicsError::InvalidParams("too many steps".into()))?;

    let n = y0.len();
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(T::zero());
    states.push(y0.to_vec());

    let (mut k1, mut k2, mut k3, mut k4, mut tmp) = (
        vec![T::zero(); n],
        vec![T::zero(); n],
        vec![T::zero(); n],
        vec![T::zero(); n],
        vec![T::zero(); n],
    );
    let mut y = y0.to_vec();
    let two = T::count(2);
    let six = T::count(6);
    for step in 1..=steps {
        let t_prev = T::count(step - 1) * dt;
        let t_next = if step == steps {
            horizon
        } else {
            T::count(step) * dt
        };
        let h = t_next - t_prev;
        field.eval(&y, &mut k1);
        axpy(&y, h / two, &k1, &mut tmp);
        field.eval(&tmp, &mut k2);
        axpy(&y, h / two, &k2, &mut tmp);
        field.eval(&tmp, &mut k3);
        axpy(&y, h, &k3, &mut tmp);
        field.eval(&tmp, &mut k4);
        for i in 0..n {
            y[i] = y[i] + h / six * (k1[i] + two * k2[i] + two * k3[i] + k4[i]);
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(DynamicsError::NonFinite { step });
        }
        times.push(t_next);
        states.push(y.clone());
    }
    Ok(Trajectory { times, states })
}

/// RK4 run of the logistic system on `g`.
pub fn simulate_logistic<T: Real>(
    g: &Graph,
    params: &LogisticParams<T>,
    y0: &[T],
) -> Result<Trajectory<T>, DynamicsError> {
    let field = LogisticField {
        graph: g,
        gamma: params.gamma,
    };
    integrate_rk4(&field, y0, params.horizon, params.dt)
}

/// Iterates `y ← y + h·F(y)` for `steps` steps, recording every state at
/// times `k·h`.
pub fn euler_map<T, F>(
    field: &F,
    h: T,
    y0: &[T],
    steps: usize,
) -> Result<Trajectory<T>, DynamicsError>
where
    T: Real,
    F: VectorField<T> + ?Sized,
{
    check_len(field.dim(), y0.len())?;
    let n = y0.len();
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(T::zero());
    states.push(y0.to_vec());
    let mut y = y0.to_vec();
    let mut f = vec![T::zero(); n];
    for step in 1..=steps {
        field.eval(&y, &mut f);
        for (v, &d) in y.iter_mut().zip(&f) {
            *v = *v + h * d;
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(DynamicsError::NonFinite { step });
        }
        times.push(T::count(step) * h);
        states.push(y.clone());
    }
    Ok(Trajectory { times, states })
}

/// Discrete-time logistic map iterated `steps` times with step `h`, after
/// checking `h·(1 + γ·d_max) ≤ 1`.
pub fn iterate_discrete<T: Real>(
    g: &Graph,
    gamma: T,
    h: T,
    y0: &[T],
    steps: usize,
) -> Result<Trajectory<T>, DynamicsError> {
    // validates h against the step bound
    super::field::discrete_step(g, gamma, h, y0)?;
    euler_map(&LogisticField { graph: g, gamma }, h, y0, steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::FnField;
    use crate::generators::generate;

    #[test]
    fn params_validation() {
        assert!(LogisticParams::new(1.0, 10.0, 1e-3).is_ok());
        assert!(LogisticParams::new(-1.0, 10.0, 1e-3).is_err());
        assert!(LogisticParams::new(1.0, 10.0, 0.0).is_err());
        assert!(LogisticParams::new(1.0, 1.0, 2.0).is_err());
        assert!(LogisticParams::new(f64::NAN, 1.0, 0.1).is_err());
    }

    #[test]
    fn zero_start_stays_zero() {
        let g = generate("erdos_renyi", &[8.0, 0.5], Some(4)).unwrap();
        let traj = simulate_logistic(&g, &LogisticParams::new(2.0, 1.0, 0.01).unwrap(), &[0.0; 8])
            .unwrap();
        assert!(traj.states.iter().flatten().all(|&v| v == 0.0));
    }

    #[test]
    fn cycle_equilibrium_is_constant() {
        let g = generate("cycle", &[4.0], None).unwrap();
        let traj = simulate_logistic(
            &g,
            &LogisticParams::new(1.0f64, 10.0, 1e-3).unwrap(),
            &[0.5; 4],
        )
        .unwrap();
        for state in &traj.states {
            for &v in state {
                assert!((v - 0.5).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn isolated_node_decays_exponentially() {
        let g = Graph::empty(1);
        let traj =
            simulate_logistic(&g, &LogisticParams::new(7.0, 1.0, 1e-3).unwrap(), &[0.8]).unwrap();
        assert_eq!(*traj.times.last().unwrap(), 1.0);
        let exact = 0.8 / std::f64::consts::E;
        assert!((traj.last_state()[0] - exact).abs() <= 1e-8);
    }

    #[test]
    fn time_grid_lands_on_horizon() {
        let field = FnField {
            dim: 1,
            f: |_: &[f64], out: &mut [f64]| out[0] = 1.0,
        };
        let traj = integrate_rk4(&field, &[0.0], 1.05, 0.1).unwrap();
        assert_eq!(traj.len(), 12);
        assert_eq!(*traj.times.last().unwrap(), 1.05);
        assert!(traj.times.windows(2).all(|w| w[0] < w[1]));
        assert!((traj.last_state()[0] - 1.05).abs() < 1e-12);

        let traj = integrate_rk4(&field, &[0.0], 10.0, 1e-3).unwrap();
        assert_eq!(traj.len(), 10_001);
        assert_eq!(*traj.times.last().unwrap(), 10.0);
    }

    #[test]
    fn rk4_is_fourth_order() {
        // ẏ = −y on [0, 1]: halving dt cuts the error by about 16
        let field = FnField {
            dim: 1,
            f: |y: &[f64], out: &mut [f64]| out[0] = -y[0],
        };
        let exact = (-1.0f64).exp();
        let err = |dt: f64| {
            (integrate_rk4(&field, &[1.0], 1.0, dt).unwrap().last_state()[0] - exact).abs()
        };
        let ratio = err(0.1) / err(0.05);
        assert!((14.0..18.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn blow_up_is_reported() {
        let field = FnField {
            dim: 1,
            f: |y: &[f64], out: &mut [f64]| out[0] = y[0] * y[0],
        };
        assert!(matches!(
            integrate_rk4(&field, &[1.0], 10.0, 0.1),
            Err(DynamicsError::NonFinite { .. })
        ));
    }

    #[test]
    fn discrete_iteration_records_every_step() {
        let g = generate("cycle", &[4.0], None).unwrap();
        let traj = iterate_discrete(&g, 1.0, 0.25, &[0.1, 0.2, 0.3, 0.4], 8).unwrap();
        assert_eq!(traj.len(), 9);
        assert_eq!(traj.times[8], 2.0);
        assert!(iterate_discrete(&g, 1.0, 0.5, &[0.1; 4], 8).is_err());
    }

    #[test]
    fn csv_layout() {
        let traj = Trajectory {
            times: vec![0.0, 0.5],
            states: vec![vec![0.1, 0.2], vec![0.3, 0.25]],
        };
        assert_eq!(traj.to_csv_string(), "t,y0,y1\n0,0.1,0.2\n0.5,0.3,0.25\n");
    }

    #[test]
    fn works_in_single_precision() {
        let g = generate("cycle", &[4.0], None).unwrap();
        let params = LogisticParams::new(1.0f32, 2.0, 0.01).unwrap();
        let traj = simulate_logistic(&g, &params, &[0.5f32; 4]).unwrap();
        assert!(traj.last_state().iter().all(|&v| (v - 0.5).abs() < 1e-5));
    }
}
