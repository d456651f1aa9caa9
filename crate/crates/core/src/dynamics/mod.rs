//! Logistic and monotone network dynamics.
//!
//! The logistic (SIS-type) system is
//! `ẏ_i = (γ Σ_{j~i} y_j)(1 − y_i) − y_i`. Its off-diagonal partial
//! derivatives are `γ(1 − y_i) ≥ 0` on the unit box, so the flow is
//! order-preserving: states that start ordered along `⪰` stay ordered,
//! class-constant states stay class-constant, and the lumped system on the
//! coarsest equitable partition brackets arbitrary starts.

mod bounds;
mod field;
mod integrate;
mod lumping;
mod monitor;

use thiserror::Error;

pub use bounds::{bound_run, BoundRun, BracketSide, BracketViolation};
pub use field::{
    discrete_step, generic_field, logistic_field, logistic_kernel, max_discrete_step,
    quotient_field, FnField, GenericField, LogisticField, QuotientSystem, VectorField,
};
pub use integrate::{
    euler_map, integrate_rk4, iterate_discrete, simulate_logistic, LogisticParams, Trajectory,
};
pub use lumping::{
    consistent_initial, lift, order_violations_at, project, sample_consistent_values,
};
pub use monitor::{max_class_spread, order_monitor, Violation};

/// Numerical band around `[0, 1]` that logistic states must stay inside.
pub const BOX_EPS: f64 = 1e-9;
/// Default tolerance for order and lumping checks.
pub const ORDER_TOL: f64 = 1e-8;
/// Default tolerance for within-class synchrony.
pub const SYNC_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum DynamicsError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("non-finite state at step {step}")]
    NonFinite { step: usize },
    #[error("step h = {h} violates h·(1 + γ·d_max) ≤ 1 (largest valid step {max})")]
    StepTooLarge { h: String, max: String },
    #[error("state has length {got}, expected {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("state is not constant on class {class}: nodes {a} and {b} differ")]
    NotClassConstant { class: usize, a: usize, b: usize },
    #[error("initial state violates the preorder at {} pair(s): {pairs:?}", pairs.len())]
    Inconsistent { pairs: Vec<(usize, usize)> },
    #[error("partition is not equitable for this graph")]
    NotEquitable,
}

fn check_len(expected: usize, got: usize) -> Result<(), DynamicsError> {
    if expected != got {
        return Err(DynamicsError::SizeMismatch { expected, got });
    }
    Ok(())
}
