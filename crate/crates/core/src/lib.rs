//! Degree-dominance preorder on the nodes of a simple undirected graph.
//!
//! Node `i` dominates `j` (`i ⪰ j`) when the neighbors of `j` can be sent
//! injectively to neighbors of `i` that dominate them in turn. The relation
//! is computed as a greatest fixed point ([`preorder::max_inductive_preorder`]);
//! its equivalence classes coincide with the coarsest equitable partition
//! ([`refinement::color_refinement`]).
//!
//! Monotone network dynamics such as the logistic epidemic model keep node
//! states ordered along `⪰`. The [`dynamics`] module simulates these systems,
//! monitors the order, lumps them onto partition classes, and brackets
//! arbitrary trajectories between lumped ones.
//!
//! The [`oracle`] module holds brute-force references (walk-tree embeddings,
//! automorphism orbits) used by the tests and the `verify` command.

pub mod dynamics;
pub mod generators;
pub mod graph;
pub mod iterated;
pub mod matching;
pub mod oracle;
pub mod preorder;
pub mod refinement;
pub mod scalar;

pub use generators::{generate, GeneratorSpec};
pub use graph::{Graph, GraphError};
pub use iterated::{iterated_degree, iterated_degrees, IteratedDegree};
pub use matching::injective_cover_exists;
pub use preorder::{condensation, equivalence_classes, max_inductive_preorder, PreorderRelation};
pub use refinement::{color_refinement, is_equitable, quotient_matrix, Partition, QuotientMatrix};
pub use scalar::{Real, Scalar};

/// Exact rational scalar for field evaluations without rounding.
pub type Rational = num_rational::Ratio<i64>;

pub type Trajectory64 = dynamics::Trajectory<f64>;
pub type Trajectory32 = dynamics::Trajectory<f32>;
pub type LogisticParams64 = dynamics::LogisticParams<f64>;
pub type LogisticParams32 = dynamics::LogisticParams<f32>;
pub type QuotientSystem64 = dynamics::QuotientSystem<f64>;
pub type QuotientSystemExact = dynamics::QuotientSystem<Rational>;
pub type BoundRun64 = dynamics::BoundRun<f64>;
pub type Violation64 = dynamics::Violation<f64>;
