//! Feasibility-aware differential evolution for constrained two-plus-objective
//! problems under a fixed evaluation budget.
//!
//! The solver relaxes constraint violations through a decaying threshold,
//! ranks candidates with a strength/density fitness, and steers a
//! rank-guided DE mutation toward the current elite. Everything is generic
//! over the float width via [`scalar::Real`]; the `*64`/`*32` aliases at the
//! crate root pick a concrete width. Statistics ([`stats`]) are f64-only.
//!
//! Typical use:
//!
//! ```
//! use rdex_core::{builtin_problem, engine, RunConfig64};
//!
//! let problem = builtin_problem::<f64>("box-sphere").unwrap();
//! let config = RunConfig64 {
//!     max_fe: 2_000,
//!     checkpoint_interval: 200,
//!     seed: 7,
//!     ..Default::default()
//! };
//! let trace = engine::run(&problem, &config).unwrap();
//! assert_eq!(trace.checkpoints.len(), 10);
//! ```

pub mod bounds;
pub mod dominance;
pub mod engine;
pub mod epsilon;
pub mod error;
pub mod fitness;
pub mod individual;
pub mod metrics;
pub mod problems;
pub mod rng;
pub mod scalar;
pub mod selection;
pub mod stats;
pub mod trace;
pub mod variation;

pub use bounds::Bounds;
pub use dominance::{nondominated_indices, nondominated_indices_2d, pareto_dominates};
pub use engine::RunConfig;
pub use epsilon::EpsilonSchedule;
pub use error::{Error, Result};
pub use fitness::FitnessTable;
pub use individual::Individual;
pub use problems::{
    builtin_ids, builtin_problem, builtin_suite, load_reference_front, ProblemDefinition,
    DEFAULT_EQ_TOL,
};
pub use rng::RandomStream;
pub use scalar::Real;
pub use trace::{Checkpoint, RunTrace};

/// Double-precision aliases (the usual choice).
pub type Bounds64 = Bounds<f64>;
pub type Individual64 = Individual<f64>;
pub type Problem64 = ProblemDefinition<f64>;
pub type EpsilonSchedule64 = EpsilonSchedule<f64>;
pub type FitnessTable64 = FitnessTable<f64>;
pub type RunConfig64 = RunConfig<f64>;
pub type RunTrace64 = RunTrace<f64>;
pub type Checkpoint64 = Checkpoint<f64>;

/// Single-precision aliases for memory-constrained experiments.
pub type Bounds32 = Bounds<f32>;
pub type Individual32 = Individual<f32>;
pub type Problem32 = ProblemDefinition<f32>;
pub type EpsilonSchedule32 = EpsilonSchedule<f32>;
pub type FitnessTable32 = FitnessTable<f32>;
pub type RunConfig32 = RunConfig<f32>;
pub type RunTrace32 = RunTrace<f32>;
pub type Checkpoint32 = Checkpoint<f32>;
