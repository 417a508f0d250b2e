//! Sparrow search (SSA) and geometric sparrow search (GeoSSA) optimizers with
//! the classical benchmark suite, a UAV path-planning objective, four
//! constrained engineering designs and a statistics harness.

pub mod engineering;
pub mod error;
pub mod problem;
pub mod rng;
pub mod stats;
pub mod benchmarks;
pub mod ssa;
pub mod uav;

pub use error::{Error, Result};
pub use problem::{clamp_to_bounds, Objective, SearchSpace};
pub use rng::{RandomSource, RngStream};
