//! Lights Out style games on graphs with labels in `Z_m`.
//!
//! Two games are modelled. In the neighborhood game toggling `v` adds one to
//! every label in the closed neighborhood of `v`; winnability is a linear
//! system over `Z_m`. In the group game toggling `v` adds the current label
//! of `v` to its closed neighborhood, which is non-linear and is decided by
//! searching the finite state space.

pub mod enumerate;
pub mod error;
pub mod exec;
pub mod graph;
pub mod group;
pub mod harness;
pub mod labeling;
pub mod nbd;
pub mod strategies;
pub mod zmod;

pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::{Family, Graph, GraphSpec, VertexSet};
pub use group::{StateCap, WinnableSet};
pub use labeling::{Labeling, ToggleCounts, ToggleSequence};
pub use strategies::{Game, StrategyResult};
