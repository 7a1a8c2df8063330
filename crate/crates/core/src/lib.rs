//! Step-by-step Prim simulation on random weighted graphs, percolation
//! profiles, and finite checks of local convergence of Prim prefixes to
//! expanded invasion percolation clusters.

pub mod dynamics;
pub mod error;
pub mod generators;
pub mod graph;
pub mod percolation;
pub mod rng;
pub mod spanning;
pub mod trials;

pub use error::{Error, Result};
pub use generators::{Boundary, Family, GenSpec};
pub use graph::{ComponentDecomposition, Edge, RootedBall, WeightedGraph};
pub use percolation::ThetaProfile;
pub use spanning::{ExpandedIpc, PrimTrace};
