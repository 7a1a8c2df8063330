//! Prim's algorithm with a full trace, a Kruskal oracle, and finite
//! analogues of the invasion cluster and its expansion.

mod heap;
mod ipc;
mod kruskal;
mod prim;

pub use heap::IndexedMinHeap;
pub use ipc::{expanded_ipc, expanded_ipc_with, matching_prefix_steps, reach_step, ExpandedIpc, Reach};
pub use kruskal::{kruskal_mst, mst_component};
pub use prim::{ipc_approx, prim_prefix, prim_trace, sublinear_steps, PrimTrace, Step, NEVER};
