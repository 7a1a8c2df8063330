//! Fixture graphs shared by the benchmarks.

use primlocal::generators::{gen_grid, gen_random_regular, Boundary};
use primlocal::WeightedGraph;

pub fn grid(side: usize) -> WeightedGraph {
    gen_grid(side, Boundary::Torus, 0xB3).expect("valid grid")
}

pub fn cubic(n: usize) -> WeightedGraph {
    gen_random_regular(n, 3, 0xB3).expect("valid cubic graph")
}
