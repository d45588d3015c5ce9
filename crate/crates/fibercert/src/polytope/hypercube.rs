//! Hypercube 1-skeletons.

use crate::graph::Graph;

/// The 1-skeleton of the `d`-cube: vertices are bit vectors of length `d`,
/// edges join vertices at Hamming distance 1.
pub fn build_hypercube(d: usize) -> Graph {
    assert!((1..=7).contains(&d), "hypercube dimension must be 1..=7");
    let n = 1usize << d;
    let mut edges = Vec::with_capacity(d * n / 2);
    for u in 0..n {
        for bit in 0..d {
            let v = u ^ (1 << bit);
            if v > u {
                edges.push((u, v));
            }
        }
    }
    Graph::build(n, &edges).expect("hypercube edges are in range and loop-free")
}
