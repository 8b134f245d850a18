//! Fixtures shared by the state-table benchmarks.

use modk_core::{boundary_decomposition, families, subset_signature, Graph, Orientation, PathDecomposition, WVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct Fixture {
    pub name: String,
    pub graph: Graph,
    pub orientation: Orientation,
    pub pd: PathDecomposition,
    pub k: u32,
    /// Attainable residue vectors, so κ tables stay populated.
    pub ws: Vec<WVector>,
}

fn fixture(name: String, graph: Graph, orientation: Orientation, order: &[usize], k: u32) -> Fixture {
    let pd = boundary_decomposition(&graph, order).expect("order covers every vertex");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let ws = (0..8).map(|_| subset_signature(&orientation, k, &mut rng)).collect();
    Fixture {
        name,
        graph,
        orientation,
        pd,
        k,
        ws,
    }
}

/// `rows x cols` grid swept column by column, width `rows`.
pub fn grid(rows: usize, cols: usize, k: u32) -> Fixture {
    let g = families::grid(rows, cols);
    let order: Vec<usize> = (0..cols).flat_map(|c| (0..rows).map(move |r| r * cols + c)).collect();
    let o = Orientation::lexicographic(&g);
    fixture(format!("grid{rows}x{cols}"), g, o, &order, k)
}

/// `t` disjoint cyclic triangles, width 2.
pub fn triangles(t: usize, k: u32) -> Fixture {
    let (g, o) = families::disjoint_triangles(t);
    let order: Vec<usize> = (0..g.n()).collect();
    fixture(format!("triangles{t}"), g, o, &order, k)
}
