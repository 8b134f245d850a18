//! Built-in graph families used by the check and bench commands.

use rand::seq::index::sample;
use rand::Rng;

use crate::graph::{Arc, Graph, Orientation};

pub fn empty(n: usize) -> Graph {
    Graph::empty(n)
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a simple cycle needs at least 3 vertices");
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("clique edges are valid")
}

/// `t` vertex-disjoint triangles on `3t` vertices, each oriented as a
/// directed 3-cycle so every vertex has one incoming and one outgoing arc.
pub fn disjoint_triangles(t: usize) -> (Graph, Orientation) {
    let arcs: Vec<Arc> = (0..t)
        .flat_map(|i| {
            let b = 3 * i;
            [Arc::new(b, b + 1), Arc::new(b + 1, b + 2), Arc::new(b + 2, b)]
        })
        .collect();
    let g = Graph::new(3 * t, arcs.iter().map(|a| (a.tail, a.head))).expect("triangle edges are valid");
    let o = Orientation::from_arcs(&g, arcs).expect("one arc per edge");
    (g, o)
}

/// `rows x cols` grid: maximum degree 4, pathwidth at most `min(rows, cols)`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::new(rows * cols, edges).expect("grid edges are valid")
}

/// A triangle plus a vertex joined to two of its corners. Its proper
/// 3-colorings are exactly the 6 color permutations of one partition.
pub fn unique_three_colorable() -> Graph {
    Graph::new(4, [(0, 1), (1, 2), (0, 2), (1, 3), (2, 3)]).expect("valid edges")
}

/// Uniform graph with `n` vertices and `m` distinct edges (capped at `n choose 2`).
pub fn random_graph<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let m = m.min(pairs.len());
    let picked = sample(rng, pairs.len(), m);
    Graph::new(n, picked.iter().map(|i| pairs[i])).expect("sampled edges are valid")
}

/// Orientation with each edge's direction drawn by a fair coin.
pub fn random_orientation<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Orientation {
    let arcs = g
        .edges()
        .iter()
        .map(|&(u, v)| if rng.gen_bool(0.5) { Arc::new(u, v) } else { Arc::new(v, u) })
        .collect();
    Orientation::from_arcs(g, arcs).expect("one arc per edge")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(path(5).m(), 4);
        assert_eq!(cycle(5).m(), 5);
        assert_eq!(complete(4).m(), 6);
        let (g, o) = disjoint_triangles(2);
        assert_eq!((g.n(), g.m(), o.len()), (6, 6, 6));
        let g = grid(3, 10);
        assert_eq!((g.n(), g.max_degree()), (30, 4));
    }

    #[test]
    fn random_graph_edge_count() {
        let mut rng = rand::thread_rng();
        assert_eq!(random_graph(6, 7, &mut rng).m(), 7);
        assert_eq!(random_graph(3, 10, &mut rng).m(), 3);
    }
}
