//! Simple undirected graphs, orientations and the two graph surgeries the
//! self-reduction needs (contracting an independent set, taking an induced
//! subgraph).
//!
//! Vertices are `0..n` internally. DIMACS and orientation files are
//! 1-indexed on disk.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Simple undirected graph with a deduplicated, sorted edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list. Reversed and repeated pairs collapse
    /// into one edge; self-loops and out-of-range endpoints are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: set.into_iter().collect(),
            adj,
        })
    }

    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Returns the first adjacent pair inside `set`, if any.
    pub fn find_adjacent_pair(&self, set: &[usize]) -> Option<(usize, usize)> {
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                if self.has_edge(u, v) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        self.find_adjacent_pair(set).is_none()
    }
}

/// Maximum degree Δ.
pub fn max_degree(g: &Graph) -> usize {
    g.max_degree()
}

/// Reads a DIMACS `.col` graph.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tok = raw.split_whitespace();
        let Some(head) = tok.next() else { continue };
        match head {
            "c" => {}
            "p" => {
                if n.is_some() {
                    return Err(Error::DuplicateHeader { line });
                }
                let rest: Vec<&str> = tok.collect();
                if rest.len() < 2 {
                    return Err(parse_err(line, "expected `p edge <n> <m>`"));
                }
                n = Some(parse_num(rest[1], line)?);
            }
            "e" => {
                let Some(n) = n else {
                    return Err(Error::MissingHeader);
                };
                let (u, v) = parse_pair(&mut tok, line, n)?;
                if u == v {
                    return Err(Error::SelfLoop(u));
                }
                edges.push((u, v));
            }
            other => {
                return Err(parse_err(line, &format!("unknown line type `{other}`")));
            }
        }
    }
    let n = n.ok_or(Error::MissingHeader)?;
    Graph::new(n, edges)
}

/// Writes a DIMACS `.col` graph.
pub fn render_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

fn parse_err(line: usize, msg: &str) -> Error {
    Error::Parse {
        line,
        msg: msg.to_string(),
    }
}

fn parse_num(s: &str, line: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| parse_err(line, &format!("not a number: `{s}`")))
}

/// Parses two 1-indexed vertex ids and converts them to 0-indexed.
fn parse_pair<'a>(
    tok: &mut impl Iterator<Item = &'a str>,
    line: usize,
    n: usize,
) -> Result<(usize, usize)> {
    let mut one = || -> Result<usize> {
        let s = tok
            .next()
            .ok_or_else(|| parse_err(line, "expected two vertex ids"))?;
        let x = parse_num(s, line)?;
        if x == 0 || x > n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
        Ok(x - 1)
    };
    let u = one()?;
    let v = one()?;
    Ok((u, v))
}

/// A directed edge `tail -> head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
}

impl Arc {
    pub fn new(tail: usize, head: usize) -> Self {
        Arc { tail, head }
    }

    pub fn reversed(self) -> Self {
        Arc {
            tail: self.head,
            head: self.tail,
        }
    }

    fn edge(self) -> (usize, usize) {
        (self.tail.min(self.head), self.tail.max(self.head))
    }
}

/// One direction for every edge of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    n: usize,
    arcs: Vec<Arc>,
}

impl Orientation {
    /// Orients every edge from the lower id to the higher id.
    pub fn lexicographic(g: &Graph) -> Self {
        Orientation {
            n: g.n(),
            arcs: g.edges().iter().map(|&(u, v)| Arc::new(u, v)).collect(),
        }
    }

    /// Validates that `arcs` covers every edge of `g` exactly once.
    pub fn from_arcs(g: &Graph, arcs: Vec<Arc>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for a in &arcs {
            if a.tail == a.head {
                return Err(Error::SelfLoop(a.tail));
            }
            if !g.has_edge(a.tail, a.head) {
                return Err(Error::InvalidOrientation(format!(
                    "({}, {}) is not an edge",
                    a.tail, a.head
                )));
            }
            if !seen.insert(a.edge()) {
                return Err(Error::InvalidOrientation(format!(
                    "edge {{{}, {}}} covered twice",
                    a.tail, a.head
                )));
            }
        }
        if let Some(&(u, v)) = g.edges().iter().find(|e| !seen.contains(*e)) {
            return Err(Error::InvalidOrientation(format!(
                "edge {{{u}, {v}}} not covered"
            )));
        }
        Ok(Orientation { n: g.n(), arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// The reversal Ā.
    pub fn reverse(&self) -> Self {
        Orientation {
            n: self.n,
            arcs: self.arcs.iter().map(|a| a.reversed()).collect(),
        }
    }

    /// The doubled arc multiset A ∪ Ā. Only the oracles accept this.
    pub fn doubled(&self) -> Vec<Arc> {
        self.arcs
            .iter()
            .copied()
            .chain(self.arcs.iter().map(|a| a.reversed()))
            .collect()
    }

    /// True if this orients exactly the edges of `g`.
    pub fn matches(&self, g: &Graph) -> bool {
        if self.n != g.n() || self.arcs.len() != g.m() {
            return false;
        }
        let mut edges: Vec<_> = self.arcs.iter().map(|a| a.edge()).collect();
        edges.sort_unstable();
        edges == g.edges()
    }
}

/// Picks the default orientation or validates an explicit one.
pub fn orient(g: &Graph, explicit: Option<Vec<Arc>>) -> Result<Orientation> {
    match explicit {
        None => Ok(Orientation::lexicographic(g)),
        Some(arcs) => Orientation::from_arcs(g, arcs),
    }
}

/// Reads an orientation file: one `a u v` line per arc, 1-indexed.
pub fn parse_orientation(text: &str, n: usize) -> Result<Vec<Arc>> {
    let mut arcs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tok = raw.split_whitespace();
        match tok.next() {
            None | Some("c") => {}
            Some("a") => {
                let (u, v) = parse_pair(&mut tok, line, n)?;
                arcs.push(Arc::new(u, v));
            }
            Some(other) => {
                return Err(parse_err(line, &format!("unknown line type `{other}`")));
            }
        }
    }
    Ok(arcs)
}

pub fn render_orientation(o: &Orientation) -> String {
    let mut out = String::new();
    for a in o.arcs() {
        writeln!(out, "a {} {}", a.tail + 1, a.head + 1).unwrap();
    }
    out
}

/// Result of collapsing an independent set `S` into one supervertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionResult {
    pub graph: Graph,
    /// Id of v_S in `graph`. It is always the last vertex.
    pub supervertex: usize,
    /// Original vertex id -> id in `graph`; members of `S` map to `supervertex`.
    pub vertex_map: Vec<usize>,
}

/// Collapses the independent set `s` into a single vertex. Parallel edges
/// that arise when two members share a neighbor are merged.
pub fn contract_independent_set(g: &Graph, s: &[usize]) -> Result<ContractionResult> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut in_s = vec![false; g.n()];
    for &v in s {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        in_s[v] = true;
    }
    let members: Vec<usize> = (0..g.n()).filter(|&v| in_s[v]).collect();
    if let Some((u, v)) = g.find_adjacent_pair(&members) {
        return Err(Error::NotIndependent(u, v));
    }
    let supervertex = g.n() - members.len();
    let mut next = 0;
    let vertex_map: Vec<usize> = (0..g.n())
        .map(|v| {
            if in_s[v] {
                supervertex
            } else {
                next += 1;
                next - 1
            }
        })
        .collect();
    let graph = Graph::new(
        supervertex + 1,
        g.edges()
            .iter()
            .map(|&(u, v)| (vertex_map[u], vertex_map[v])),
    )?;
    Ok(ContractionResult {
        graph,
        supervertex,
        vertex_map,
    })
}

/// Induced subgraph on `keep`, re-indexed in ascending original order.
/// Returns the graph and the new -> original id map.
pub fn induced_subgraph(g: &Graph, keep: &[usize]) -> Result<(Graph, Vec<usize>)> {
    let mut index = vec![usize::MAX; g.n()];
    let mut original: Vec<usize> = keep.to_vec();
    original.sort_unstable();
    original.dedup();
    for (new, &old) in original.iter().enumerate() {
        if old >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: old, n: g.n() });
        }
        index[old] = new;
    }
    let edges = g
        .edges()
        .iter()
        .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
        .map(|&(u, v)| (index[u], index[v]));
    Ok((Graph::new(original.len(), edges)?, original))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn parses_triangle() {
        let g = parse_dimacs("c tri\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
        assert_eq!(g, k3());
    }

    #[test]
    fn parse_merges_reversed_duplicates() {
        let g = parse_dimacs("p edge 2 2\ne 1 2\ne 2 1\n").unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_dimacs("p edge 2 1\ne 1 1\n"), Err(Error::SelfLoop(0)));
        assert_eq!(parse_dimacs("e 1 2\n"), Err(Error::MissingHeader));
        assert_eq!(parse_dimacs("c nothing\n"), Err(Error::MissingHeader));
        assert_eq!(
            parse_dimacs("p edge 2 1\np edge 2 1\n"),
            Err(Error::DuplicateHeader { line: 2 })
        );
        assert!(matches!(
            parse_dimacs("p edge 2 1\ne 1 3\n"),
            Err(Error::VertexOutOfRange { vertex: 3, n: 2 })
        ));
        assert!(matches!(
            parse_dimacs("p edge 2 1\ne 0 1\n"),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn default_orientation_is_low_to_high() {
        let o = orient(&k3(), None).unwrap();
        assert_eq!(o.arcs(), &[Arc::new(0, 1), Arc::new(0, 2), Arc::new(1, 2)]);
    }

    #[test]
    fn explicit_orientation_checks() {
        let g = k3();
        let cyc = vec![Arc::new(0, 1), Arc::new(1, 2), Arc::new(2, 0)];
        assert_eq!(orient(&g, Some(cyc.clone())).unwrap().arcs(), &cyc[..]);
        let double = vec![Arc::new(0, 1), Arc::new(1, 0), Arc::new(1, 2)];
        assert!(matches!(
            orient(&g, Some(double)),
            Err(Error::InvalidOrientation(_))
        ));
        let missing = vec![Arc::new(0, 1), Arc::new(1, 2)];
        assert!(orient(&g, Some(missing)).is_err());
        let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let non_edge = vec![Arc::new(0, 1), Arc::new(1, 2), Arc::new(0, 2)];
        assert!(orient(&path, Some(non_edge)).is_err());
    }

    #[test]
    fn reverse_cyclic() {
        let g = k3();
        let o = orient(&g, Some(vec![Arc::new(0, 1), Arc::new(1, 2), Arc::new(2, 0)])).unwrap();
        assert_eq!(
            o.reverse().arcs(),
            &[Arc::new(1, 0), Arc::new(2, 1), Arc::new(0, 2)]
        );
        let single = Orientation::lexicographic(&Graph::new(2, [(0, 1)]).unwrap());
        assert_eq!(single.reverse().arcs(), &[Arc::new(1, 0)]);
        assert_eq!(o.doubled().len(), 6);
    }

    #[test]
    fn orientation_file_round_trip() {
        let g = k3();
        let o = orient(&g, Some(vec![Arc::new(0, 1), Arc::new(1, 2), Arc::new(2, 0)])).unwrap();
        let text = render_orientation(&o);
        assert_eq!(text, "a 1 2\na 2 3\na 3 1\n");
        assert_eq!(parse_orientation(&text, 3).unwrap(), o.arcs());
    }

    #[test]
    fn contract_path_ends() {
        let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let cr = contract_independent_set(&path, &[0, 2]).unwrap();
        assert_eq!(cr.graph.n(), 2);
        assert_eq!(cr.graph.m(), 1);
        assert_eq!(cr.supervertex, 1);
        assert_eq!(cr.vertex_map, vec![1, 0, 1]);
    }

    #[test]
    fn contract_singleton_relabels() {
        let cr = contract_independent_set(&k3(), &[0]).unwrap();
        assert_eq!(cr.graph.n(), 3);
        assert_eq!(cr.graph.m(), 3);
    }

    #[test]
    fn contract_errors() {
        assert_eq!(
            contract_independent_set(&k3(), &[0, 1]),
            Err(Error::NotIndependent(0, 1))
        );
        assert_eq!(contract_independent_set(&k3(), &[]), Err(Error::EmptySet));
    }

    #[test]
    fn induced_cases() {
        let g = k3();
        let (h, map) = induced_subgraph(&g, &[0, 1]).unwrap();
        assert_eq!((h.n(), h.m()), (2, 1));
        assert_eq!(map, vec![0, 1]);
        let (h, map) = induced_subgraph(&g, &[0, 1, 2]).unwrap();
        assert_eq!(h, g);
        assert_eq!(map, vec![0, 1, 2]);
        let (h, _) = induced_subgraph(&g, &[]).unwrap();
        assert_eq!(h.n(), 0);
    }

    #[test]
    fn degrees() {
        assert_eq!(max_degree(&k3()), 2);
        assert_eq!(max_degree(&Graph::empty(4)), 0);
        assert_eq!(max_degree(&Graph::empty(0)), 0);
        let star = Graph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(max_degree(&star), 4);
    }
}
