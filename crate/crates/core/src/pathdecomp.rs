//! Path decompositions: validation, the nice event stream, a heuristic
//! construction, the arc schedule, and the decompositions derived for
//! contracted and induced graphs.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Arc, ContractionResult, Graph, Orientation};

/// Ordered bag sequence. Bags are kept sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathDecomposition {
    n: usize,
    bags: Vec<Vec<usize>>,
}

impl PathDecomposition {
    pub fn new(n: usize, bags: Vec<Vec<usize>>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        PathDecomposition { n, bags }
    }

    /// Vertex count of the graph this decomposes.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    /// Largest bag size minus one; zero for an empty decomposition.
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(1)
            .saturating_sub(1)
    }

    /// First and last bag index of every vertex, `None` for vertices in no bag.
    fn intervals(&self) -> Vec<Option<(usize, usize)>> {
        let mut iv: Vec<Option<(usize, usize)>> = vec![None; self.n];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v < self.n {
                    iv[v] = Some(match iv[v] {
                        None => (i, i),
                        Some((a, _)) => (a, i),
                    });
                }
            }
        }
        iv
    }
}

/// Checks every decomposition invariant against `g` and returns the width.
pub fn validate(g: &Graph, pd: &PathDecomposition) -> Result<usize> {
    let bad = |msg: String| Err(Error::InvalidDecomposition(msg));
    if pd.n != g.n() {
        return bad(format!("decomposition is for n = {}, graph has n = {}", pd.n, g.n()));
    }
    for bag in &pd.bags {
        if let Some(&v) = bag.iter().find(|&&v| v >= g.n()) {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
    }
    let iv = pd.intervals();
    for (v, span) in iv.iter().enumerate() {
        let Some((first, last)) = *span else {
            return bad(format!("vertex {v} is in no bag"));
        };
        if pd.bags[first..=last]
            .iter()
            .any(|b| b.binary_search(&v).is_err())
        {
            return bad(format!("vertex {v} occurs in a non-contiguous set of bags"));
        }
    }
    for &(u, v) in g.edges() {
        let (a, b) = (iv[u].unwrap(), iv[v].unwrap());
        if a.0.max(b.0) > a.1.min(b.1) {
            return bad(format!("edge {{{u}, {v}}} is in no bag"));
        }
    }
    Ok(pd.width())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    Introduce,
    Forget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NiceEvent {
    pub kind: EventKind,
    pub vertex: usize,
    /// Originating bag: the first bag holding the vertex for an introduce,
    /// the last one for a forget.
    pub bag: usize,
}

/// Single-vertex introduce/forget refinement of a decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceEventSequence {
    pub events: Vec<NiceEvent>,
}

impl NiceEventSequence {
    /// The bag after each event, in order.
    pub fn replay(&self) -> Vec<Vec<usize>> {
        let mut live: Vec<usize> = Vec::new();
        let mut out = Vec::with_capacity(self.events.len());
        for e in &self.events {
            match e.kind {
                EventKind::Introduce => {
                    let pos = live.binary_search(&e.vertex).unwrap_or_else(|p| p);
                    live.insert(pos, e.vertex);
                }
                EventKind::Forget => live.retain(|&x| x != e.vertex),
            }
            out.push(live.clone());
        }
        out
    }
}

/// Expands a valid decomposition into introduce/forget events. Between two
/// bags all forgets come first, then introduces; ties go by vertex id.
pub fn make_nice(pd: &PathDecomposition) -> NiceEventSequence {
    let iv = pd.intervals();
    let mut events = Vec::new();
    let empty = Vec::new();
    let mut prev: &Vec<usize> = &empty;
    for (i, bag) in pd.bags.iter().enumerate() {
        for &v in prev.iter().filter(|v| bag.binary_search(v).is_err()) {
            events.push(NiceEvent {
                kind: EventKind::Forget,
                vertex: v,
                bag: i - 1,
            });
        }
        for &v in bag.iter().filter(|v| prev.binary_search(v).is_err()) {
            events.push(NiceEvent {
                kind: EventKind::Introduce,
                vertex: v,
                bag: i,
            });
        }
        prev = bag;
    }
    for &v in prev {
        events.push(NiceEvent {
            kind: EventKind::Forget,
            vertex: v,
            bag: iv[v].map_or(0, |(_, last)| last),
        });
    }
    NiceEventSequence { events }
}

/// Vertex-separation decomposition for a vertex order: bag `i` holds
/// `order[i]` plus every earlier vertex that still has a neighbor at
/// position `i` or later.
pub fn boundary_decomposition(g: &Graph, order: &[usize]) -> Result<PathDecomposition> {
    let n = g.n();
    let mut pos = vec![usize::MAX; n];
    if order.len() != n {
        return Err(Error::Config(format!(
            "order has {} entries, graph has {n} vertices",
            order.len()
        )));
    }
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(Error::Config("order is not a permutation".into()));
        }
        pos[v] = i;
    }
    let reach: Vec<usize> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .map(|&u| pos[u])
                .fold(pos[v], usize::max)
        })
        .collect();
    let bags = (0..n)
        .map(|i| {
            let mut bag: Vec<usize> = order[..i]
                .iter()
                .copied()
                .filter(|&u| reach[u] >= i)
                .collect();
            bag.push(order[i]);
            bag
        })
        .collect();
    Ok(PathDecomposition::new(n, bags))
}

/// Breadth-first vertex order, restarting from the lowest unvisited id.
pub fn bfs_order(g: &Graph) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    let mut order = Vec::with_capacity(g.n());
    for root in 0..g.n() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    order
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScheduledArc {
    pub arc: Arc,
    /// First bag (0-indexed) containing both endpoints.
    pub bag: usize,
}

/// Processing order of the arcs: by first covering bag, ties by `(tail, head)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcSchedule {
    entries: Vec<ScheduledArc>,
}

impl ArcSchedule {
    /// Wraps an arbitrary arc order. The caller must keep `bag` values equal
    /// to the first covering bag and non-decreasing; ties may be in any order.
    pub fn from_entries(pd: &PathDecomposition, entries: Vec<ScheduledArc>) -> Result<Self> {
        for (i, e) in entries.iter().enumerate() {
            if first_cover(pd, e.arc) != Some(e.bag) {
                return Err(Error::InvalidDecomposition(format!(
                    "arc ({}, {}) is not first covered by bag {}",
                    e.arc.tail, e.arc.head, e.bag
                )));
            }
            if i > 0 && entries[i - 1].bag > e.bag {
                return Err(Error::InvalidDecomposition(
                    "schedule bag indices decrease".into(),
                ));
            }
        }
        Ok(ArcSchedule { entries })
    }

    pub fn entries(&self) -> &[ScheduledArc] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn first_cover(pd: &PathDecomposition, a: Arc) -> Option<usize> {
    pd.bags.iter().position(|b| {
        b.binary_search(&a.tail).is_ok() && b.binary_search(&a.head).is_ok()
    })
}

/// Schedules the arcs of `o` over `pd`.
pub fn arc_schedule(o: &Orientation, pd: &PathDecomposition) -> Result<ArcSchedule> {
    let iv = pd.intervals();
    let mut entries = Vec::with_capacity(o.len());
    for &arc in o.arcs() {
        let span = |v: usize| iv.get(v).copied().flatten();
        let (Some(a), Some(b)) = (span(arc.tail), span(arc.head)) else {
            return Err(Error::InvalidDecomposition(format!(
                "arc ({}, {}) has an endpoint in no bag",
                arc.tail, arc.head
            )));
        };
        let bag = a.0.max(b.0);
        if bag > a.1.min(b.1) {
            return Err(Error::InvalidDecomposition(format!(
                "arc ({}, {}) is in no bag",
                arc.tail, arc.head
            )));
        }
        entries.push(ScheduledArc { arc, bag });
    }
    entries.sort_by_key(|e| (e.bag, e.arc.tail, e.arc.head));
    Ok(ArcSchedule { entries })
}

/// Drops empty bags, and bags that lost vertices and are now contained in an
/// adjacent bag. Both removals keep the decomposition valid.
fn compact(n: usize, bags: Vec<(Vec<usize>, bool)>) -> PathDecomposition {
    let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
    let mut kept: Vec<Vec<usize>> = Vec::with_capacity(bags.len());
    let bags: Vec<_> = bags.into_iter().filter(|(b, _)| !b.is_empty()).collect();
    for i in 0..bags.len() {
        let (bag, changed) = &bags[i];
        if *changed {
            let in_prev = kept.last().is_some_and(|p| subset(bag, p));
            let in_next = bags.get(i + 1).is_some_and(|(nb, _)| subset(bag, nb));
            if in_prev || in_next {
                continue;
            }
        }
        kept.push(bag.clone());
    }
    PathDecomposition { n, bags: kept }
}

/// Decomposition of the contracted graph: members of `S` leave every bag
/// and the supervertex joins every bag.
pub fn derive_contracted_pd(pd: &PathDecomposition, cr: &ContractionResult) -> PathDecomposition {
    let bags = pd
        .bags
        .iter()
        .map(|bag| {
            let mut nb: Vec<usize> = bag.iter().map(|&v| cr.vertex_map[v]).collect();
            let changed = nb.contains(&cr.supervertex);
            nb.push(cr.supervertex);
            nb.sort_unstable();
            nb.dedup();
            (nb, changed)
        })
        .collect();
    compact(cr.graph.n(), bags)
}

/// Decomposition of the subgraph induced by `keep`, re-indexed like
/// [`crate::graph::induced_subgraph`].
pub fn derive_induced_pd(pd: &PathDecomposition, keep: &[usize]) -> PathDecomposition {
    let mut index = vec![usize::MAX; pd.n];
    let mut sorted = keep.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for (new, &old) in sorted.iter().enumerate() {
        if old < pd.n {
            index[old] = new;
        }
    }
    let bags = pd
        .bags
        .iter()
        .map(|bag| {
            let nb: Vec<usize> = bag
                .iter()
                .filter(|&&v| index[v] != usize::MAX)
                .map(|&v| index[v])
                .collect();
            let changed = nb.len() != bag.len();
            (nb, changed)
        })
        .collect();
    compact(sorted.len(), bags)
}

/// Reads the decomposition format: `pd <p> <n>` then `b <index> v...` lines,
/// 1-indexed, bags in path order.
pub fn parse_pd(text: &str) -> Result<PathDecomposition> {
    let err = |line: usize, msg: String| Error::Parse { line, msg };
    let mut header: Option<(usize, usize)> = None;
    let mut bags = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let tok: Vec<&str> = raw.split_whitespace().collect();
        let num = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| err(line, format!("not a number: `{s}`")))
        };
        match tok.first().copied() {
            None | Some("c") => {}
            Some("pd") => {
                if header.is_some() {
                    return Err(Error::DuplicateHeader { line });
                }
                if tok.len() != 3 {
                    return Err(err(line, "expected `pd <p> <n>`".into()));
                }
                header = Some((num(tok[1])?, num(tok[2])?));
            }
            Some("b") => {
                let (_, n) = header.ok_or(Error::MissingHeader)?;
                if tok.len() < 2 {
                    return Err(err(line, "expected `b <index> v...`".into()));
                }
                let index = num(tok[1])?;
                if index != bags.len() + 1 {
                    return Err(err(
                        line,
                        format!("bag index {index}, expected {}", bags.len() + 1),
                    ));
                }
                let mut bag = Vec::with_capacity(tok.len() - 2);
                for s in &tok[2..] {
                    let v = num(s)?;
                    if v == 0 || v > n {
                        return Err(Error::VertexOutOfRange { vertex: v, n });
                    }
                    bag.push(v - 1);
                }
                bags.push(bag);
            }
            Some(other) => return Err(err(line, format!("unknown line type `{other}`"))),
        }
    }
    let (p, n) = header.ok_or(Error::MissingHeader)?;
    if p != bags.len() {
        return Err(Error::InvalidDecomposition(format!(
            "header announces {p} bags, found {}",
            bags.len()
        )));
    }
    Ok(PathDecomposition::new(n, bags))
}

pub fn render_pd(pd: &PathDecomposition) -> String {
    let mut out = format!("pd {} {}\n", pd.len(), pd.n());
    for (i, bag) in pd.bags().iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in bag {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    out
}
