//! Exact computation of κ_{k,w}(A), the number of even minus the number of
//! odd arc subsets `A' ⊆ A` whose outdegree-minus-indegree matches `w(v)`
//! modulo `k` at every vertex.
//!
//! The dynamic program walks the nice event stream of a path decomposition
//! and processes each arc once its first covering bag is reached. A state
//! assigns a residue to every live vertex; states whose residue can no
//! longer be completed to `w(v)` by the remaining incident arcs are pruned
//! (the residue windows). Each window has at most `⌊Δ/2⌋ + 1` residues, so
//! a table never exceeds `(⌊Δ/2⌋ + 1)^(width + 1)` entries.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Graph, Orientation};
use crate::pathdecomp::{arc_schedule, make_nice, validate, ArcSchedule, EventKind, PathDecomposition};

/// κ values are exact signed integers; |κ| can reach 2^m.
pub type KappaValue = BigInt;

/// Residue target `w ∈ [k]^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WVector {
    k: u32,
    w: Vec<u32>,
}

impl WVector {
    pub fn new(k: u32, w: Vec<u32>) -> Result<Self> {
        if k == 0 {
            return Err(Error::WVector("modulus k must be at least 1".into()));
        }
        if let Some(&r) = w.iter().find(|&&r| r >= k) {
            return Err(Error::WVector(format!("residue {r} not in [0, {k})")));
        }
        Ok(WVector { k, w })
    }

    pub fn zeros(k: u32, n: usize) -> Self {
        WVector { k, w: vec![0; n] }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn residues(&self) -> &[u32] {
        &self.w
    }

    pub fn get(&self, v: usize) -> u32 {
        self.w[v]
    }

    pub fn is_zero(&self) -> bool {
        self.w.iter().all(|&r| r == 0)
    }

    /// `-w mod k`.
    pub fn negated(&self) -> Self {
        WVector {
            k: self.k,
            w: self.w.iter().map(|&r| (self.k - r) % self.k).collect(),
        }
    }

    /// All `k^n` vectors in lexicographic order.
    pub fn all(k: u32, n: usize) -> impl Iterator<Item = WVector> {
        let total = (k as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        (0..total).map(move |mut idx| {
            let mut w = vec![0u32; n];
            for r in w.iter_mut().rev() {
                *r = (idx % k as u64) as u32;
                idx /= k as u64;
            }
            WVector { k, w }
        })
    }
}

/// Sorted set of residues in `[k]`.
pub type Window = Vec<u32>;

/// Residue windows for every vertex, indexed by how many of the vertex's
/// incident arcs the schedule has processed so far (`0..=deg`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueWindows {
    k: u32,
    per_vertex: Vec<Vec<Window>>,
}

impl ResidueWindows {
    /// Window of `v` after `processed` of its incident arcs.
    pub fn window(&self, v: usize, processed: usize) -> &Window {
        &self.per_vertex[v][processed]
    }

    pub fn for_vertex(&self, v: usize) -> &[Window] {
        &self.per_vertex[v]
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn max_window(&self) -> usize {
        self.per_vertex
            .iter()
            .flatten()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
    }

    fn contains(&self, v: usize, processed: usize, r: u32) -> bool {
        self.per_vertex[v][processed].binary_search(&r).is_ok()
    }
}

/// Residues of the integers `lo..=hi` modulo `k`, as a membership test.
fn cyclic_contains(lo: i64, hi: i64, k: u32, x: u32) -> bool {
    let len = hi - lo + 1;
    len >= k as i64 || (x as i64 - lo).rem_euclid(k as i64) < len
}

fn interval_window(before: (i64, i64), after: (i64, i64), k: u32) -> Window {
    let len = |(lo, hi): (i64, i64)| hi - lo + 1;
    let (enum_iv, test_iv) = if len(before) <= len(after) {
        (before, after)
    } else {
        (after, before)
    };
    let mut out: Window = if len(enum_iv) >= k as i64 {
        (0..k).filter(|&x| cyclic_contains(test_iv.0, test_iv.1, k, x)).collect()
    } else {
        (enum_iv.0..=enum_iv.1)
            .map(|d| d.rem_euclid(k as i64) as u32)
            .filter(|&x| cyclic_contains(test_iv.0, test_iv.1, k, x))
            .collect()
    };
    out.sort_unstable();
    out.dedup();
    out
}

/// Computes, for each vertex and each prefix of its scheduled incident arcs,
/// the residues reachable by the prefix that the remaining arcs can still
/// complete to `w(v)`.
pub fn residue_windows(schedule: &ArcSchedule, w: &WVector, n: usize) -> ResidueWindows {
    // +1 when v is the tail, -1 when v is the head, in schedule order.
    let mut signs: Vec<Vec<i8>> = vec![Vec::new(); n];
    for e in schedule.entries() {
        signs[e.arc.tail].push(1);
        signs[e.arc.head].push(-1);
    }
    let k = w.k();
    let per_vertex = signs
        .iter()
        .enumerate()
        .map(|(v, seq)| {
            let total_out = seq.iter().filter(|&&s| s > 0).count() as i64;
            let total_in = seq.len() as i64 - total_out;
            let target = w.get(v) as i64;
            let (mut out, mut inc) = (0i64, 0i64);
            let mut windows = Vec::with_capacity(seq.len() + 1);
            for j in 0..=seq.len() {
                if j > 0 {
                    if seq[j - 1] > 0 {
                        out += 1;
                    } else {
                        inc += 1;
                    }
                }
                let (rest_out, rest_in) = (total_out - out, total_in - inc);
                windows.push(interval_window(
                    (-inc, out),
                    (target - rest_out, target + rest_in),
                    k,
                ));
            }
            windows
        })
        .collect();
    ResidueWindows { k, per_vertex }
}

/// Sorted table from residue keys (one coordinate per live vertex, live
/// vertices ascending) to signed counts. Zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateTable {
    live: Vec<usize>,
    entries: Vec<(Vec<u32>, BigInt)>,
}

impl StateTable {
    /// The table before any vertex is introduced: the empty subgraph, count 1.
    pub fn initial() -> Self {
        StateTable {
            live: Vec::new(),
            entries: vec![(Vec::new(), BigInt::one())],
        }
    }

    pub fn live(&self) -> &[usize] {
        &self.live
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &[u32]) -> Option<&BigInt> {
        self.entries
            .binary_search_by(|(k, _)| k.as_slice().cmp(key))
            .ok()
            .map(|i| &self.entries[i].1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), v))
    }

    fn slot(&self, v: usize) -> usize {
        self.live
            .binary_search(&v)
            .expect("vertex is not live in the state table")
    }

    /// Adds coordinate `v` with residue 0. Inserting a constant coordinate
    /// keeps the keys sorted.
    fn introduce(&mut self, v: usize) {
        let pos = self.live.binary_search(&v).unwrap_or_else(|p| p);
        self.live.insert(pos, v);
        for (key, _) in &mut self.entries {
            key.insert(pos, 0);
        }
    }

    /// `s'(d) = s(d) - s(d ⊖ a)`: every state either skips the arc or takes
    /// it, moving the tail residue up and the head residue down by one.
    fn apply_arc(&mut self, tail: usize, head: usize, k: u32, keep: impl Fn(u32, u32) -> bool) {
        let (t, h) = (self.slot(tail), self.slot(head));
        let mut next: Vec<(Vec<u32>, BigInt)> = Vec::with_capacity(self.entries.len() * 2);
        for (key, value) in self.entries.drain(..) {
            let mut taken = key.clone();
            taken[t] = (taken[t] + 1) % k;
            taken[h] = (taken[h] + k - 1) % k;
            if keep(taken[t], taken[h]) {
                next.push((taken, -value.clone()));
            }
            if keep(key[t], key[h]) {
                next.push((key, value));
            }
        }
        next.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Vec<u32>, BigInt)> = Vec::with_capacity(next.len());
        for (key, value) in next {
            match merged.last_mut() {
                Some((last, acc)) if *last == key => *acc += value,
                _ => merged.push((key, value)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        self.entries = merged;
    }

    /// Keeps only states where `v` has residue `target`, then drops `v`.
    fn forget(&mut self, v: usize, target: u32) {
        let pos = self.slot(v);
        self.live.remove(pos);
        self.entries.retain(|(key, _)| key[pos] == target);
        for (key, _) in &mut self.entries {
            key.remove(pos);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pruning {
    /// Discard states outside the residue windows.
    Windows,
    /// Keep every state; only the forget-time residue check filters.
    Off,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DpStats {
    /// Largest number of stored states after any step.
    pub max_table: usize,
    /// Arcs processed before the run finished or was cut short.
    pub arcs_processed: usize,
    /// The run stopped early because no state survived.
    pub early_exit: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaRun {
    pub value: KappaValue,
    pub stats: DpStats,
}

/// κ_{k,w}(A) for the orientation `o` of `g`, over `pd`.
pub fn kappa_dp(g: &Graph, o: &Orientation, pd: &PathDecomposition, w: &WVector) -> Result<KappaRun> {
    validate(g, pd)?;
    if !o.matches(g) {
        return Err(Error::InvalidOrientation(
            "orientation does not match the graph".into(),
        ));
    }
    let schedule = arc_schedule(o, pd)?;
    kappa_dp_with(g, pd, &schedule, w, Pruning::Windows)
}

/// Runs the dynamic program over a caller-supplied schedule.
pub fn kappa_dp_with(
    g: &Graph,
    pd: &PathDecomposition,
    schedule: &ArcSchedule,
    w: &WVector,
    pruning: Pruning,
) -> Result<KappaRun> {
    if w.len() != g.n() {
        return Err(Error::WVector(format!(
            "w has {} entries, graph has {} vertices",
            w.len(),
            g.n()
        )));
    }
    if schedule.len() != g.m() {
        return Err(Error::InvalidOrientation(format!(
            "schedule has {} arcs, graph has {} edges",
            schedule.len(),
            g.m()
        )));
    }
    let k = w.k();
    let windows = residue_windows(schedule, w, g.n());
    let prune = pruning == Pruning::Windows;
    let mut processed = vec![0usize; g.n()];
    let mut table = StateTable::initial();
    let mut stats = DpStats {
        max_table: 1,
        ..DpStats::default()
    };
    let zero = |stats: DpStats| KappaRun {
        value: BigInt::zero(),
        stats: DpStats {
            early_exit: true,
            ..stats
        },
    };

    let arcs = schedule.entries();
    let mut next_arc = 0;
    for event in make_nice(pd).events {
        // Arcs of bag b run after bag b's introduces and before its forgets.
        let phase = match event.kind {
            EventKind::Introduce => (event.bag, 0),
            EventKind::Forget => (event.bag, 2),
        };
        while next_arc < arcs.len() && (arcs[next_arc].bag, 1) < phase {
            let a = arcs[next_arc].arc;
            let (t, h) = (a.tail, a.head);
            processed[t] += 1;
            processed[h] += 1;
            let (pt, ph) = (processed[t], processed[h]);
            if prune {
                table.apply_arc(t, h, k, |rt, rh| {
                    windows.contains(t, pt, rt) && windows.contains(h, ph, rh)
                });
            } else {
                table.apply_arc(t, h, k, |_, _| true);
            }
            next_arc += 1;
            stats.arcs_processed = next_arc;
            stats.max_table = stats.max_table.max(table.len());
            if table.is_empty() {
                return Ok(zero(stats));
            }
        }
        match event.kind {
            EventKind::Introduce => {
                let v = event.vertex;
                if prune && !windows.contains(v, 0, 0) {
                    return Ok(zero(stats));
                }
                table.introduce(v);
            }
            EventKind::Forget => {
                table.forget(event.vertex, w.get(event.vertex));
                if table.is_empty() {
                    return Ok(zero(stats));
                }
            }
        }
        stats.max_table = stats.max_table.max(table.len());
    }
    debug_assert_eq!(next_arc, arcs.len());
    debug_assert!(table.live().is_empty());
    let value = table.get(&[]).cloned().unwrap_or_default();
    Ok(KappaRun { value, stats })
}

/// Certified ceiling `(⌊Δ/2⌋ + 1)^(width + 1)` on the DP table size.
pub fn max_table_bound(g: &Graph, pd: &PathDecomposition) -> BigUint {
    let base = BigUint::from(g.max_degree() / 2 + 1);
    num_traits::pow(base, pd.width() + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{orient, Arc};

    fn single_bag(n: usize) -> PathDecomposition {
        PathDecomposition::new(n, vec![(0..n).collect()])
    }

    fn k3() -> Graph {
        Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn cyclic_k3() -> Orientation {
        orient(&k3(), Some(vec![Arc::new(0, 1), Arc::new(1, 2), Arc::new(2, 0)])).unwrap()
    }

    fn w(k: u32, r: &[u32]) -> WVector {
        WVector::new(k, r.to_vec()).unwrap()
    }

    #[test]
    fn wvector_validation() {
        assert!(WVector::new(0, vec![]).is_err());
        assert!(WVector::new(3, vec![0, 3]).is_err());
        assert_eq!(WVector::all(3, 2).count(), 9);
        assert_eq!(w(5, &[0, 1, 4]).negated().residues(), &[0, 4, 1]);
    }

    #[test]
    fn isolated_vertex_windows() {
        let g = Graph::empty(1);
        let s = arc_schedule(&Orientation::lexicographic(&g), &single_bag(1)).unwrap();
        assert_eq!(residue_windows(&s, &w(4, &[0]), 1).for_vertex(0), &[vec![0]]);
        assert_eq!(residue_windows(&s, &w(4, &[2]), 1).for_vertex(0), &[vec![]]);
    }

    #[test]
    fn worked_example_window() {
        // Star around 0; bag order forces the incident pattern + + - + - -.
        let g = Graph::new(7, (1..7).map(|x| (0, x))).unwrap();
        let arcs = vec![
            Arc::new(0, 1),
            Arc::new(0, 2),
            Arc::new(3, 0),
            Arc::new(0, 4),
            Arc::new(5, 0),
            Arc::new(6, 0),
        ];
        let o = orient(&g, Some(arcs)).unwrap();
        let pd = PathDecomposition::new(7, (1..7).map(|x| vec![0, x]).collect());
        let s = arc_schedule(&o, &pd).unwrap();
        let mut target = vec![0; 7];
        target[0] = 1;
        for (x, r) in [(1, 4), (2, 4), (3, 1), (4, 4), (5, 1), (6, 1)] {
            target[x] = r;
        }
        let win = residue_windows(&s, &w(5, &target), 7);
        assert_eq!(win.window(0, 4), &vec![1, 2, 3]);
        assert_eq!(win.window(0, 0), &vec![0]);
        assert_eq!(win.window(0, 6), &vec![1]);
        assert!(win.max_window() <= 6 / 2 + 1);
    }

    #[test]
    fn empty_graph_kappa() {
        for n in 0..4 {
            let g = Graph::empty(n);
            let o = Orientation::lexicographic(&g);
            let pd = single_bag(n);
            for k in 1..4 {
                for wv in WVector::all(k, n) {
                    let expected = if wv.is_zero() { 1 } else { 0 };
                    let run = kappa_dp(&g, &o, &pd, &wv).unwrap();
                    assert_eq!(run.value, BigInt::from(expected), "n={n} k={k} w={wv:?}");
                }
            }
        }
    }

    #[test]
    fn single_edge() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let o = Orientation::lexicographic(&g);
        let pd = single_bag(2);
        assert_eq!(kappa_dp(&g, &o, &pd, &w(2, &[1, 1])).unwrap().value, BigInt::from(-1));
        assert_eq!(kappa_dp(&g, &o, &pd, &w(2, &[0, 0])).unwrap().value, BigInt::from(1));
        assert_eq!(kappa_dp(&g, &o, &pd, &w(2, &[1, 0])).unwrap().value, BigInt::from(0));
    }

    #[test]
    fn cyclic_triangle() {
        let g = k3();
        let o = cyclic_k3();
        let pd = single_bag(3);
        assert_eq!(kappa_dp(&g, &o, &pd, &w(3, &[0, 0, 0])).unwrap().value, BigInt::zero());
        // δ-signature of the single arc 0 -> 1 is (1, -1, 0) = (1, 2, 0) mod 3.
        assert_eq!(kappa_dp(&g, &o, &pd, &w(3, &[1, 2, 0])).unwrap().value, BigInt::from(-1));
    }

    #[test]
    fn k_equal_one() {
        let g = k3();
        let o = Orientation::lexicographic(&g);
        let run = kappa_dp(&g, &o, &single_bag(3), &w(1, &[0, 0, 0])).unwrap();
        assert_eq!(run.value, BigInt::zero());
    }

    #[test]
    fn input_errors() {
        let g = k3();
        let o = Orientation::lexicographic(&g);
        assert!(matches!(
            kappa_dp(&g, &o, &single_bag(3), &w(3, &[0, 0])),
            Err(Error::WVector(_))
        ));
        let bad = PathDecomposition::new(3, vec![vec![0, 1], vec![2]]);
        assert!(matches!(
            kappa_dp(&g, &o, &bad, &w(3, &[0, 0, 0])),
            Err(Error::InvalidDecomposition(_))
        ));
        let other = Orientation::lexicographic(&Graph::new(3, [(0, 1)]).unwrap());
        assert!(kappa_dp(&g, &other, &single_bag(3), &w(3, &[0, 0, 0])).is_err());
    }

    #[test]
    fn bound_examples() {
        assert_eq!(max_table_bound(&k3(), &single_bag(3)), BigUint::from(8u32));
        let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let pd = PathDecomposition::new(3, vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(max_table_bound(&path, &pd), BigUint::from(4u32));
        assert_eq!(
            max_table_bound(&Graph::empty(3), &PathDecomposition::new(3, vec![vec![0], vec![1], vec![2]])),
            BigUint::from(1u32)
        );
    }

    #[test]
    fn state_table_lookup() {
        let mut t = StateTable::initial();
        t.introduce(4);
        t.introduce(1);
        assert_eq!(t.live(), &[1, 4]);
        t.apply_arc(1, 4, 3, |_, _| true);
        assert_eq!(t.get(&[0, 0]), Some(&BigInt::one()));
        assert_eq!(t.get(&[1, 2]), Some(&BigInt::from(-1)));
        assert_eq!(t.len(), 2);
        t.forget(4, 2);
        assert_eq!(t.live(), &[1]);
        assert_eq!(t.get(&[1]), Some(&BigInt::from(-1)));
    }
}
