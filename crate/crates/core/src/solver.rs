//! Randomized drivers: the colorability decision, maximal color class
//! search, and witness extraction by self-reduction.
//!
//! Every random draw comes from a ChaCha stream fixed by `(seed, index)`, so
//! a trial can be recomputed in isolation and trials can run in any order.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{contract_independent_set, induced_subgraph, Graph, Orientation};
use crate::kappa::{kappa_dp_with, Pruning, WVector};
use crate::pathdecomp::{
    arc_schedule, derive_contracted_pd, derive_induced_pd, validate, ArcSchedule, PathDecomposition,
};

/// Parameters of one decision run: `p * s` trials with `k` colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecisionConfig {
    pub k: u32,
    /// Promised upper bound on the number of proper colorings.
    pub s: u64,
    /// Repetition multiplier.
    pub p: u64,
    pub seed: u64,
    /// Worker threads for trials; 1 runs them inline.
    pub threads: usize,
}

impl DecisionConfig {
    pub fn new(k: u32, s: u64, seed: u64) -> Self {
        DecisionConfig {
            k,
            s,
            p: 2,
            seed,
            threads: 1,
        }
    }

    pub fn with_p(self, p: u64) -> Self {
        DecisionConfig { p, ..self }
    }

    pub fn with_threads(self, threads: usize) -> Self {
        DecisionConfig { threads, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Config("k must be at least 1".into()));
        }
        if self.s == 0 {
            return Err(Error::Config("s must be at least 1".into()));
        }
        if self.p == 0 {
            return Err(Error::Config("p must be at least 1".into()));
        }
        Ok(())
    }

    pub fn trials(&self) -> Result<u64> {
        self.p
            .checked_mul(self.s)
            .ok_or_else(|| Error::Config("p * s overflows".into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub index: u64,
    pub w: WVector,
    pub kappa: BigInt,
    pub max_table: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    /// Trials in index order, up to and including the first nonzero κ.
    pub trials: Vec<TrialRecord>,
}

/// The residue vector drawn by trial `index`: uniform over `[k]^n`.
pub fn trial_w(seed: u64, index: u64, k: u32, n: usize) -> WVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let w = (0..n).map(|_| rng.gen_range(0..k)).collect();
    WVector::new(k, w).expect("residues drawn below k")
}

/// Seed for a nested query, independent of the trial streams of `seed`.
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX - tag);
    rng.next_u64()
}

fn run_trial(g: &Graph, pd: &PathDecomposition, schedule: &ArcSchedule, cfg: &DecisionConfig, index: u64) -> Result<TrialRecord> {
    let w = trial_w(cfg.seed, index, cfg.k, g.n());
    let run = kappa_dp_with(g, pd, schedule, &w, Pruning::Windows)?;
    Ok(TrialRecord {
        index,
        w,
        kappa: run.value,
        max_table: run.stats.max_table,
    })
}

/// Decides whether `g` is `k`-colorable under the promise of at most `s`
/// colorings. Never answers Yes for a non-colorable graph. For a colorable
/// graph within the promise, Yes has probability at least `1 - e^{-p}`.
pub fn decide_k_colorable(g: &Graph, pd: &PathDecomposition, cfg: &DecisionConfig) -> Result<Decision> {
    cfg.validate()?;
    validate(g, pd)?;
    let orientation = Orientation::lexicographic(g);
    let schedule = arc_schedule(&orientation, pd)?;
    let total = cfg.trials()?;
    let batch = cfg.threads.max(1) as u64;
    let mut trials = Vec::new();
    let mut next = 0u64;
    while next < total {
        let end = total.min(next + batch);
        let results: Vec<Result<TrialRecord>> = if batch == 1 {
            vec![run_trial(g, pd, &schedule, cfg, next)]
        } else {
            std::thread::scope(|scope| {
                let handles: Vec<_> = (next..end)
                    .map(|i| {
                        let schedule = &schedule;
                        scope.spawn(move || run_trial(g, pd, schedule, cfg, i))
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("trial thread panicked"))
                    .collect()
            })
        };
        for record in results {
            let record = record?;
            let hit = !record.kappa.is_zero();
            trials.push(record);
            if hit {
                return Ok(Decision {
                    verdict: Verdict::Yes,
                    trials,
                });
            }
        }
        next = end;
    }
    Ok(Decision {
        verdict: Verdict::No,
        trials,
    })
}

/// One contraction query made while growing a color class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassQuery {
    pub candidate: usize,
    pub independent: bool,
    /// `None` when the candidate was skipped for adjacency.
    pub verdict: Option<Verdict>,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorClass {
    /// Sorted members.
    pub members: Vec<usize>,
    pub queries: Vec<ClassQuery>,
}

/// Grows `{anchor}` into a maximal independent set that the decision
/// procedure accepts as one color class: each further vertex is kept when
/// contracting the class with it still leaves a `k`-colorable graph.
pub fn find_maximal_color_class(
    g: &Graph,
    pd: &PathDecomposition,
    cfg: &DecisionConfig,
    anchor: usize,
) -> Result<ColorClass> {
    cfg.validate()?;
    validate(g, pd)?;
    if anchor >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: anchor, n: g.n() });
    }
    let mut members = vec![anchor];
    let mut queries = Vec::new();
    for u in (0..g.n()).filter(|&u| u != anchor) {
        let independent = !members.iter().any(|&x| g.has_edge(x, u));
        if !independent {
            queries.push(ClassQuery {
                candidate: u,
                independent,
                verdict: None,
                trials: 0,
            });
            continue;
        }
        let mut candidate = members.clone();
        candidate.push(u);
        let cr = contract_independent_set(g, &candidate)?;
        let cpd = derive_contracted_pd(pd, &cr);
        let sub = DecisionConfig {
            seed: derive_seed(cfg.seed, u as u64),
            ..*cfg
        };
        let decision = decide_k_colorable(&cr.graph, &cpd, &sub)?;
        if decision.verdict == Verdict::Yes {
            members.push(u);
        }
        queries.push(ClassQuery {
            candidate: u,
            independent,
            verdict: Some(decision.verdict),
            trials: decision.trials.len(),
        });
    }
    members.sort_unstable();
    Ok(ColorClass { members, queries })
}

/// Color per vertex, in `[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring(pub Vec<u32>);

impl Coloring {
    pub fn colors(&self) -> &[u32] {
        &self.0
    }
}

/// True iff `c` has one color per vertex and no edge is monochromatic.
pub fn verify_coloring(g: &Graph, c: &Coloring) -> bool {
    c.0.len() == g.n() && g.edges().iter().all(|&(u, v)| c.0[u] != c.0[v])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtractConfig {
    pub k: u32,
    pub s: u64,
    /// Repetition multiplier for every decision; `None` means `2 n k`.
    pub p: Option<u64>,
    pub seed: u64,
    pub threads: usize,
}

impl ExtractConfig {
    pub fn new(k: u32, s: u64, seed: u64) -> Self {
        ExtractConfig {
            k,
            s,
            p: None,
            seed,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extraction {
    /// `None` when vertices were left uncolored after `k` classes.
    pub coloring: Option<Coloring>,
    /// Extracted classes in color order, original vertex ids.
    pub classes: Vec<Vec<usize>>,
}

/// Finds a proper `k`-coloring one color class at a time. Any returned
/// coloring is verified proper.
pub fn extract_coloring(g: &Graph, pd: &PathDecomposition, cfg: &ExtractConfig) -> Result<Extraction> {
    validate(g, pd)?;
    let p = cfg
        .p
        .unwrap_or(2 * g.n().max(1) as u64 * cfg.k.max(1) as u64);
    DecisionConfig {
        k: cfg.k,
        s: cfg.s,
        p,
        seed: cfg.seed,
        threads: cfg.threads,
    }
    .validate()?;
    let mut color = vec![u32::MAX; g.n()];
    let mut remaining: Vec<usize> = (0..g.n()).collect();
    let mut classes = Vec::new();
    for round in 0..cfg.k {
        if remaining.is_empty() {
            break;
        }
        let (sub, original) = induced_subgraph(g, &remaining)?;
        let sub_pd = derive_induced_pd(pd, &remaining);
        let dcfg = DecisionConfig {
            k: cfg.k - round,
            s: cfg.s,
            p,
            seed: derive_seed(cfg.seed, round as u64),
            threads: cfg.threads,
        };
        let class = find_maximal_color_class(&sub, &sub_pd, &dcfg, 0)?;
        let members: Vec<usize> = class.members.iter().map(|&v| original[v]).collect();
        for &v in &members {
            color[v] = round;
        }
        remaining.retain(|v| members.binary_search(v).is_err());
        classes.push(members);
    }
    let coloring = Coloring(color);
    let ok = remaining.is_empty() && verify_coloring(g, &coloring);
    Ok(Extraction {
        coloring: ok.then_some(coloring),
        classes,
    })
}
