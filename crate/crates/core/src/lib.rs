//! Deciding `k`-colorability of bounded-degree graphs with few colorings.
//!
//! The decision counts, for a random residue vector `w`, the even minus odd
//! arc subsets of a fixed orientation whose outdegree-minus-indegree is
//! `w(v) mod k` at every vertex. That signed count is always zero for a
//! non-`k`-colorable graph and nonzero for at least a `1/s` fraction of the
//! vectors when there are `s > 0` colorings. It is computed exactly by a
//! dynamic program over a path decomposition whose per-vertex state space
//! is at most `⌊Δ/2⌋ + 1` residues instead of `k` colors.

pub mod error;
pub mod families;
pub mod graph;
pub mod kappa;
pub mod oracles;
pub mod pathdecomp;
pub mod solver;

pub use error::{Error, Result};
pub use graph::{
    contract_independent_set, induced_subgraph, max_degree, orient, parse_dimacs, parse_orientation,
    render_dimacs, render_orientation, Arc, ContractionResult, Graph, Orientation,
};
pub use kappa::{
    kappa_dp, kappa_dp_with, max_table_bound, residue_windows, DpStats, KappaRun, KappaValue, Pruning,
    ResidueWindows, StateTable, WVector,
};
pub use oracles::{
    brute_kappa, charsum_kappa, count_colorings_brute, count_colorings_dp, enumerate_nonzero_w, kappa_spectrum,
    doubled_square_check, charsum_bounds_check, subset_signature, CharSumValue, ColorDpRun, Guards, DoubledSquareReport, CharsumBoundsReport, NonzeroReport,
    CHARSUM_TOLERANCE,
};
pub use pathdecomp::{
    arc_schedule, bfs_order, boundary_decomposition, derive_contracted_pd, derive_induced_pd, make_nice, parse_pd,
    render_pd, validate, ArcSchedule, EventKind, NiceEvent, NiceEventSequence, PathDecomposition, ScheduledArc,
};
pub use solver::{
    decide_k_colorable, derive_seed, extract_coloring, find_maximal_color_class, trial_w, verify_coloring, ClassQuery,
    ColorClass, Coloring, Decision, DecisionConfig, ExtractConfig, Extraction, TrialRecord, Verdict,
};

pub use num_bigint::{BigInt, BigUint};
