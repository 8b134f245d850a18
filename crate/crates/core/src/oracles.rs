//! Brute-force and analytic baselines. Nothing here shares code with the
//! path-decomposition dynamic program in [`crate::kappa`]; these functions
//! exist to check it.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{Arc, Graph, Orientation};
use crate::kappa::{KappaValue, WVector};
use crate::pathdecomp::{make_nice, validate, EventKind, PathDecomposition};

/// Absolute tolerance for floating-point character sums.
pub const CHARSUM_TOLERANCE: f64 = 1e-6;

/// Size limits for the exponential oracles. Exceeding one is an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    /// Largest arc count for `2^m` subset enumeration.
    pub max_arcs: usize,
    /// Largest `k^n` for coloring enumeration.
    pub max_colorings: u128,
    /// Largest `k^n` for character sums and exhaustive `w` loops.
    pub max_charsum: u128,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_arcs: 25,
            max_colorings: 10_000_000,
            max_charsum: 1_000_000,
        }
    }
}

impl Guards {
    fn arcs(&self, m: usize) -> Result<()> {
        if m > self.max_arcs {
            return Err(Error::GuardExceeded {
                what: "arc count",
                size: m as u128,
                guard: self.max_arcs as u128,
            });
        }
        Ok(())
    }

    fn power(&self, k: u32, n: usize, guard: u128, what: &'static str) -> Result<u128> {
        let size = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if size > guard {
            return Err(Error::GuardExceeded { what, size, guard });
        }
        Ok(size)
    }
}

/// Walks all `2^m` arc subsets in Gray-code order, calling `visit` with the
/// current outdegree-minus-indegree vector and the subset's parity.
fn for_each_subset(n: usize, arcs: &[Arc], mut visit: impl FnMut(&[i64], bool)) {
    let mut delta = vec![0i64; n];
    let mut member = vec![false; arcs.len()];
    let mut odd = false;
    visit(&delta, odd);
    for i in 1u64..(1u64 << arcs.len()) {
        let bit = i.trailing_zeros() as usize;
        let a = arcs[bit];
        let step = if member[bit] { -1 } else { 1 };
        member[bit] = !member[bit];
        delta[a.tail] += step;
        delta[a.head] -= step;
        odd = !odd;
        visit(&delta, odd);
    }
}

/// κ_{k,w} of an arbitrary arc multiset by direct subset enumeration. Accepts
/// the doubled multiset A ∪ Ā.
pub fn brute_kappa(n: usize, arcs: &[Arc], w: &WVector, guards: &Guards) -> Result<KappaValue> {
    guards.arcs(arcs.len())?;
    if w.len() != n {
        return Err(Error::WVector(format!("w has {} entries, expected {n}", w.len())));
    }
    let k = w.k() as i64;
    let target: Vec<i64> = w.residues().iter().map(|&r| r as i64).collect();
    let mut total = 0i64;
    for_each_subset(n, arcs, |delta, odd| {
        if delta.iter().zip(&target).all(|(d, t)| d.rem_euclid(k) == *t) {
            total += if odd { -1 } else { 1 };
        }
    });
    Ok(BigInt::from(total))
}

/// Every δ-signature mod `k` reached by some arc subset, with its signed
/// subset count. Zero-valued signatures are attainable but have κ = 0.
pub fn kappa_spectrum(
    n: usize,
    arcs: &[Arc],
    k: u32,
    guards: &Guards,
) -> Result<BTreeMap<Vec<u32>, i64>> {
    guards.arcs(arcs.len())?;
    let mut acc: HashMap<Vec<u32>, i64> = HashMap::new();
    for_each_subset(n, arcs, |delta, odd| {
        let key: Vec<u32> = delta.iter().map(|d| d.rem_euclid(k as i64) as u32).collect();
        *acc.entry(key).or_insert(0) += if odd { -1 } else { 1 };
    });
    Ok(acc.into_iter().collect())
}

/// Number of proper `k`-colorings by exhaustive backtracking.
pub fn count_colorings_brute(g: &Graph, k: u32, guards: &Guards) -> Result<BigUint> {
    guards.power(k, g.n(), guards.max_colorings, "k^n colorings")?;
    fn go(g: &Graph, k: u32, v: usize, color: &mut Vec<u32>) -> u64 {
        if v == g.n() {
            return 1;
        }
        let mut total = 0;
        for c in 0..k {
            if g.neighbors(v).iter().all(|&u| u >= v || color[u] != c) {
                color[v] = c;
                total += go(g, k, v + 1, color);
            }
        }
        total
    }
    let mut color = vec![0; g.n()];
    Ok(BigUint::from(go(g, k, 0, &mut color)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorDpRun {
    pub count: BigUint,
    /// Largest number of partial colorings stored at once.
    pub max_table: usize,
}

/// Exact proper-coloring count by the explicit color-assignment dynamic
/// program over the decomposition.
pub fn count_colorings_dp(g: &Graph, pd: &PathDecomposition, k: u32) -> Result<ColorDpRun> {
    validate(g, pd)?;
    let mut live: Vec<usize> = Vec::new();
    let mut table: BTreeMap<Vec<u32>, BigUint> = BTreeMap::from([(Vec::new(), BigUint::from(1u32))]);
    let mut max_table = 1;
    for event in make_nice(pd).events {
        let v = event.vertex;
        match event.kind {
            EventKind::Introduce => {
                let pos = live.binary_search(&v).unwrap_or_else(|p| p);
                let nbr_slots: Vec<usize> = live
                    .iter()
                    .enumerate()
                    .filter(|(_, &u)| g.has_edge(u, v))
                    .map(|(i, _)| if i < pos { i } else { i + 1 })
                    .collect();
                live.insert(pos, v);
                let mut next = BTreeMap::new();
                for (key, count) in table {
                    for c in 0..k {
                        let mut nk = key.clone();
                        nk.insert(pos, c);
                        if nbr_slots.iter().all(|&s| nk[s] != c) {
                            next.insert(nk, count.clone());
                        }
                    }
                }
                table = next;
            }
            EventKind::Forget => {
                let pos = live.binary_search(&v).expect("forgotten vertex is live");
                live.remove(pos);
                let mut next: BTreeMap<Vec<u32>, BigUint> = BTreeMap::new();
                for (mut key, count) in table {
                    key.remove(pos);
                    *next.entry(key).or_default() += count;
                }
                table = next;
            }
        }
        max_table = max_table.max(table.len());
    }
    let count = table.remove(&Vec::new()).unwrap_or_default();
    Ok(ColorDpRun { count, max_table })
}

/// Complex evaluation of the coloring-side character sum for κ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharSumValue {
    pub value: Complex64,
    /// Rough floating-point error estimate for `value`.
    pub error_bound: f64,
}

impl CharSumValue {
    pub fn distance_to(&self, exact: &BigInt) -> f64 {
        (self.value - Complex64::new(exact.to_f64().unwrap_or(f64::NAN), 0.0)).norm()
    }
}

fn roots_of_unity(k: u32) -> Vec<Complex64> {
    (0..k)
        .map(|j| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / k as f64))
        .collect()
}

/// Calls `visit` for every coloring `c ∈ [k]^n` with `f_B(c) = ∏_{uv∈B} (1 − ω^{c(u)−c(v)})`.
fn for_each_coloring(n: usize, arcs: &[Arc], k: u32, roots: &[Complex64], mut visit: impl FnMut(&[u32], Complex64)) {
    let mut c = vec![0u32; n];
    loop {
        let f = arcs.iter().fold(Complex64::new(1.0, 0.0), |acc, a| {
            let e = (c[a.tail] + k - c[a.head]) % k;
            acc * (Complex64::new(1.0, 0.0) - roots[e as usize])
        });
        visit(&c, f);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            c[i] += 1;
            if c[i] < k {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

/// `(1/k^n) Σ_c ∏_v ω^{−w(v)c(v)} f_B(c)`, which equals κ_{k,w}(B).
pub fn charsum_kappa(n: usize, arcs: &[Arc], w: &WVector, guards: &Guards) -> Result<CharSumValue> {
    let k = w.k();
    let size = guards.power(k, n, guards.max_charsum, "k^n character sum")?;
    if w.len() != n {
        return Err(Error::WVector(format!("w has {} entries, expected {n}", w.len())));
    }
    let roots = roots_of_unity(k);
    let mut sum = Complex64::zero();
    let mut abs_sum = 0.0;
    for_each_coloring(n, arcs, k, &roots, |c, f| {
        let e = c
            .iter()
            .zip(w.residues())
            .map(|(&cv, &wv)| (cv as u64 * wv as u64) % k as u64)
            .sum::<u64>()
            % k as u64;
        let term = roots[((k as u64 - e) % k as u64) as usize] * f;
        sum += term;
        abs_sum += term.norm();
    });
    let scale = size as f64;
    let ops = (arcs.len() + n + 2) as f64;
    Ok(CharSumValue {
        value: sum / scale,
        error_bound: 4.0 * ops * f64::EPSILON * abs_sum / scale,
    })
}

/// Both sides of κ_{k,0}(A ∪ Ā) = Σ_w κ_{k,w}(A)².
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubledSquareReport {
    pub doubled_kappa: BigInt,
    pub sum_of_squares: BigInt,
    pub holds: bool,
}

pub fn doubled_square_check(o: &Orientation, k: u32, guards: &Guards) -> Result<DoubledSquareReport> {
    let n = o.n();
    guards.power(k, n, guards.max_charsum, "k^n residue vectors")?;
    let doubled_kappa = brute_kappa(n, &o.doubled(), &WVector::zeros(k, n), guards)?;
    let spectrum = kappa_spectrum(n, o.arcs(), k, guards)?;
    let mut sum_of_squares = BigInt::zero();
    for w in WVector::all(k, n) {
        if let Some(&x) = spectrum.get(w.residues()) {
            sum_of_squares += BigInt::from(x) * BigInt::from(x);
        }
    }
    Ok(DoubledSquareReport {
        holds: doubled_kappa == sum_of_squares,
        doubled_kappa,
        sum_of_squares,
    })
}

/// Numeric check of |κ_{k,0}(C)| = mean |f_A|² and |κ_{k,w}(A)| ≤ mean |f_A|.
#[derive(Debug, Clone, PartialEq)]
pub struct CharsumBoundsReport {
    pub doubled_kappa: BigInt,
    pub mean_f_squared: f64,
    pub equality_holds: bool,
    pub kappa: BigInt,
    pub mean_f_abs: f64,
    pub bound_holds: bool,
}

pub fn charsum_bounds_check(o: &Orientation, w: &WVector, guards: &Guards) -> Result<CharsumBoundsReport> {
    let n = o.n();
    let k = w.k();
    let size = guards.power(k, n, guards.max_charsum, "k^n character sum")?;
    let doubled_kappa = brute_kappa(n, &o.doubled(), &WVector::zeros(k, n), guards)?;
    let kappa = brute_kappa(n, o.arcs(), w, guards)?;
    let roots = roots_of_unity(k);
    let (mut sq, mut abs) = (0.0, 0.0);
    for_each_coloring(n, o.arcs(), k, &roots, |_, f| {
        sq += f.norm_sqr();
        abs += f.norm();
    });
    let mean_f_squared = sq / size as f64;
    let mean_f_abs = abs / size as f64;
    let to_f64 = |x: &BigInt| x.abs().to_f64().unwrap_or(f64::INFINITY);
    Ok(CharsumBoundsReport {
        equality_holds: (to_f64(&doubled_kappa) - mean_f_squared).abs() <= CHARSUM_TOLERANCE,
        bound_holds: to_f64(&kappa) <= mean_f_abs + CHARSUM_TOLERANCE,
        doubled_kappa,
        mean_f_squared,
        kappa,
        mean_f_abs,
    })
}

/// Attainable residue vectors and the subset with κ ≠ 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonzeroReport {
    pub attainable: BTreeSet<WVector>,
    pub nonzero: BTreeSet<WVector>,
}

pub fn enumerate_nonzero_w(o: &Orientation, k: u32, guards: &Guards) -> Result<NonzeroReport> {
    guards.power(k, o.n(), guards.max_charsum, "k^n residue vectors")?;
    let spectrum = kappa_spectrum(o.n(), o.arcs(), k, guards)?;
    let mut attainable = BTreeSet::new();
    let mut nonzero = BTreeSet::new();
    for (key, value) in spectrum {
        let w = WVector::new(k, key)?;
        if value != 0 {
            nonzero.insert(w.clone());
        }
        attainable.insert(w);
    }
    Ok(NonzeroReport { attainable, nonzero })
}

/// δ-signature mod `k` of a uniformly random arc subset; always attainable.
pub fn subset_signature<R: rand::Rng + ?Sized>(o: &Orientation, k: u32, rng: &mut R) -> WVector {
    let mut delta = vec![0i64; o.n()];
    for a in o.arcs() {
        if rng.gen_bool(0.5) {
            delta[a.tail] += 1;
            delta[a.head] -= 1;
        }
    }
    WVector::new(k, delta.iter().map(|d| d.rem_euclid(k as i64) as u32).collect())
        .expect("residues reduced mod k")
}
