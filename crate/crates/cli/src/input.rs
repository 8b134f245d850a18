use std::fs;

use anyhow::{bail, Context, Result};
use modk_core::{
    bfs_order, boundary_decomposition, families, orient, parse_dimacs, parse_orientation, parse_pd, validate, Graph,
    Orientation, PathDecomposition, WVector,
};

use crate::report::DecompReport;
use crate::{DecompArgs, OrderKind};

pub fn read_graph(path: &str) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading graph {path}"))?;
    parse_dimacs(&text).with_context(|| format!("parsing graph {path}"))
}

pub fn read_orientation(g: &Graph, path: Option<&str>) -> Result<Orientation> {
    let arcs = match path {
        None => None,
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading orientation {p}"))?;
            Some(parse_orientation(&text, g.n()).with_context(|| format!("parsing orientation {p}"))?)
        }
    };
    Ok(orient(g, arcs)?)
}

/// Loads `--pd` or builds the boundary decomposition for `--order`.
pub fn decomposition(g: &Graph, args: &DecompArgs) -> Result<(PathDecomposition, DecompReport)> {
    let (pd, source) = match &args.pd {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading decomposition {path}"))?;
            let pd = parse_pd(&text).with_context(|| format!("parsing decomposition {path}"))?;
            (pd, format!("file:{path}"))
        }
        None => {
            let order: Vec<usize> = match args.order {
                OrderKind::Identity => (0..g.n()).collect(),
                OrderKind::Bfs => bfs_order(g),
            };
            let name = match args.order {
                OrderKind::Identity => "identity",
                OrderKind::Bfs => "bfs",
            };
            (boundary_decomposition(g, &order)?, format!("heuristic:{name}"))
        }
    };
    let width = validate(g, &pd).context("invalid path decomposition")?;
    let report = DecompReport {
        source,
        bags: pd.len(),
        width,
    };
    Ok((pd, report))
}

pub fn parse_w(text: &str, k: u32, n: usize) -> Result<WVector> {
    let residues: Vec<u32> = if text.trim().is_empty() {
        Vec::new()
    } else {
        text.split(',')
            .map(|s| s.trim().parse::<u32>().with_context(|| format!("bad residue `{s}`")))
            .collect::<Result<_>>()?
    };
    if residues.len() != n {
        bail!("--w has {} residues, graph has {n} vertices", residues.len());
    }
    Ok(WVector::new(k, residues)?)
}

/// Parses `name:size` family specs such as `grid:3x10` or `triangles:2`.
pub fn family(spec: &str) -> Result<Graph> {
    let (name, size) = spec.split_once(':').unwrap_or((spec, ""));
    let num = |s: &str| -> Result<usize> { s.parse().with_context(|| format!("bad family size `{s}`")) };
    Ok(match name {
        "triangles" => families::disjoint_triangles(num(size)?).0,
        "path" => families::path(num(size)?),
        "cycle" => {
            let n = num(size)?;
            if n < 3 {
                bail!("cycle needs at least 3 vertices");
            }
            families::cycle(n)
        }
        "complete" => families::complete(num(size)?),
        "empty" => families::empty(num(size)?),
        "grid" => {
            let (r, c) = size.split_once('x').context("grid size must be RxC")?;
            families::grid(num(r)?, num(c)?)
        }
        other => bail!("unknown family `{other}`"),
    })
}

/// Threads per decision from `MODK_THREADS`, default 1.
pub fn threads() -> usize {
    std::env::var("MODK_THREADS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&t| t >= 1)
        .unwrap_or(1)
}
