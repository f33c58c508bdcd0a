//! Exhaustive generation of genus-zero floor diagrams of a fixed degree.
//!
//! Strategy: iterate splits `v2 + 2*v4 = d`, enumerate labeled trees on
//! `v2 + v4` vertices (Prüfer sequences), assign vertex kinds and edge
//! orientations, assign edge weights by a leaf-elimination DFS that prunes
//! on per-vertex divergence feasibility, then distribute the remaining
//! divergence of each vertex into leg multisets. Duplicates collapse under
//! the canonical key, so the output is one representative per isomorphism
//! class, in canonical-key order.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::diagram::{Edge, FloorDiagram, Leg, VertexKind};
use crate::MAX_DEGREE;

use super::EnumerateError;

/// Version stamp of the on-disk cache schema.
pub const CACHE_FORMAT: u32 = 1;

/// All isomorphism classes of genus-zero floor diagrams of degree `d`,
/// validated and canonically labeled, in canonical-key order.
pub fn enumerate_diagrams(d: i64) -> Result<Vec<FloorDiagram>, EnumerateError> {
    if !(1..=MAX_DEGREE).contains(&d) {
        return Err(EnumerateError::DegreeOutOfRange(d, MAX_DEGREE));
    }

    let mut items = Vec::new();
    let mut v4 = 0;
    while 2 * v4 <= d {
        let v2 = d - 2 * v4;
        let n = (v2 + v4) as usize;
        // a tree with more than one vertex needs edges, and every edge
        // needs a divergence-4 endpoint
        if n == 0 || (v4 == 0 && n > 1) {
            v4 += 1;
            continue;
        }
        for tree in labeled_trees(n) {
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as i64 != v4 {
                    continue;
                }
                let kinds: Vec<VertexKind> = (0..n)
                    .map(|v| {
                        if mask & (1 << v) != 0 {
                            VertexKind::Div4
                        } else {
                            VertexKind::Div2
                        }
                    })
                    .collect();
                if tree
                    .iter()
                    .any(|&(u, v)| kinds[u] == VertexKind::Div2 && kinds[v] == VertexKind::Div2)
                {
                    continue;
                }
                // a divergence-2 sink with more than two incident edges is
                // impossible (each in-edge weighs at least 1)
                let overloaded = (0..n).any(|v| {
                    kinds[v] == VertexKind::Div2
                        && tree.iter().filter(|&&(a, b)| a == v || b == v).count() > 2
                });
                if overloaded {
                    continue;
                }
                items.push(WorkItem {
                    tree: tree.clone(),
                    kinds,
                });
            }
        }
        v4 += 1;
    }

    let batches = crate::par::map_vec(items, |item| expand(&item, d));
    let mut out: BTreeMap<Vec<u8>, FloorDiagram> = BTreeMap::new();
    for batch in batches {
        for g in batch {
            out.entry(g.canonical_key()).or_insert(g);
        }
    }
    for g in out.values() {
        assert!(g.validate().is_ok(), "generated diagram must validate: {g}");
        assert_eq!(g.degree(), d);
    }
    Ok(out.into_values().collect())
}

/// Cached variant: reads `diagrams-d<d>.json` under `cache_dir` when it
/// matches the current format, recomputes and rewrites otherwise.
pub fn enumerate_diagrams_cached(
    d: i64,
    cache_dir: Option<&Path>,
) -> Result<Vec<FloorDiagram>, EnumerateError> {
    let Some(dir) = cache_dir else {
        return enumerate_diagrams(d);
    };
    let path = dir.join(format!("diagrams-d{d}.json"));
    if let Some(diagrams) = read_cache(&path, d) {
        return Ok(diagrams);
    }
    let diagrams = enumerate_diagrams(d)?;
    let file = CacheFile {
        format: CACHE_FORMAT,
        degree: d,
        diagrams: diagrams.clone(),
    };
    let cache_err = |message: String| EnumerateError::Cache {
        path: path.display().to_string(),
        message,
    };
    fs::create_dir_all(dir).map_err(|e| cache_err(e.to_string()))?;
    let json = serde_json::to_string(&file).map_err(|e| cache_err(e.to_string()))?;
    fs::write(&path, json).map_err(|e| cache_err(e.to_string()))?;
    Ok(diagrams)
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: u32,
    degree: i64,
    diagrams: Vec<FloorDiagram>,
}

fn read_cache(path: &Path, d: i64) -> Option<Vec<FloorDiagram>> {
    let text = fs::read_to_string(path).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    if file.format != CACHE_FORMAT || file.degree != d {
        return None;
    }
    if file
        .diagrams
        .iter()
        .any(|g| g.validate().is_err() || g.degree() != d)
    {
        return None;
    }
    Some(file.diagrams)
}

struct WorkItem {
    tree: Vec<(usize, usize)>,
    kinds: Vec<VertexKind>,
}

/// All labeled trees on `n` vertices via Prüfer decoding.
fn labeled_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    match n {
        1 => vec![vec![]],
        2 => vec![vec![(0, 1)]],
        _ => {
            let mut out = Vec::new();
            let mut seq = vec![0usize; n - 2];
            loop {
                out.push(prufer_decode(&seq, n));
                // odometer over sequences in [0, n)^(n-2)
                let mut i = 0;
                loop {
                    if i == seq.len() {
                        return out;
                    }
                    seq[i] += 1;
                    if seq[i] < n {
                        break;
                    }
                    seq[i] = 0;
                    i += 1;
                }
            }
        }
    }
}

fn prufer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut degree_now = degree.clone();
    for &s in seq {
        let leaf = (0..n).find(|&v| degree_now[v] == 1).expect("leaf exists");
        edges.push((leaf, s));
        degree_now[leaf] = 0;
        degree_now[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree_now[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn expand(item: &WorkItem, d: i64) -> Vec<FloorDiagram> {
    let n = item.kinds.len();
    let mut out = Vec::new();

    // orientation: edges at a Div2 vertex point toward it; Div4-Div4 edges
    // take both directions
    let mut free = Vec::new();
    let mut base: Vec<(usize, usize)> = Vec::with_capacity(item.tree.len());
    for (i, &(u, v)) in item.tree.iter().enumerate() {
        if item.kinds[v] == VertexKind::Div2 {
            base.push((u, v));
        } else if item.kinds[u] == VertexKind::Div2 {
            base.push((v, u));
        } else {
            base.push((u, v));
            free.push(i);
        }
    }

    for flip in 0u32..(1 << free.len()) {
        let mut oriented = base.clone();
        for (bit, &i) in free.iter().enumerate() {
            if flip & (1 << bit) != 0 {
                oriented[i] = (oriented[i].1, oriented[i].0);
            }
        }
        let order = elimination_order(&item.tree, n);
        let mut weights = vec![0i64; oriented.len()];
        let mut in_sum = vec![0i64; n];
        let mut out_sum = vec![0i64; n];
        assign_weights(
            item,
            &oriented,
            &order,
            0,
            d,
            &mut weights,
            &mut in_sum,
            &mut out_sum,
            0,
            &mut out,
        );
    }
    out
}

/// Edge order in which each step completes at least one vertex, paired
/// with the vertices completed at that step.
fn elimination_order(tree: &[(usize, usize)], n: usize) -> Vec<(usize, Vec<usize>)> {
    let mut remaining: Vec<usize> = vec![0; n];
    for &(u, v) in tree {
        remaining[u] += 1;
        remaining[v] += 1;
    }
    let mut used = vec![false; tree.len()];
    let mut order = Vec::with_capacity(tree.len());
    for _ in 0..tree.len() {
        let (i, _) = tree
            .iter()
            .enumerate()
            .find(|&(i, &(u, v))| !used[i] && (remaining[u] == 1 || remaining[v] == 1))
            .expect("a tree always has a leaf edge");
        used[i] = true;
        let (u, v) = tree[i];
        remaining[u] -= 1;
        remaining[v] -= 1;
        let mut completed = Vec::new();
        if remaining[u] == 0 {
            completed.push(u);
        }
        if remaining[v] == 0 {
            completed.push(v);
        }
        order.push((i, completed));
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn assign_weights(
    item: &WorkItem,
    oriented: &[(usize, usize)],
    order: &[(usize, Vec<usize>)],
    step: usize,
    d: i64,
    weights: &mut Vec<i64>,
    in_sum: &mut Vec<i64>,
    out_sum: &mut Vec<i64>,
    legs_committed: i64,
    out: &mut Vec<FloorDiagram>,
) {
    if step == order.len() {
        emit_with_legs(item, oriented, weights, in_sum, out_sum, d, out);
        return;
    }
    let (edge, completed) = &order[step];
    let (src, dst) = oriented[*edge];
    for w in 1..=(2 * d) {
        in_sum[dst] += w;
        out_sum[src] += w;
        weights[*edge] = w;

        let mut feasible = in_sum[dst] <= item.kinds[dst].target_divergence();
        let mut legs_added = 0;
        if feasible {
            for &v in completed {
                let legs = item.kinds[v].target_divergence() - (in_sum[v] - out_sum[v]);
                if legs < 0 || legs_committed + legs_added + legs > 2 * d {
                    feasible = false;
                    break;
                }
                legs_added += legs;
            }
        }
        if feasible {
            assign_weights(
                item,
                oriented,
                order,
                step + 1,
                d,
                weights,
                in_sum,
                out_sum,
                legs_committed + legs_added,
                out,
            );
        }

        in_sum[dst] -= w;
        out_sum[src] -= w;
    }
    weights[*edge] = 0;
}

fn emit_with_legs(
    item: &WorkItem,
    oriented: &[(usize, usize)],
    weights: &[i64],
    in_sum: &[i64],
    out_sum: &[i64],
    d: i64,
    out: &mut Vec<FloorDiagram>,
) {
    let n = item.kinds.len();
    let leg_budget: Vec<i64> = (0..n)
        .map(|v| item.kinds[v].target_divergence() - (in_sum[v] - out_sum[v]))
        .collect();
    if leg_budget.iter().any(|&b| b < 0) || leg_budget.iter().sum::<i64>() != 2 * d {
        return;
    }

    let options: Vec<Vec<Vec<i64>>> = leg_budget.iter().map(|&b| partitions(b)).collect();
    let mut choice = vec![0usize; n];
    loop {
        let mut legs = Vec::new();
        for v in 0..n {
            for &w in &options[v][choice[v]] {
                legs.push(Leg {
                    vertex: v,
                    weight: w,
                });
            }
        }
        let edges = oriented
            .iter()
            .zip(weights)
            .map(|(&(src, dst), &weight)| Edge { src, dst, weight })
            .collect();
        let g = FloorDiagram::new(item.kinds.clone(), edges, legs)
            .expect("indices are in range by construction");
        if g.validate().is_ok() {
            out.push(g.to_canonical());
        }

        // odometer over per-vertex partition choices
        let mut v = 0;
        loop {
            if v == n {
                return;
            }
            choice[v] += 1;
            if choice[v] < options[v].len() {
                break;
            }
            choice[v] = 0;
            v += 1;
        }
    }
}

/// Partitions of `k` into positive parts, weakly decreasing; `k = 0` gives
/// the single empty partition.
fn partitions(k: i64) -> Vec<Vec<i64>> {
    fn rec(k: i64, max: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == 0 {
            out.push(prefix.clone());
            return;
        }
        let mut part = max.min(k);
        while part >= 1 {
            prefix.push(part);
            rec(k - part, part, prefix, out);
            prefix.pop();
            part -= 1;
        }
    }
    let mut out = Vec::new();
    rec(k, k.max(1), &mut Vec::new(), &mut out);
    out
}
