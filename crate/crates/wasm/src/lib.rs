//! Browser bindings: skeleton and clique of a small polytope, clique-size
//! bounds, and exact constrained spanning tree solves.
//!
//! Every operation has a plain Rust entry point returning JSON text (tested
//! natively) and a thin `#[wasm_bindgen]` wrapper that turns errors into
//! JavaScript exceptions.

use std::collections::BTreeSet;

use serde_json::json;
use treeskel::clique::clique_number;
use treeskel::constructions::{clique_bound, hp_vertex_set, tsp_vertex_set, BoundTheorem};
use treeskel::skeleton::{build_skeleton, AdjacencyOracle, Family, VertexSet};
use treeskel::solvers::{solve_bnb, solve_enumerate, Variant};
use treeskel::GraphInstance;
use wasm_bindgen::prelude::*;

/// Largest `n` the page will build a skeleton for; `K_6` already has 1296
/// spanning trees, too many pairs for an interactive page.
pub const SKELETON_MAX_N: usize = 5;
/// Largest `n` for solves; enumeration cross-checks the branch and bound.
pub const SOLVE_MAX_N: usize = 7;

fn parse_subset(text: &str, n: usize) -> Result<BTreeSet<usize>, String> {
    let mut out = BTreeSet::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let v: usize = part.parse().map_err(|_| format!("bad vertex '{part}' in subset"))?;
        if v >= n {
            return Err(format!("subset vertex {v} is not below n={n}"));
        }
        out.insert(v);
    }
    Ok(out)
}

fn family(name: &str, n: usize, k: usize, subset: &str) -> Result<Family, String> {
    let all: BTreeSet<usize> = (0..n).collect();
    Ok(match name {
        "mst" => Family::Mst,
        "lcmst" => Family::Lcmst { k },
        "dcmst" => Family::Dcmst { k },
        "rlsmst" => Family::Rlsmst { subset: parse_subset(subset, n)?, k },
        "svmst" => Family::Svmst { subset: parse_subset(subset, n)? },
        "hp" => Family::Hp { u: 0, w: n.saturating_sub(1), ground: all },
        "tsp" => Family::Tsp { ground: all },
        other => return Err(format!("unknown family '{other}'")),
    })
}

fn variant(name: &str, n: usize, k: usize, subset: &str) -> Result<Variant, String> {
    let v = match name {
        "mst" => Variant::Mst,
        "lcmst" => Variant::Lcmst { k },
        "dcmst" => Variant::Dcmst { k },
        "rlsmst" => Variant::Rlsmst { subset: parse_subset(subset, n)?, k },
        "svmst" => Variant::Svmst { subset: parse_subset(subset, n)? },
        other => return Err(format!("unknown variant '{other}'")),
    };
    v.validate(n).map_err(|e| e.to_string())?;
    Ok(v)
}

/// Skeleton of a small polytope with its clique number, as JSON: vertex
/// labels, edge list, degree range and a maximum clique.
pub fn skeleton_report(name: &str, n: usize, k: usize, subset: &str) -> Result<String, String> {
    if !(2..=SKELETON_MAX_N).contains(&n) {
        return Err(format!("the demo builds skeletons for 2 <= n <= {SKELETON_MAX_N}"));
    }
    let fam = family(name, n, k, subset)?;
    let vs = match &fam {
        Family::Hp { u, w, ground } => hp_vertex_set(n, ground, *u, *w),
        Family::Tsp { ground } => tsp_vertex_set(n, ground),
        _ => {
            if let Some(c) = fam.constraint() {
                c.validate(n).map_err(|e| e.to_string())?;
            }
            VertexSet::for_family(n, fam.clone(), SKELETON_MAX_N)
        }
    }
    .map_err(|e| e.to_string())?;
    if vs.is_empty() {
        return Err(format!("{fam} on n={n} has no vertices"));
    }
    let g = build_skeleton(&vs, AdjacencyOracle::Lp, usize::MAX).map_err(|e| e.to_string())?;
    let clique = clique_number(&g);
    let degrees = g.degrees();
    let doc = json!({
        "family": fam.to_string(),
        "n": n,
        "num_vertices": g.num_vertices(),
        "num_edges": g.num_edges(),
        "min_degree": degrees.iter().min(),
        "max_degree": degrees.iter().max(),
        "labels": (0..vs.len()).map(|i| vs.label(i)).collect::<Vec<_>>(),
        "edges": g.edges(),
        "clique_number": clique.size,
        "clique_witness": clique.witness,
    });
    Ok(doc.to_string())
}

/// Clique-size lower bound for one parameter choice, plus the curve of the
/// bound over `n` up to `n` itself (sampled at most 200 times).
pub fn bound_report(theorem: &str, n: usize, k: usize, subset_size: usize) -> Result<String, String> {
    let make = |n: usize| -> BoundTheorem {
        match theorem {
            "lcmst" => BoundTheorem::Lcmst { n, k },
            "rlsmst" => BoundTheorem::Rlsmst { subset_size: n, k },
            "svmst" => BoundTheorem::Svmst { n, subset_size },
            "dcmst" => BoundTheorem::Dcmst { n, k },
            _ => BoundTheorem::Tsp { n },
        }
    };
    if !["lcmst", "rlsmst", "svmst", "dcmst", "tsp"].contains(&theorem) {
        return Err(format!("unknown bound '{theorem}'"));
    }
    let at = clique_bound(make(n)).map_err(|e| e.to_string())?;
    let step = (n / 200).max(1);
    let curve: Vec<(usize, f64)> = (1..=n)
        .step_by(step)
        .chain(std::iter::once(n))
        .filter_map(|m| clique_bound(make(m)).ok().map(|b| (m, b.value)))
        .collect();
    let doc = json!({
        "bound": at,
        "rendered": at.render(),
        "curve": curve,
    });
    Ok(doc.to_string())
}

/// Exact solve on a seeded random instance by branch and bound, checked
/// against enumeration.
pub fn solve_report(name: &str, n: usize, k: usize, subset: &str, seed: u64) -> Result<String, String> {
    if !(2..=SOLVE_MAX_N).contains(&n) {
        return Err(format!("the demo solves instances with 2 <= n <= {SOLVE_MAX_N}"));
    }
    let v = variant(name, n, k, subset)?;
    let g = GraphInstance::random(n, seed).map_err(|e| e.to_string())?;
    let bnb = solve_bnb(&g, &v).map_err(|e| e.to_string())?;
    let enumerated = solve_enumerate(&g, &v, SOLVE_MAX_N).map_err(|e| e.to_string())?;
    let mut doc = bnb.to_json();
    doc["agreement"] = json!(bnb.weight() == enumerated.weight());
    doc["enumerate"] = enumerated.to_json();
    doc["seed"] = json!(seed);
    doc["instance"] = serde_json::from_str(&g.to_json()).map_err(|e| e.to_string())?;
    Ok(doc.to_string())
}

#[wasm_bindgen]
pub fn skeleton(family: &str, n: usize, k: usize, subset: &str) -> Result<String, JsError> {
    skeleton_report(family, n, k, subset).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn bound(theorem: &str, n: usize, k: usize, subset_size: usize) -> Result<String, JsError> {
    bound_report(theorem, n, k, subset_size).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn solve(variant: &str, n: usize, k: usize, subset: &str, seed: u64) -> Result<String, JsError> {
    solve_report(variant, n, k, subset, seed).map_err(|e| JsError::new(&e))
}
