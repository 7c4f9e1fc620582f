//! Special spanning tree families that embed Hamiltonian path polytopes into
//! the leaf- and degree-constrained polytopes, and the checks built on them.
//!
//! Leaf family: two hubs `u`, `w` carry fixed pendant leaves `V_u`, `V_w`; the
//! remaining vertices must then form a Hamiltonian `u`–`w` path, so the family
//! is in bijection with those paths.
//!
//! Degree family: `s = ⌊(n-2)/(k-1)⌋` groups of `k-1` vertices, each a spine
//! vertex with `k-2` pendant leaves, plus two end groups hung off the first and
//! last spine vertex. With every degree capped at `k`, the spine must be a
//! Hamiltonian path between the first and last spine vertex.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::clique::{clique_number, CliqueResult};
use crate::error::{Error, Result};
use crate::graph::{edge_endpoints, edge_index, enumerate_spanning_trees, filter_family, num_edges, Constraint, SpanningTree};
use crate::skeleton::{build_skeleton, char_vector, segment_is_edge, AdjacencyOracle, CharVector, Family, VertexSet};

/// A vertex sequence visiting its ground set once each.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HamiltonianPath {
    vertices: Vec<usize>,
}

impl HamiltonianPath {
    pub fn new(vertices: Vec<usize>) -> Result<Self> {
        let distinct: BTreeSet<usize> = vertices.iter().copied().collect();
        if vertices.len() < 2 || distinct.len() != vertices.len() {
            return Err(Error::arg("a path needs at least two distinct vertices, each visited once"));
        }
        Ok(HamiltonianPath { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn ground(&self) -> BTreeSet<usize> {
        self.vertices.iter().copied().collect()
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.vertices[0], *self.vertices.last().expect("non-empty"))
    }

    /// Sorted edge coordinates in `K_n`.
    pub fn edges(&self, n: usize) -> Vec<usize> {
        let mut e: Vec<usize> = self.vertices.windows(2).map(|p| edge_index(p[0], p[1], n)).collect();
        e.sort_unstable();
        e
    }

    pub fn char_vector(&self, n: usize) -> CharVector {
        CharVector::from_support(num_edges(n), &self.edges(n))
    }

    fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        HamiltonianPath { vertices: v }
    }
}

impl fmt::Display for HamiltonianPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("-"))
    }
}

/// Lexicographic next permutation; false once the last one has been reached.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// All Hamiltonian paths on `ground` from `u` to `w`, inner vertices in
/// lexicographic permutation order. There are `(|ground| - 2)!` of them.
pub fn hamiltonian_paths(ground: &BTreeSet<usize>, u: usize, w: usize) -> Result<Vec<HamiltonianPath>> {
    if u == w || !ground.contains(&u) || !ground.contains(&w) {
        return Err(Error::arg(format!("endpoints {u}, {w} must be distinct members of the ground set")));
    }
    let mut inner: Vec<usize> = ground.iter().copied().filter(|&v| v != u && v != w).collect();
    let mut out = Vec::new();
    loop {
        let mut seq = Vec::with_capacity(ground.len());
        seq.push(u);
        seq.extend_from_slice(&inner);
        seq.push(w);
        out.push(HamiltonianPath { vertices: seq });
        if !next_permutation(&mut inner) {
            break;
        }
    }
    Ok(out)
}

/// Characteristic vectors (in the edge space of `K_n`) of the Hamiltonian
/// `u`–`w` paths on `ground`.
pub fn hp_vertex_set(n: usize, ground: &BTreeSet<usize>, u: usize, w: usize) -> Result<VertexSet> {
    if let Some(&v) = ground.iter().find(|&&v| v >= n) {
        return Err(Error::arg(format!("ground vertex {v} out of range for n={n}")));
    }
    let paths = hamiltonian_paths(ground, u, w)?;
    VertexSet::new(
        n,
        Family::Hp {
            u,
            w,
            ground: ground.clone(),
        },
        paths.iter().map(|p| p.char_vector(n)).collect(),
    )
}

/// Hamiltonian cycles on `ground` (at least 3 vertices), each listed once:
/// starting at the smallest vertex, second vertex smaller than the last.
pub fn hamiltonian_cycles(ground: &BTreeSet<usize>) -> Result<Vec<Vec<usize>>> {
    if ground.len() < 3 {
        return Err(Error::arg("a Hamiltonian cycle needs at least 3 vertices"));
    }
    let start = *ground.first().expect("non-empty");
    let mut rest: Vec<usize> = ground.iter().copied().skip(1).collect();
    let mut out = Vec::new();
    loop {
        if rest[0] < *rest.last().expect("non-empty") {
            let mut c = vec![start];
            c.extend_from_slice(&rest);
            out.push(c);
        }
        if !next_permutation(&mut rest) {
            break;
        }
    }
    Ok(out)
}

/// Characteristic vectors of the Hamiltonian cycles on `ground`, in the
/// order of [`hamiltonian_cycles`].
pub fn tsp_vertex_set(n: usize, ground: &BTreeSet<usize>) -> Result<VertexSet> {
    if let Some(&v) = ground.iter().find(|&&v| v >= n) {
        return Err(Error::arg(format!("ground vertex {v} out of range for n={n}")));
    }
    let cycles = hamiltonian_cycles(ground)?;
    VertexSet::new(
        n,
        Family::Tsp { ground: ground.clone() },
        cycles.iter().map(|c| CharVector::from_support(num_edges(n), &cycle_edges(c, n))).collect(),
    )
}

fn cycle_edges(cycle: &[usize], n: usize) -> Vec<usize> {
    let mut e: Vec<usize> = (0..cycle.len())
        .map(|i| edge_index(cycle[i], cycle[(i + 1) % cycle.len()], n))
        .collect();
    e.sort_unstable();
    e
}

/// Walks the edge set `edges` restricted to `ground` from `start`; returns the
/// vertex sequence if the edges form a Hamiltonian path of `ground` starting there.
fn trace_path(n: usize, edges: &[usize], ground: &BTreeSet<usize>, start: usize) -> Option<Vec<usize>> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &e in edges {
        let (a, b) = edge_endpoints(e, n);
        if !ground.contains(&a) || !ground.contains(&b) {
            return None;
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    if edges.len() + 1 != ground.len() || adj[start].len() != 1 {
        return None;
    }
    let mut seq = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&x| x != prev).collect();
        match next.as_slice() {
            [] => break,
            [x] => {
                prev = cur;
                cur = *x;
                seq.push(cur);
                if seq.len() > ground.len() {
                    return None;
                }
            }
            _ => return None,
        }
    }
    (seq.len() == ground.len()).then_some(seq)
}

/// Two hubs `u`, `w` with fixed pendant leaves; the other `n - k - 2` vertices
/// are inner vertices of the `u`–`w` path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeafFamilySpec {
    pub n: usize,
    pub u: usize,
    pub w: usize,
    pub v_u: Vec<usize>,
    pub v_w: Vec<usize>,
}

impl LeafFamilySpec {
    pub fn new(n: usize, u: usize, w: usize, v_u: Vec<usize>, v_w: Vec<usize>) -> Result<Self> {
        if u == w {
            return Err(Error::arg("hubs u and w must differ"));
        }
        let all: Vec<usize> = [u, w].iter().chain(&v_u).chain(&v_w).copied().collect();
        if let Some(&v) = all.iter().find(|&&v| v >= n) {
            return Err(Error::arg(format!("vertex {v} out of range for n={n}")));
        }
        if all.iter().collect::<BTreeSet<_>>().len() != all.len() {
            return Err(Error::arg("u, w, V_u and V_w must be pairwise disjoint"));
        }
        // an empty side would leave its hub as an extra leaf
        if v_u.is_empty() || v_w.is_empty() {
            return Err(Error::arg("both hubs need at least one pendant leaf"));
        }
        Ok(LeafFamilySpec { n, u, w, v_u, v_w })
    }

    /// Canonical labelling: `u = 0`, `w = 1`, inner vertices `2..n-k`, then
    /// `on_u` leaves at `u` and the remaining `k - on_u` at `w`.
    pub fn standard(n: usize, k: usize, on_u: usize) -> Result<Self> {
        if k + 2 > n {
            return Err(Error::arg(format!("k={k} leaves need at least k+2 vertices, n={n}")));
        }
        if on_u == 0 || on_u >= k {
            return Err(Error::arg(format!("split {on_u}/{} leaves a hub without leaves", k.saturating_sub(on_u))));
        }
        let first_leaf = n - k;
        let v_u = (first_leaf..first_leaf + on_u).collect();
        let v_w = (first_leaf + on_u..n).collect();
        Self::new(n, 0, 1, v_u, v_w)
    }

    pub fn k(&self) -> usize {
        self.v_u.len() + self.v_w.len()
    }

    pub fn leaves(&self) -> BTreeSet<usize> {
        self.v_u.iter().chain(&self.v_w).copied().collect()
    }

    /// `V ∖ V_uw`: the hubs and the inner vertices.
    pub fn path_ground(&self) -> BTreeSet<usize> {
        let leaves = self.leaves();
        (0..self.n).filter(|v| !leaves.contains(v)).collect()
    }

    fn pendant_edges(&self) -> Vec<usize> {
        self.v_u
            .iter()
            .map(|&v| edge_index(v, self.u, self.n))
            .chain(self.v_w.iter().map(|&v| edge_index(v, self.w, self.n)))
            .collect()
    }

    fn hp(&self) -> Result<VertexSet> {
        hp_vertex_set(self.n, &self.path_ground(), self.u, self.w)
    }
}

impl fmt::Display for LeafFamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lc-family(n={},k={},u={},w={},V_u={:?},V_w={:?})", self.n, self.k(), self.u, self.w, self.v_u, self.v_w)
    }
}

fn join_edges(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut e: Vec<usize> = a.iter().chain(b).copied().collect();
    e.sort_unstable();
    e
}

/// The leaf family's trees, in the order of their Hamiltonian paths.
pub fn lc_trees(spec: &LeafFamilySpec) -> Result<Vec<SpanningTree>> {
    hamiltonian_paths(&spec.path_ground(), spec.u, spec.w)?
        .iter()
        .map(|p| lc_lift(p, spec))
        .collect()
}

pub fn lc_family(spec: &LeafFamilySpec) -> Result<VertexSet> {
    let trees = lc_trees(spec)?;
    VertexSet::from_trees(spec.n, Family::Construction { name: spec.to_string() }, &trees)
}

/// Drops the pendant leaves; what remains must be a Hamiltonian `u`–`w` path.
pub fn lc_project(t: &SpanningTree, spec: &LeafFamilySpec) -> Result<HamiltonianPath> {
    if t.n() != spec.n {
        return Err(Error::contract(format!("tree on {} vertices, family on {}", t.n(), spec.n)));
    }
    let pendant = spec.pendant_edges();
    if let Some(&e) = pendant.iter().find(|&&e| t.edges().binary_search(&e).is_err()) {
        let (a, b) = edge_endpoints(e, spec.n);
        return Err(Error::contract(format!("tree {t} lacks pendant edge ({a},{b})")));
    }
    let rest: Vec<usize> = t.edges().iter().copied().filter(|e| !pendant.contains(e)).collect();
    let seq = trace_path(spec.n, &rest, &spec.path_ground(), spec.u)
        .filter(|s| *s.last().expect("non-empty") == spec.w)
        .ok_or_else(|| Error::contract(format!("tree {t} does not reduce to a Hamiltonian {}-{} path", spec.u, spec.w)))?;
    HamiltonianPath::new(seq)
}

/// Adds the pendant leaves back to a Hamiltonian `u`–`w` path on `V ∖ V_uw`.
pub fn lc_lift(p: &HamiltonianPath, spec: &LeafFamilySpec) -> Result<SpanningTree> {
    if p.ground() != spec.path_ground() {
        return Err(Error::arg(format!("path {p} is not on V \\ V_uw = {:?}", spec.path_ground())));
    }
    let p = match p.endpoints() {
        (a, b) if (a, b) == (spec.u, spec.w) => p.clone(),
        (a, b) if (b, a) == (spec.u, spec.w) => p.reversed(),
        _ => return Err(Error::arg(format!("path {p} does not run between {} and {}", spec.u, spec.w))),
    };
    SpanningTree::new(spec.n, join_edges(&p.edges(spec.n), &spec.pendant_edges()))
}

/// Partition of the vertices into `V_0, V_1, ..., V_s, V_{s+1}`; the first
/// entry of each group is its representative `v_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeFamilySpec {
    pub n: usize,
    pub k: usize,
    pub groups: Vec<Vec<usize>>,
}

/// `⌊(n-2)/(k-1)⌋`, the number of spine groups.
pub fn spine_length(n: usize, k: usize) -> Result<usize> {
    if n <= 2 || k <= 1 {
        return Err(Error::arg(format!("need n > 2 and k > 1, got n={n}, k={k}")));
    }
    Ok((n - 2) / (k - 1))
}

impl DegreeFamilySpec {
    pub fn new(n: usize, k: usize, groups: Vec<Vec<usize>>) -> Result<Self> {
        let s = spine_length(n, k)?;
        if s < 2 {
            return Err(Error::arg(format!("spine of length s={s} < 2 for n={n}, k={k}")));
        }
        if groups.len() != s + 2 {
            return Err(Error::arg(format!("expected s+2={} groups, got {}", s + 2, groups.len())));
        }
        if let Some(i) = (1..=s).find(|&i| groups[i].len() != k - 1) {
            return Err(Error::arg(format!("group V_{i} must have k-1={} vertices", k - 1)));
        }
        for end in [0, s + 1] {
            if groups[end].is_empty() || groups[end].len() > k {
                return Err(Error::arg(format!("end group V_{end} must have between 1 and k={k} vertices")));
            }
        }
        let all: Vec<usize> = groups.iter().flatten().copied().collect();
        let distinct: BTreeSet<usize> = all.iter().copied().collect();
        if all.len() != n || distinct.len() != n || distinct.iter().any(|&v| v >= n) {
            return Err(Error::arg("groups must partition the vertex set"));
        }
        Ok(DegreeFamilySpec { n, k, groups })
    }

    /// Canonical labelling: spine representatives `0..s`, then each spine
    /// group's `k-2` leaves in order, then `V_0` (the larger half of the
    /// remainder) and `V_{s+1}`.
    pub fn standard(n: usize, k: usize) -> Result<Self> {
        let s = spine_length(n, k)?;
        if s < 2 {
            return Err(Error::arg(format!("spine of length s={s} < 2 for n={n}, k={k}")));
        }
        let mut next = s;
        let mut groups = vec![Vec::new()];
        for i in 0..s {
            let mut g = vec![i];
            g.extend(next..next + (k - 2));
            next += k - 2;
            groups.push(g);
        }
        let remainder = n - next;
        let first = remainder.div_ceil(2);
        groups[0] = (next..next + first).collect();
        groups.push((next + first..n).collect());
        Self::new(n, k, groups)
    }

    pub fn s(&self) -> usize {
        self.groups.len() - 2
    }

    /// `v_1, ..., v_s`
    pub fn spine(&self) -> BTreeSet<usize> {
        self.groups[1..=self.s()].iter().map(|g| g[0]).collect()
    }

    pub fn first(&self) -> usize {
        self.groups[1][0]
    }

    pub fn last(&self) -> usize {
        self.groups[self.s()][0]
    }

    fn fixed_edges(&self) -> Vec<usize> {
        let n = self.n;
        let s = self.s();
        let mut e = Vec::new();
        for g in &self.groups[1..=s] {
            e.extend(g[1..].iter().map(|&v| edge_index(v, g[0], n)));
        }
        for (end, anchor) in [(0, self.first()), (s + 1, self.last())] {
            let g = &self.groups[end];
            e.push(edge_index(g[0], anchor, n));
            e.extend(g[1..].iter().map(|&v| edge_index(v, g[0], n)));
        }
        e
    }

    fn hp(&self) -> Result<VertexSet> {
        hp_vertex_set(self.n, &self.spine(), self.first(), self.last())
    }
}

impl fmt::Display for DegreeFamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dc-family(n={},k={},s={},groups={:?})", self.n, self.k, self.s(), self.groups)
    }
}

/// The degree family's trees, one per spine path from `v_1` to `v_s`.
pub fn dc_trees(spec: &DegreeFamilySpec) -> Result<Vec<SpanningTree>> {
    hamiltonian_paths(&spec.spine(), spec.first(), spec.last())?
        .iter()
        .map(|p| dc_lift(p, spec))
        .collect()
}

pub fn dc_family(spec: &DegreeFamilySpec) -> Result<VertexSet> {
    let trees = dc_trees(spec)?;
    VertexSet::from_trees(spec.n, Family::Construction { name: spec.to_string() }, &trees)
}

/// Drops the end groups and the spine leaves; what remains must be a
/// Hamiltonian path on the spine from `v_1` to `v_s`.
pub fn dc_project(t: &SpanningTree, spec: &DegreeFamilySpec) -> Result<HamiltonianPath> {
    if t.n() != spec.n {
        return Err(Error::contract(format!("tree on {} vertices, family on {}", t.n(), spec.n)));
    }
    let fixed = spec.fixed_edges();
    if let Some(&e) = fixed.iter().find(|&&e| t.edges().binary_search(&e).is_err()) {
        let (a, b) = edge_endpoints(e, spec.n);
        return Err(Error::contract(format!("tree {t} lacks family edge ({a},{b})")));
    }
    let rest: Vec<usize> = t.edges().iter().copied().filter(|e| !fixed.contains(e)).collect();
    let seq = trace_path(spec.n, &rest, &spec.spine(), spec.first())
        .filter(|s| *s.last().expect("non-empty") == spec.last())
        .ok_or_else(|| {
            Error::contract(format!(
                "tree {t} does not reduce to a Hamiltonian {}-{} spine path",
                spec.first(),
                spec.last()
            ))
        })?;
    HamiltonianPath::new(seq)
}

pub fn dc_lift(p: &HamiltonianPath, spec: &DegreeFamilySpec) -> Result<SpanningTree> {
    if p.ground() != spec.spine() {
        return Err(Error::arg(format!("path {p} is not on the spine {:?}", spec.spine())));
    }
    let (a, b) = p.endpoints();
    if !((a, b) == (spec.first(), spec.last()) || (b, a) == (spec.first(), spec.last())) {
        return Err(Error::arg(format!("path {p} does not run between {} and {}", spec.first(), spec.last())));
    }
    SpanningTree::new(spec.n, join_edges(&p.edges(spec.n), &spec.fixed_edges()))
}

/// A pair whose adjacency differs between the two polytopes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferCounterexample {
    pub trees: (String, String),
    pub paths: (String, String),
    pub adjacent_in_constrained: bool,
    pub adjacent_in_hp: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TransferReport {
    pub lemma: String,
    pub params: serde_json::Value,
    pub family_size: usize,
    pub constrained_vertices: usize,
    pub hp_vertices: usize,
    pub pairs_checked: usize,
    pub adjacent_pairs: usize,
    pub counterexamples: Vec<TransferCounterexample>,
    pub wall_time_ms: u128,
}

impl TransferReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect()
}

fn map_pairs<T: Send>(m: usize, f: impl Fn(usize, usize) -> T + Sync + Send) -> Vec<T> {
    let ps = pairs(m);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        ps.into_par_iter().map(|(a, b)| f(a, b)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        ps.into_iter().map(|(a, b)| f(a, b)).collect()
    }
}

fn adjacent_within(x: &CharVector, y: &CharVector, ambient: &VertexSet) -> bool {
    segment_is_edge(x, y, ambient.vectors().iter().filter(|z| *z != x && *z != y))
}

/// For every pair of family trees, compares adjacency in `constrained` (the full
/// constrained polytope, which must contain the family) with adjacency of the
/// projected paths in `hp` (the full Hamiltonian path polytope).
pub fn verify_adjacency_transfer(
    lemma: &str,
    params: serde_json::Value,
    family: &[SpanningTree],
    projected: &[HamiltonianPath],
    constrained: &VertexSet,
    hp: &VertexSet,
) -> Result<TransferReport> {
    let started = Instant::now();
    if family.len() != projected.len() {
        return Err(Error::arg("family and projection differ in size"));
    }
    let n = constrained.n();
    let tree_vecs: Vec<CharVector> = family.iter().map(char_vector).collect();
    let path_vecs: Vec<CharVector> = projected.iter().map(|p| p.char_vector(n)).collect();
    if let Some(t) = tree_vecs.iter().position(|v| constrained.position(v).is_none()) {
        return Err(Error::arg(format!("family tree {} is not a vertex of the constrained polytope", family[t])));
    }
    if let Some(p) = path_vecs.iter().position(|v| hp.position(v).is_none()) {
        return Err(Error::arg(format!("path {} is not a vertex of the path polytope", projected[p])));
    }
    let results = map_pairs(family.len(), |a, b| {
        (
            adjacent_within(&tree_vecs[a], &tree_vecs[b], constrained),
            adjacent_within(&path_vecs[a], &path_vecs[b], hp),
        )
    });
    let mut counterexamples = Vec::new();
    let mut adjacent_pairs = 0;
    for ((a, b), (tree_adj, path_adj)) in pairs(family.len()).into_iter().zip(&results) {
        if *tree_adj && *path_adj {
            adjacent_pairs += 1;
        }
        if tree_adj != path_adj {
            counterexamples.push(TransferCounterexample {
                trees: (family[a].to_string(), family[b].to_string()),
                paths: (projected[a].to_string(), projected[b].to_string()),
                adjacent_in_constrained: *tree_adj,
                adjacent_in_hp: *path_adj,
            });
        }
    }
    Ok(TransferReport {
        lemma: lemma.to_string(),
        params,
        family_size: family.len(),
        constrained_vertices: constrained.len(),
        hp_vertices: hp.len(),
        pairs_checked: results.len(),
        adjacent_pairs,
        counterexamples,
        wall_time_ms: started.elapsed().as_millis(),
    })
}

/// Adjacency transfer for the leaf family against the full `LCMST_{n,k}` polytope.
pub fn verify_lc_transfer(spec: &LeafFamilySpec, max_n: usize) -> Result<TransferReport> {
    let trees = lc_trees(spec)?;
    let projected = trees.iter().map(|t| lc_project(t, spec)).collect::<Result<Vec<_>>>()?;
    let constrained = VertexSet::for_family(spec.n, Family::Lcmst { k: spec.k() }, max_n)?;
    verify_adjacency_transfer(
        "lc-adjacency",
        serde_json::to_value(spec).expect("spec serializes"),
        &trees,
        &projected,
        &constrained,
        &spec.hp()?,
    )
}

/// Adjacency transfer for the degree family against the full `DCMST_{n,k}` polytope.
pub fn verify_dc_transfer(spec: &DegreeFamilySpec, max_n: usize) -> Result<TransferReport> {
    let trees = dc_trees(spec)?;
    let projected = trees.iter().map(|t| dc_project(t, spec)).collect::<Result<Vec<_>>>()?;
    let constrained = VertexSet::for_family(spec.n, Family::Dcmst { k: spec.k }, max_n)?;
    verify_adjacency_transfer(
        "dc-adjacency",
        serde_json::to_value(spec).expect("spec serializes"),
        &trees,
        &projected,
        &constrained,
        &spec.hp()?,
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct MergeCounterexample {
    pub paths: (String, String),
    pub cycles: (String, String),
    pub adjacent_in_hp: bool,
    pub adjacent_in_tsp: bool,
}

/// Raw agreement data between path adjacency and merged-cycle adjacency.
#[derive(Debug, Clone, Serialize)]
pub struct MergeReport {
    pub lemma: String,
    pub ground: Vec<usize>,
    pub u: usize,
    pub w: usize,
    pub paths: usize,
    pub cycles: usize,
    pub pairs_checked: usize,
    /// Pairs of paths that merge into the same cycle; nothing to compare.
    pub same_cycle_pairs: usize,
    pub agreeing_pairs: usize,
    pub counterexamples: Vec<MergeCounterexample>,
    pub wall_time_ms: u128,
}

impl MergeReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Merges `w` into `u`: each `u`–`w` path becomes a Hamiltonian cycle on
/// `ground ∖ {w}`. Compares adjacency of every path pair in the path polytope
/// with adjacency of the image cycles in the TSP polytope on `ground ∖ {w}`.
pub fn verify_hp_tsp_merge(n: usize, ground: &BTreeSet<usize>, u: usize, w: usize) -> Result<MergeReport> {
    let started = Instant::now();
    let hp = hp_vertex_set(n, ground, u, w)?;
    let paths = hamiltonian_paths(ground, u, w)?;
    let mut report = MergeReport {
        lemma: "hp-tsp-merge".into(),
        ground: ground.iter().copied().collect(),
        u,
        w,
        paths: paths.len(),
        cycles: 0,
        pairs_checked: 0,
        same_cycle_pairs: 0,
        agreeing_pairs: 0,
        counterexamples: Vec::new(),
        wall_time_ms: 0,
    };
    let merged_ground: BTreeSet<usize> = ground.iter().copied().filter(|&v| v != w).collect();
    if merged_ground.len() < 3 {
        report.wall_time_ms = started.elapsed().as_millis();
        return Ok(report);
    }
    let cycles = hamiltonian_cycles(&merged_ground)?;
    let tsp = tsp_vertex_set(n, &merged_ground)?;
    report.cycles = tsp.len();
    let image: Vec<usize> = paths
        .iter()
        .map(|p| {
            let seq: Vec<usize> = p.vertices()[..p.vertices().len() - 1].to_vec();
            let v = CharVector::from_support(num_edges(n), &cycle_edges(&seq, n));
            tsp.position(&v).expect("merged path is a Hamiltonian cycle")
        })
        .collect();
    let outcomes = map_pairs(paths.len(), |a, b| {
        if image[a] == image[b] {
            return None;
        }
        let hp_adj = adjacent_within(&hp.vectors()[a], &hp.vectors()[b], &hp);
        let tsp_adj = adjacent_within(&tsp.vectors()[image[a]], &tsp.vectors()[image[b]], &tsp);
        Some((hp_adj, tsp_adj))
    });
    let cycle_label = |c: usize| {
        let parts: Vec<String> = cycles[c].iter().map(|v| v.to_string()).collect();
        parts.join("-")
    };
    for ((a, b), outcome) in pairs(paths.len()).into_iter().zip(outcomes) {
        report.pairs_checked += 1;
        match outcome {
            None => report.same_cycle_pairs += 1,
            Some((h, t)) if h == t => report.agreeing_pairs += 1,
            Some((h, t)) => report.counterexamples.push(MergeCounterexample {
                paths: (paths[a].to_string(), paths[b].to_string()),
                cycles: (cycle_label(image[a]), cycle_label(image[b])),
                adjacent_in_hp: h,
                adjacent_in_tsp: t,
            }),
        }
    }
    report.wall_time_ms = started.elapsed().as_millis();
    Ok(report)
}

/// Which clique number lower bound to evaluate, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "theorem", rename_all = "lowercase")]
pub enum BoundTheorem {
    /// argument `n - k - 1`
    Lcmst { n: usize, k: usize },
    /// argument `|U| - k - 1`
    Rlsmst { subset_size: usize, k: usize },
    /// argument `n - |U| - 1`
    Svmst { n: usize, subset_size: usize },
    /// argument `s - 1`, `s = ⌊(n-2)/(k-1)⌋`
    Dcmst { n: usize, k: usize },
    /// argument `n`
    Tsp { n: usize },
}

/// `2^((√⌊m/2⌋ - 9)/2)`, kept exact where possible.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliqueBound {
    pub theorem: BoundTheorem,
    pub m: usize,
    pub half: usize,
    /// `√half` when `half` is a perfect square.
    pub sqrt_half: Option<usize>,
    /// Base-2 exponent, e.g. `1/2` or `(sqrt(7) - 9)/2`.
    pub exponent: String,
    pub value: f64,
    /// The bound is below 1 and says nothing.
    pub vacuous: bool,
}

impl CliqueBound {
    /// True when a clique of size `c` does not contradict the bound, i.e. `c >= bound`.
    pub fn is_at_most(&self, c: usize) -> bool {
        if self.vacuous {
            return c >= 1;
        }
        if let Some(r) = self.sqrt_half {
            // 2^((r-9)/2) <= c  <=>  2^(r-9) <= c^2
            let e = (r - 9) as u32;
            let lhs = num_bigint::BigUint::from(2u8).pow(e);
            return lhs <= num_bigint::BigUint::from(c).pow(2);
        }
        self.value <= c as f64
    }

    pub fn render(&self) -> String {
        format!("2^({}) = {:.6}", self.exponent, self.value)
    }
}

fn isqrt(x: usize) -> usize {
    let mut r = (x as f64).sqrt() as usize;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

pub fn clique_bound(theorem: BoundTheorem) -> Result<CliqueBound> {
    let m = match theorem {
        BoundTheorem::Lcmst { n, k } => {
            if k == 0 || k >= n {
                return Err(Error::arg(format!("need 0 < k < n, got n={n}, k={k}")));
            }
            n - k - 1
        }
        BoundTheorem::Rlsmst { subset_size, k } => {
            if k == 0 || k >= subset_size {
                return Err(Error::arg(format!("need 0 < k < |U|, got |U|={subset_size}, k={k}")));
            }
            subset_size - k - 1
        }
        BoundTheorem::Svmst { n, subset_size } => {
            if subset_size >= n {
                return Err(Error::arg(format!("need |U| < n, got n={n}, |U|={subset_size}")));
            }
            n - subset_size - 1
        }
        BoundTheorem::Dcmst { n, k } => {
            let s = spine_length(n, k)?;
            if s == 0 {
                return Err(Error::arg(format!("s = 0 for n={n}, k={k}")));
            }
            s - 1
        }
        BoundTheorem::Tsp { n } => {
            if n < 3 {
                return Err(Error::arg(format!("need n >= 3, got {n}")));
            }
            n
        }
    };
    let half = m / 2;
    let r = isqrt(half);
    let sqrt_half = (r * r == half).then_some(r);
    let exponent = match sqrt_half {
        Some(r) => {
            let num = r as i64 - 9;
            if num % 2 == 0 {
                (num / 2).to_string()
            } else {
                format!("{num}/2")
            }
        }
        None => format!("(sqrt({half}) - 9)/2"),
    };
    let value = 2f64.powf(((half as f64).sqrt() - 9.0) / 2.0);
    Ok(CliqueBound {
        theorem,
        m,
        half,
        sqrt_half,
        exponent,
        value,
        vacuous: half < 81,
    })
}

/// Which special family a lifted clique check runs on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LiftSpec {
    Leaf(LeafFamilySpec),
    Degree(DegreeFamilySpec),
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftReport {
    pub spec: LiftSpec,
    pub hp_vertices: usize,
    pub hp_clique: CliqueResult,
    pub lifted: Vec<String>,
    pub constrained_vertices: usize,
    pub pairs_certified: usize,
    /// Every lifted pair is adjacent in the constrained skeleton.
    pub certified: bool,
    pub bound: CliqueBound,
    pub bound_respected: bool,
    pub wall_time_ms: u128,
}

/// Finds a maximum clique of the path polytope's skeleton, lifts it into the
/// constrained polytope and certifies every lifted pair by the separation LP.
pub fn lifted_clique_check(spec: &LiftSpec, max_n: usize, pair_budget: usize) -> Result<LiftReport> {
    let started = Instant::now();
    let (hp, constrained, bound) = match spec {
        LiftSpec::Leaf(s) => (
            s.hp()?,
            VertexSet::for_family(s.n, Family::Lcmst { k: s.k() }, max_n)?,
            clique_bound(BoundTheorem::Lcmst { n: s.n, k: s.k() })?,
        ),
        LiftSpec::Degree(s) => (
            s.hp()?,
            VertexSet::for_family(s.n, Family::Dcmst { k: s.k }, max_n)?,
            clique_bound(BoundTheorem::Dcmst { n: s.n, k: s.k })?,
        ),
    };
    let (ground, u, w) = match hp.family() {
        Family::Hp { ground, u, w } => (ground.clone(), *u, *w),
        _ => unreachable!("hp vertex set"),
    };
    let paths = hamiltonian_paths(&ground, u, w)?;
    let skeleton = build_skeleton(&hp, AdjacencyOracle::Lp, pair_budget)?;
    let hp_clique = clique_number(&skeleton);
    let lifted: Vec<SpanningTree> = hp_clique
        .witness
        .iter()
        .map(|&i| match spec {
            LiftSpec::Leaf(s) => lc_lift(&paths[i], s),
            LiftSpec::Degree(s) => dc_lift(&paths[i], s),
        })
        .collect::<Result<_>>()?;
    let vecs: Vec<CharVector> = lifted.iter().map(char_vector).collect();
    let verdicts = map_pairs(vecs.len(), |a, b| adjacent_within(&vecs[a], &vecs[b], &constrained));
    let certified = verdicts.iter().all(|&v| v);
    let size = if certified { lifted.len() } else { 0 };
    Ok(LiftReport {
        spec: spec.clone(),
        hp_vertices: hp.len(),
        bound_respected: bound.is_at_most(size),
        hp_clique,
        lifted: lifted.iter().map(|t| t.to_string()).collect(),
        constrained_vertices: constrained.len(),
        pairs_certified: verdicts.len(),
        certified,
        bound,
        wall_time_ms: started.elapsed().as_millis(),
    })
}

/// Every leaf family specification on `n` vertices: ordered hubs and every
/// assignment of the other vertices to inner / `V_u` / `V_w` with both leaf
/// sides non-empty.
pub fn all_leaf_specs(n: usize) -> Vec<LeafFamilySpec> {
    let mut out = Vec::new();
    for u in 0..n {
        for w in (0..n).filter(|&w| w != u) {
            let rest: Vec<usize> = (0..n).filter(|&v| v != u && v != w).collect();
            let total = 3usize.pow(rest.len() as u32);
            for code in 0..total {
                let (mut v_u, mut v_w) = (Vec::new(), Vec::new());
                let mut c = code;
                for &v in &rest {
                    match c % 3 {
                        1 => v_u.push(v),
                        2 => v_w.push(v),
                        _ => {}
                    }
                    c /= 3;
                }
                if let Ok(spec) = LeafFamilySpec::new(n, u, w, v_u, v_w) {
                    out.push(spec);
                }
            }
        }
    }
    out
}

/// Every degree family specification on `n` vertices for degree bound `k`
/// (empty when the spine would be shorter than 2).
pub fn all_degree_specs(n: usize, k: usize) -> Vec<DegreeFamilySpec> {
    let Ok(s) = spine_length(n, k) else {
        return Vec::new();
    };
    if s < 2 {
        return Vec::new();
    }
    let remainder = n - s * (k - 1);
    let mut seen: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        for first in 1..remainder {
            let mut groups = vec![perm[..first].to_vec()];
            let mut at = first;
            for _ in 0..s {
                groups.push(perm[at..at + k - 1].to_vec());
                at += k - 1;
            }
            groups.push(perm[at..].to_vec());
            for g in groups.iter_mut() {
                g[1..].sort_unstable();
            }
            seen.insert(groups);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    seen.into_iter().filter_map(|g| DegreeFamilySpec::new(n, k, g).ok()).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ProjectionReport {
    pub lemma: String,
    pub params: serde_json::Value,
    pub specs_checked: usize,
    pub members_checked: usize,
    pub counterexamples: Vec<String>,
    pub wall_time_ms: u128,
}

impl ProjectionReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn check_cap(n: usize, max_n: usize) -> Result<()> {
    if n > max_n {
        return Err(Error::ResourceLimit {
            what: "vertices for exhaustive family specs",
            requested: n,
            cap: max_n,
        });
    }
    Ok(())
}

/// For every leaf family spec on `n` vertices (optionally only those with `k`
/// leaves): each member projects to a `u`–`w` Hamiltonian path on `V ∖ V_uw`,
/// lifts back to itself and has exactly `k` leaves.
pub fn verify_lc_projection(n: usize, k: Option<usize>, max_n: usize) -> Result<ProjectionReport> {
    check_cap(n, max_n)?;
    let started = Instant::now();
    let mut report = ProjectionReport {
        lemma: "lc-projection".into(),
        params: serde_json::json!({ "n": n, "k": k }),
        specs_checked: 0,
        members_checked: 0,
        counterexamples: Vec::new(),
        wall_time_ms: 0,
    };
    for spec in all_leaf_specs(n).into_iter().filter(|s| k.is_none_or(|k| s.k() == k)) {
        report.specs_checked += 1;
        for t in lc_trees(&spec)? {
            report.members_checked += 1;
            let ok = lc_project(&t, &spec).is_ok_and(|p| {
                p.endpoints() == (spec.u, spec.w) && lc_lift(&p, &spec).as_ref() == Ok(&t) && t.leaf_count() == spec.k()
            });
            if !ok {
                report.counterexamples.push(format!("{spec}: {t}"));
            }
        }
    }
    report.wall_time_ms = started.elapsed().as_millis();
    Ok(report)
}

/// For every degree family spec on `n` vertices with bound `k`: each member
/// projects to a spine path from `v_1` to `v_s`, lifts back to itself and
/// has maximum degree at most `k`.
pub fn verify_dc_projection(n: usize, k: usize, max_n: usize) -> Result<ProjectionReport> {
    check_cap(n, max_n)?;
    spine_length(n, k)?;
    let started = Instant::now();
    let mut report = ProjectionReport {
        lemma: "dc-projection".into(),
        params: serde_json::json!({ "n": n, "k": k }),
        specs_checked: 0,
        members_checked: 0,
        counterexamples: Vec::new(),
        wall_time_ms: 0,
    };
    for spec in all_degree_specs(n, k) {
        report.specs_checked += 1;
        for t in dc_trees(&spec)? {
            report.members_checked += 1;
            let ok = dc_project(&t, &spec).is_ok_and(|p| {
                p.endpoints() == (spec.first(), spec.last())
                    && dc_lift(&p, &spec).as_ref() == Ok(&t)
                    && t.max_degree() <= k
            });
            if !ok {
                report.counterexamples.push(format!("{spec}: {t}"));
            }
        }
    }
    report.wall_time_ms = started.elapsed().as_millis();
    Ok(report)
}

/// Spanning trees whose leaves are exactly `V_uw` with the prescribed pendant
/// edges, found by filtering all trees rather than by construction.
pub fn lc_family_by_filter(spec: &LeafFamilySpec, max_n: usize) -> Result<Vec<SpanningTree>> {
    let all = enumerate_spanning_trees(spec.n, max_n)?;
    let pendant = spec.pendant_edges();
    let leaves = spec.leaves();
    let trees = filter_family(spec.n, &all, &Constraint::LeafMax(spec.k()))?;
    Ok(trees
        .into_iter()
        .filter(|t| t.leaves() == leaves && pendant.iter().all(|e| t.edges().binary_search(e).is_ok()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn path_counts() {
        assert_eq!(hamiltonian_paths(&set(&[0, 1, 2]), 0, 2).unwrap().len(), 1);
        assert_eq!(hamiltonian_paths(&set(&[0, 1, 2, 3, 4]), 0, 4).unwrap().len(), 6);
        let single = hamiltonian_paths(&set(&[3, 5]), 3, 5).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].edges(6), vec![edge_index(3, 5, 6)]);
        assert!(hamiltonian_paths(&set(&[0, 1]), 0, 0).is_err());
        assert_eq!(hp_vertex_set(6, &set(&[0, 1, 2, 3, 4]), 1, 3).unwrap().len(), 6);
    }

    #[test]
    fn cycle_counts() {
        assert_eq!(hamiltonian_cycles(&set(&[0, 1, 2])).unwrap().len(), 1);
        assert_eq!(hamiltonian_cycles(&set(&[0, 1, 2, 3])).unwrap().len(), 3);
        assert_eq!(hamiltonian_cycles(&set(&[0, 1, 2, 3, 4])).unwrap().len(), 12);
    }

    #[test]
    fn leaf_family_examples() {
        let spec = LeafFamilySpec::new(5, 0, 2, vec![3], vec![4]).unwrap();
        let trees = lc_trees(&spec).unwrap();
        assert_eq!(trees, vec![SpanningTree::from_pairs(5, &[(0, 1), (1, 2), (0, 3), (2, 4)]).unwrap()]);
        let p = lc_project(&trees[0], &spec).unwrap();
        assert_eq!(p.vertices(), &[0, 1, 2]);
        assert_eq!(lc_lift(&p, &spec).unwrap(), trees[0]);

        let spec6 = LeafFamilySpec::standard(6, 2, 1).unwrap();
        assert_eq!(spec6.path_ground(), set(&[0, 1, 2, 3]));
        let trees6 = lc_trees(&spec6).unwrap();
        assert_eq!(trees6.len(), 2);
        let paths: Vec<Vec<usize>> = trees6.iter().map(|t| lc_project(t, &spec6).unwrap().vertices().to_vec()).collect();
        assert_eq!(paths, vec![vec![0, 2, 3, 1], vec![0, 3, 2, 1]]);

        let spec63 = LeafFamilySpec::standard(6, 3, 2).unwrap();
        assert_eq!(lc_trees(&spec63).unwrap().len(), 1);
    }

    #[test]
    fn leaf_family_invalid_specs() {
        assert!(LeafFamilySpec::new(5, 0, 0, vec![3], vec![4]).is_err());
        assert!(LeafFamilySpec::new(5, 0, 1, vec![1], vec![4]).is_err());
        assert!(LeafFamilySpec::new(5, 0, 1, vec![], vec![4]).is_err());
        assert!(LeafFamilySpec::new(5, 0, 1, vec![7], vec![4]).is_err());
        assert!(LeafFamilySpec::standard(4, 3, 1).is_err());
    }

    #[test]
    fn adjacent_hubs() {
        // n = k + 2: the path is the single edge u-w
        let spec = LeafFamilySpec::standard(5, 3, 1).unwrap();
        let trees = lc_trees(&spec).unwrap();
        assert_eq!(trees.len(), 1);
        assert!(trees[0].contains(0, 1));
        assert_eq!(trees[0].leaf_count(), 3);
    }

    #[test]
    fn projection_rejects_outsiders() {
        let spec = LeafFamilySpec::standard(6, 2, 1).unwrap();
        let star = SpanningTree::from_pairs(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        assert!(matches!(lc_project(&star, &spec), Err(Error::ContractViolation(_))));
        let wrong = HamiltonianPath::new(vec![0, 2, 1]).unwrap();
        assert!(lc_lift(&wrong, &spec).is_err());
    }

    #[test]
    fn degree_family_examples() {
        let spec = DegreeFamilySpec::standard(6, 3).unwrap();
        assert_eq!(spec.s(), 2);
        assert_eq!(spec.groups, vec![vec![4], vec![0, 2], vec![1, 3], vec![5]]);
        let trees = dc_trees(&spec).unwrap();
        assert_eq!(trees.len(), 1);
        assert_eq!(
            trees[0],
            SpanningTree::from_pairs(6, &[(0, 1), (0, 2), (1, 3), (0, 4), (1, 5)]).unwrap()
        );
        assert_eq!(trees[0].max_degree(), 3);
        assert_eq!(dc_project(&trees[0], &spec).unwrap().vertices(), &[0, 1]);

        assert_eq!(spine_length(10, 3).unwrap(), 4);
        let spec11 = DegreeFamilySpec::standard(11, 4).unwrap();
        assert_eq!(spec11.s(), 3);
        for t in dc_trees(&spec11).unwrap() {
            assert_eq!(dc_project(&t, &spec11).unwrap().vertices().len(), 3);
            assert!(t.max_degree() <= 4);
        }
        assert!(DegreeFamilySpec::standard(5, 3).is_err());
    }

    #[test]
    fn degree_family_invalid_partitions() {
        assert!(DegreeFamilySpec::new(6, 3, vec![vec![4], vec![0, 2], vec![1, 3]]).is_err());
        assert!(DegreeFamilySpec::new(6, 3, vec![vec![4], vec![0, 2], vec![1, 3], vec![4]]).is_err());
        assert!(DegreeFamilySpec::new(6, 3, vec![vec![], vec![0, 2], vec![1, 3], vec![4, 5]]).is_err());
        assert!(DegreeFamilySpec::new(6, 3, vec![vec![4], vec![0, 2, 5], vec![1, 3], vec![]]).is_err());
    }

    #[test]
    fn spec_enumeration_counts() {
        // ordered hubs, 2 other vertices split one per side
        assert_eq!(all_leaf_specs(4).len(), 12 * 2);
        // n = 6, k = 3: s = 2, groups of 2, one vertex at each end
        assert_eq!(all_degree_specs(6, 3).len(), 6 * 5 * 4 * 3 * 2);
        assert!(all_degree_specs(5, 3).is_empty());
    }

    #[test]
    fn projection_reports() {
        let lc = verify_lc_projection(5, None, 8).unwrap();
        assert!(lc.passed());
        assert_eq!(lc.specs_checked, all_leaf_specs(5).len());
        let dc = verify_dc_projection(6, 2, 8).unwrap();
        assert!(dc.passed());
        assert_eq!(dc.members_checked, dc.specs_checked * 2);
        assert!(matches!(verify_lc_projection(9, None, 8), Err(Error::ResourceLimit { .. })));
        assert_eq!(tsp_vertex_set(5, &set(&[0, 1, 2, 3, 4])).unwrap().len(), 12);
    }

    #[test]
    fn bounds() {
        let tsp = clique_bound(BoundTheorem::Tsp { n: 242 }).unwrap();
        assert_eq!((tsp.half, tsp.sqrt_half, tsp.exponent.as_str()), (121, Some(11), "1"));
        assert_eq!(tsp.value, 2.0);
        assert!(!tsp.vacuous);

        let lc = clique_bound(BoundTheorem::Lcmst { n: 206, k: 5 }).unwrap();
        assert_eq!((lc.m, lc.exponent.as_str()), (200, "1/2"));
        assert!((lc.value - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(!lc.is_at_most(1));
        assert!(lc.is_at_most(2));

        let dc = clique_bound(BoundTheorem::Dcmst { n: 3, k: 2 }).unwrap();
        assert_eq!((dc.m, dc.half, dc.exponent.as_str()), (0, 0, "-9/2"));
        assert!(dc.vacuous && dc.value < 1.0);

        let odd = clique_bound(BoundTheorem::Svmst { n: 20, subset_size: 4 }).unwrap();
        assert_eq!(odd.exponent, "(sqrt(7) - 9)/2");

        assert!(clique_bound(BoundTheorem::Lcmst { n: 5, k: 5 }).is_err());
        assert!(clique_bound(BoundTheorem::Rlsmst { subset_size: 3, k: 3 }).is_err());
        assert!(clique_bound(BoundTheorem::Svmst { n: 4, subset_size: 4 }).is_err());
        assert!(clique_bound(BoundTheorem::Dcmst { n: 4, k: 4 }).is_err());
        assert!(clique_bound(BoundTheorem::Tsp { n: 2 }).is_err());
    }

    #[test]
    fn small_transfer() {
        let r = verify_lc_transfer(&LeafFamilySpec::standard(6, 2, 1).unwrap(), 8).unwrap();
        assert_eq!(r.pairs_checked, 1);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn merge_report_small() {
        let r = verify_hp_tsp_merge(4, &set(&[0, 1, 2, 3]), 0, 3).unwrap();
        assert_eq!((r.paths, r.cycles, r.pairs_checked, r.same_cycle_pairs), (2, 1, 1, 1));
        assert!(r.passed());
        let trivial = verify_hp_tsp_merge(3, &set(&[0, 1, 2]), 0, 2).unwrap();
        assert_eq!((trivial.paths, trivial.pairs_checked), (1, 0));
    }
}
