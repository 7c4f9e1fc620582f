//! Characteristic vectors, the spanning tree polytope's H-representation, and
//! 1-skeletons decided by exact linear programming.
//!
//! Two vertices `x`, `y` of `P = conv X` are adjacent exactly when no convex
//! combination of them equals a convex combination of the other vertices.
//! [`adjacent`] decides that system with the exact LP engine: feasible means
//! nonadjacent.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::clique::{bit_get, bit_set, bits_new, Bits, CliqueResult};
use crate::error::{Error, Result};
use crate::graph::{edge_endpoints, edge_label, enumerate_spanning_trees, num_edges, Constraint, SpanningTree};
use crate::lp::LpProblem;
use crate::Rational;

/// Default cap on the number of vertex pairs `build_skeleton` will test.
pub const DEFAULT_PAIR_BUDGET: usize = 1_000_000;

/// Largest `n` for which [`integral_hull_check`] scans all candidate vectors.
pub const HULL_CHECK_MAX_N: usize = 5;

/// 0/1 incidence vector over the edge coordinates of `K_n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CharVector {
    len: usize,
    words: Vec<u64>,
}

impl CharVector {
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut words = bits_new(len);
        for &e in support {
            assert!(e < len, "coordinate {e} out of range {len}");
            bit_set(&mut words, e);
        }
        CharVector { len, words }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, idx: usize) -> bool {
        bit_get(&self.words, idx)
    }

    pub fn coords(&self) -> Vec<u8> {
        (0..self.len).map(|i| u8::from(self.get(i))).collect()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    pub fn popcount(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        (0..self.len)
            .map(|i| if self.get(i) { Rational::one() } else { Rational::zero() })
            .collect()
    }

    fn is_subset_of(&self, other: &Bits) -> bool {
        self.words.iter().zip(other).all(|(a, b)| a & !b == 0)
    }

    fn is_superset_of(&self, other: &Bits) -> bool {
        self.words.iter().zip(other).all(|(a, b)| b & !a == 0)
    }

    pub fn symmetric_difference(&self, other: &CharVector) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }
}

pub fn char_vector(t: &SpanningTree) -> CharVector {
    CharVector::from_support(num_edges(t.n()), t.edges())
}

/// Which polytope a vertex set spans.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    Mst,
    Lcmst { k: usize },
    Rlsmst { subset: BTreeSet<usize>, k: usize },
    Svmst { subset: BTreeSet<usize> },
    Dcmst { k: usize },
    /// Hamiltonian paths on `ground` between `u` and `w`.
    Hp { u: usize, w: usize, ground: BTreeSet<usize> },
    /// Hamiltonian cycles on `ground`.
    Tsp { ground: BTreeSet<usize> },
    /// A special subfamily of one of the constrained polytopes.
    Construction { name: String },
}

impl Family {
    /// The side constraint that cuts this family out of all spanning trees.
    pub fn constraint(&self) -> Option<Constraint> {
        match self {
            Family::Lcmst { k } => Some(Constraint::LeafMax(*k)),
            Family::Rlsmst { subset, k } => Some(Constraint::LeafMaxInSubset {
                subset: subset.clone(),
                k: *k,
            }),
            Family::Svmst { subset } => Some(Constraint::LeavesOnlyIn(subset.clone())),
            Family::Dcmst { k } => Some(Constraint::DegreeMax(*k)),
            _ => None,
        }
    }

    pub fn k(&self) -> Option<usize> {
        match self {
            Family::Lcmst { k } | Family::Rlsmst { k, .. } | Family::Dcmst { k } => Some(*k),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Mst => "mst",
            Family::Lcmst { .. } => "lcmst",
            Family::Rlsmst { .. } => "rlsmst",
            Family::Svmst { .. } => "svmst",
            Family::Dcmst { .. } => "dcmst",
            Family::Hp { .. } => "hp",
            Family::Tsp { .. } => "tsp",
            Family::Construction { .. } => "construction",
        }
    }
}

fn fmt_set(s: &BTreeSet<usize>) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Mst => write!(f, "mst"),
            Family::Lcmst { k } => write!(f, "lcmst(k={k})"),
            Family::Rlsmst { subset, k } => write!(f, "rlsmst(U={{{}}},k={k})", fmt_set(subset)),
            Family::Svmst { subset } => write!(f, "svmst(U={{{}}})", fmt_set(subset)),
            Family::Dcmst { k } => write!(f, "dcmst(k={k})"),
            Family::Hp { u, w, ground } => write!(f, "hp(u={u},w={w},V={{{}}})", fmt_set(ground)),
            Family::Tsp { ground } => write!(f, "tsp(V={{{}}})", fmt_set(ground)),
            Family::Construction { name } => write!(f, "{name}"),
        }
    }
}

/// The vertex set of a 0/1 polytope, in a fixed order.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexSet {
    n: usize,
    family: Family,
    vectors: Vec<CharVector>,
}

impl VertexSet {
    pub fn new(n: usize, family: Family, vectors: Vec<CharVector>) -> Result<Self> {
        let d = num_edges(n);
        if let Some(v) = vectors.iter().find(|v| v.len() != d) {
            return Err(Error::arg(format!("vector of length {} in K_{n} edge space ({d})", v.len())));
        }
        let distinct: BTreeSet<&CharVector> = vectors.iter().collect();
        if distinct.len() != vectors.len() {
            return Err(Error::arg("duplicate vertex in vertex set"));
        }
        Ok(VertexSet { n, family, vectors })
    }

    pub fn from_trees(n: usize, family: Family, trees: &[SpanningTree]) -> Result<Self> {
        Self::new(n, family, trees.iter().map(char_vector).collect())
    }

    /// Enumerates all spanning trees of `K_n` and keeps those in `family`
    /// (one of the tree families; HP/TSP sets come from `constructions`).
    pub fn for_family(n: usize, family: Family, max_n: usize) -> Result<Self> {
        let trees = enumerate_spanning_trees(n, max_n)?;
        let trees = match &family {
            Family::Mst => trees,
            f => {
                let c = f.constraint().ok_or_else(|| {
                    Error::arg(format!("{f} is not a spanning tree family"))
                })?;
                crate::graph::filter_family(n, &trees, &c)?
            }
        };
        Self::from_trees(n, family, &trees)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn vectors(&self) -> &[CharVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn position(&self, v: &CharVector) -> Option<usize> {
        self.vectors.iter().position(|x| x == v)
    }

    /// `01,12,23` style label of vertex `i`.
    pub fn label(&self, i: usize) -> String {
        edge_label(&self.vectors[i].support(), self.n)
    }
}

/// A constraint of the spanning tree polytope's H-representation that a point violates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "constraint", rename_all = "snake_case")]
pub enum HrepViolation {
    /// `Σ x_e = n - 1` fails.
    Cardinality { sum: String },
    /// `Σ_{e ⊆ S} x_e <= |S| - 1` fails for `subset`.
    Subset { subset: Vec<usize>, sum: String },
    /// `x_e >= 0` fails.
    Nonnegativity { edge: (usize, usize) },
}

/// Checks the complete H-representation of the spanning tree polytope of `K_n`:
/// the cardinality equation, every subset inequality with `2 <= |S| <= n-1`,
/// and nonnegativity. Returns the first violated constraint in that order.
pub fn mst_hrep_violation(x: &[Rational], n: usize) -> Option<HrepViolation> {
    assert_eq!(x.len(), num_edges(n), "point must live in the K_n edge space");
    let total: Rational = x.iter().sum();
    if total != Rational::from_integer(((n - 1) as i64).into()) {
        return Some(HrepViolation::Cardinality {
            sum: crate::graph::format_rational(&total),
        });
    }
    let ends: Vec<(usize, usize)> = (0..x.len()).map(|e| edge_endpoints(e, n)).collect();
    for mask in 1u64..(1u64 << n) {
        let size = mask.count_ones() as usize;
        if size < 2 || size > n - 1 {
            continue;
        }
        let inside: Rational = ends
            .iter()
            .zip(x)
            .filter(|((i, j), _)| mask >> i & 1 == 1 && mask >> j & 1 == 1)
            .map(|(_, v)| v)
            .sum();
        if inside > Rational::from_integer(((size - 1) as i64).into()) {
            return Some(HrepViolation::Subset {
                subset: (0..n).filter(|&v| mask >> v & 1 == 1).collect(),
                sum: crate::graph::format_rational(&inside),
            });
        }
    }
    x.iter()
        .position(|v| v.is_negative())
        .map(|e| HrepViolation::Nonnegativity { edge: ends[e] })
}

pub fn mst_hrep_satisfied(x: &[Rational], n: usize) -> bool {
    mst_hrep_violation(x, n).is_none()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HullCheck {
    pub n: usize,
    /// 0/1 vectors with popcount `n - 1` scanned.
    pub candidates: usize,
    /// Candidates satisfying the H-representation.
    pub satisfying: usize,
    pub trees: usize,
    pub matches: bool,
}

/// Scans every 0/1 vector with `n - 1` ones and checks that the H-representation
/// admits exactly the spanning tree characteristic vectors.
pub fn integral_hull_check(n: usize, max_n: usize) -> Result<HullCheck> {
    if n < 2 {
        return Err(Error::arg(format!("need at least 2 vertices, got {n}")));
    }
    if n > max_n {
        return Err(Error::ResourceLimit {
            what: "integral hull scan n",
            requested: n,
            cap: max_n,
        });
    }
    let d = num_edges(n);
    let trees: BTreeSet<CharVector> = enumerate_spanning_trees(n, n)?.iter().map(char_vector).collect();
    let mut candidates = 0;
    let mut accepted = BTreeSet::new();
    for_each_combination(d, n - 1, &mut |support| {
        candidates += 1;
        let v = CharVector::from_support(d, support);
        if mst_hrep_satisfied(&v.to_rationals(), n) {
            accepted.insert(v);
        }
    });
    Ok(HullCheck {
        n,
        candidates,
        satisfying: accepted.len(),
        trees: trees.len(),
        matches: accepted == trees,
    })
}

pub(crate) fn for_each_combination(d: usize, r: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, d: usize, r: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == r {
            f(cur);
            return;
        }
        for e in start..=(d - (r - cur.len())) {
            cur.push(e);
            rec(e + 1, d, r, cur, f);
            cur.pop();
        }
    }
    if r <= d {
        rec(0, d, r, &mut Vec::with_capacity(r), f);
    }
}

/// The separation system for the segment `[x, y]` against `others`, over the
/// variables `(α, β, γ_1, ..., γ_m)`:
/// `α x + β y - Σ γ_z z = 0`, `α + β = 1`, `Σ γ_z = 1`, all variables `>= 0`.
pub fn separation_system(x: &CharVector, y: &CharVector, others: &[&CharVector]) -> LpProblem {
    let d = x.len();
    let mut p = LpProblem::new(2 + others.len());
    let one = Rational::one;
    for c in 0..d {
        let mut row = Vec::new();
        if x.get(c) {
            row.push((0, one()));
        }
        if y.get(c) {
            row.push((1, one()));
        }
        for (k, z) in others.iter().enumerate() {
            if z.get(c) {
                row.push((2 + k, -one()));
            }
        }
        if !row.is_empty() {
            p.add_equality(row, Rational::zero());
        }
    }
    p.add_equality(vec![(0, one()), (1, one())], one());
    p.add_equality((0..others.len()).map(|k| (2 + k, one())).collect(), one());
    p
}

/// Decides whether `x` and `y` span an edge of `conv({x, y} ∪ others)`.
///
/// Any `z` carrying weight in a convex combination equal to a point of `[x, y]`
/// must contain `x ∩ y` and lie inside `x ∪ y` (all points are 0/1), so only
/// those `z` enter the LP; this leaves the answer unchanged.
pub fn segment_is_edge<'a>(
    x: &CharVector,
    y: &CharVector,
    others: impl IntoIterator<Item = &'a CharVector>,
) -> bool {
    let union: Bits = x.words.iter().zip(&y.words).map(|(a, b)| a | b).collect();
    let inter: Bits = x.words.iter().zip(&y.words).map(|(a, b)| a & b).collect();
    let relevant: Vec<&CharVector> = others
        .into_iter()
        .filter(|z| z.is_subset_of(&union) && z.is_superset_of(&inter))
        .collect();
    if relevant.is_empty() {
        return true;
    }
    if has_complementary_pair(&union, &inter, &relevant) {
        return false;
    }
    !separation_system(x, y, &relevant).feasible().is_feasible()
}

/// Looks for `z, z'` with `z + z' = x + y`, i.e. the feasible point
/// `α = β = γ_z = γ_z' = 1/2` of the separation system. Most non-adjacent
/// pairs have one, which spares the simplex run.
fn has_complementary_pair(union: &Bits, inter: &Bits, relevant: &[&CharVector]) -> bool {
    let present: HashSet<&[u64]> = relevant.iter().map(|z| z.words.as_slice()).collect();
    relevant.iter().any(|z| {
        let partner: Bits = z
            .words
            .iter()
            .zip(union.iter().zip(inter))
            .map(|(w, (u, i))| i | (u & !i & !w))
            .collect();
        partner != z.words && present.contains(partner.as_slice())
    })
}

/// Vertex adjacency in `conv(vs)` by the exact separation LP.
pub fn adjacent(i: usize, j: usize, vs: &VertexSet) -> Result<bool> {
    check_pair(i, j, vs)?;
    let others = vs
        .vectors
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i && k != j)
        .map(|(_, v)| v);
    Ok(segment_is_edge(&vs.vectors[i], &vs.vectors[j], others))
}

/// Same answer as [`adjacent`], but solves the separation system over every
/// other vertex without the support reduction. Slow; used to cross-check.
pub fn adjacent_unreduced(i: usize, j: usize, vs: &VertexSet) -> Result<bool> {
    check_pair(i, j, vs)?;
    if vs.len() == 2 {
        return Ok(true);
    }
    let others: Vec<&CharVector> = vs
        .vectors
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i && k != j)
        .map(|(_, v)| v)
        .collect();
    Ok(!separation_system(&vs.vectors[i], &vs.vectors[j], &others)
        .feasible()
        .is_feasible())
}

fn check_pair(i: usize, j: usize, vs: &VertexSet) -> Result<()> {
    if i == j {
        return Err(Error::arg(format!("adjacency of vertex {i} with itself")));
    }
    if i >= vs.len() || j >= vs.len() {
        return Err(Error::arg(format!("vertex index out of range ({} vertices)", vs.len())));
    }
    Ok(())
}

/// How skeleton edges were decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdjacencyOracle {
    /// The exact separation LP.
    Lp,
    /// Spanning trees are adjacent iff they differ by one edge swap. Only valid
    /// for the full spanning tree polytope.
    EdgeExchange,
}

impl fmt::Display for AdjacencyOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdjacencyOracle::Lp => "lp",
            AdjacencyOracle::EdgeExchange => "edge-exchange",
        })
    }
}

/// Undirected graph on polytope vertex indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonGraph {
    num_vertices: usize,
    rows: Vec<Bits>,
    oracle: AdjacencyOracle,
}

impl SkeletonGraph {
    /// A graph with the given edges; self-loops are ignored.
    pub fn from_edges(num_vertices: usize, edges: &[(usize, usize)]) -> Self {
        let mut rows = vec![bits_new(num_vertices); num_vertices];
        for &(a, b) in edges {
            if a != b {
                bit_set(&mut rows[a], b);
                bit_set(&mut rows[b], a);
            }
        }
        SkeletonGraph {
            num_vertices,
            rows,
            oracle: AdjacencyOracle::Lp,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn oracle(&self) -> AdjacencyOracle {
        self.oracle
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        bit_get(&self.rows[i], j)
    }

    pub(crate) fn neighbor_bits(&self, i: usize) -> &Bits {
        &self.rows[i]
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.num_vertices).filter(|&j| self.is_adjacent(i, j)).collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|w| w.count_ones() as usize).sum())
            .collect()
    }

    pub fn num_edges(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.num_vertices)
            .flat_map(|i| self.neighbors(i).into_iter().filter(move |&j| j > i).map(move |j| (i, j)))
            .collect()
    }

    pub fn is_clique(&self, members: &[usize]) -> bool {
        members
            .iter()
            .enumerate()
            .all(|(a, &u)| members[a + 1..].iter().all(|&v| self.is_adjacent(u, v)))
    }
}

/// Decides every vertex pair of `vs` with `oracle`.
pub fn build_skeleton(vs: &VertexSet, oracle: AdjacencyOracle, pair_budget: usize) -> Result<SkeletonGraph> {
    let m = vs.len();
    if m == 0 {
        return Err(Error::arg("empty vertex set"));
    }
    let pairs = m * (m - 1) / 2;
    if pairs > pair_budget {
        return Err(Error::ResourceLimit {
            what: "skeleton vertex pairs",
            requested: pairs,
            cap: pair_budget,
        });
    }
    if oracle == AdjacencyOracle::EdgeExchange && *vs.family() != Family::Mst {
        return Err(Error::arg(format!(
            "the edge-exchange oracle only applies to the full spanning tree polytope, not {}",
            vs.family()
        )));
    }
    let decide = |i: usize, j: usize| -> bool {
        match oracle {
            AdjacencyOracle::Lp => adjacent(i, j, vs).expect("valid pair"),
            AdjacencyOracle::EdgeExchange => vs.vectors[i].symmetric_difference(&vs.vectors[j]) == 2,
        }
    };
    let row = |i: usize| -> Vec<usize> { (i + 1..m).filter(|&j| decide(i, j)).collect() };

    #[cfg(feature = "parallel")]
    let upper: Vec<Vec<usize>> = {
        use rayon::prelude::*;
        (0..m).into_par_iter().map(row).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let upper: Vec<Vec<usize>> = (0..m).map(row).collect();

    let edges: Vec<(usize, usize)> = upper
        .into_iter()
        .enumerate()
        .flat_map(|(i, js)| js.into_iter().map(move |j| (i, j)))
        .collect();
    let mut g = SkeletonGraph::from_edges(m, &edges);
    g.oracle = oracle;
    Ok(g)
}

#[derive(Debug, Clone, Serialize)]
struct SkeletonJson<'a> {
    family: &'a Family,
    n: usize,
    oracle: AdjacencyOracle,
    num_vertices: usize,
    num_edges: usize,
    labels: Vec<String>,
    adjacency: Vec<Vec<usize>>,
}

/// Skeleton as JSON: provenance tag, vertex labels, adjacency lists.
pub fn skeleton_json(g: &SkeletonGraph, vs: &VertexSet) -> serde_json::Value {
    let doc = SkeletonJson {
        family: vs.family(),
        n: vs.n(),
        oracle: g.oracle(),
        num_vertices: g.num_vertices(),
        num_edges: g.num_edges(),
        labels: (0..vs.len()).map(|i| vs.label(i)).collect(),
        adjacency: (0..g.num_vertices()).map(|i| g.neighbors(i)).collect(),
    };
    serde_json::to_value(doc).expect("skeleton serializes")
}

/// Skeleton in Graphviz DOT, vertices labelled by their edge lists.
pub fn skeleton_dot(g: &SkeletonGraph, vs: &VertexSet, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            out.push_str(&format!("// {line}\n"));
        }
    }
    out.push_str(&format!(
        "graph skeleton {{\n  // family={} n={} oracle={}\n",
        vs.family(),
        vs.n(),
        g.oracle()
    ));
    for i in 0..g.num_vertices() {
        out.push_str(&format!("  {i} [label=\"{}\"];\n", vs.label(i)));
    }
    for (i, j) in g.edges() {
        out.push_str(&format!("  {i} -- {j};\n"));
    }
    out.push_str("}\n");
    out
}

pub const CLIQUE_CSV_HEADER: &str = "family,n,k,num_vertices,num_edges,clique_number,witness";

/// One CSV row for the clique report; the witness is space separated.
pub fn clique_csv_row(vs: &VertexSet, g: &SkeletonGraph, c: &CliqueResult) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        vs.family().name(),
        vs.n(),
        vs.family().k().map(|k| k.to_string()).unwrap_or_default(),
        g.num_vertices(),
        g.num_edges(),
        c.size,
        c.witness.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
    )
}
