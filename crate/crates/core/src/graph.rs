//! Complete graphs, the canonical edge coordinate order, and spanning trees.
//!
//! Every object in this crate lives in the edge space of the complete graph
//! `K_n`: coordinate `idx` corresponds to the edge `(i, j)` with `i < j`,
//! enumerated row by row, so `(0,1), (0,2), ..., (0,n-1), (1,2), ...`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

/// Default cap on `n` for exhaustive spanning tree enumeration (`8^6 = 262144` trees).
pub const DEFAULT_MAX_N: usize = 8;

/// Number of edges of `K_n`.
pub fn num_edges(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Linear coordinate of edge `{i, j}` in `K_n`. Order of the endpoints does not matter.
pub fn edge_index(i: usize, j: usize, n: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    debug_assert!(i != j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Inverse of [`edge_index`].
pub fn edge_endpoints(idx: usize, n: usize) -> (usize, usize) {
    debug_assert!(idx < num_edges(n));
    let mut i = 0;
    let mut start = 0;
    loop {
        let row = n - i - 1;
        if idx < start + row {
            return (i, i + 1 + (idx - start));
        }
        start += row;
        i += 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeIndex {
    pub i: usize,
    pub j: usize,
    pub idx: usize,
}

impl EdgeIndex {
    pub fn new(a: usize, b: usize, n: usize) -> Result<Self> {
        if a == b {
            return Err(Error::arg(format!("self-loop ({a},{a})")));
        }
        if a >= n || b >= n {
            return Err(Error::arg(format!("edge ({a},{b}) out of range for n={n}")));
        }
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        Ok(EdgeIndex {
            i,
            j,
            idx: edge_index(i, j, n),
        })
    }

    pub fn from_index(idx: usize, n: usize) -> Result<Self> {
        if idx >= num_edges(n) {
            return Err(Error::arg(format!("edge index {idx} out of range for n={n}")));
        }
        let (i, j) = edge_endpoints(idx, n);
        Ok(EdgeIndex { i, j, idx })
    }
}

/// A complete edge-weighted graph with an optional distinguished vertex subset `U`.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphInstance {
    n: usize,
    weights: Vec<Rational>,
    subset_u: Option<BTreeSet<usize>>,
}

impl GraphInstance {
    pub fn new(n: usize, weights: Vec<Rational>, subset_u: Option<BTreeSet<usize>>) -> Result<Self> {
        if n < 2 {
            return Err(Error::arg(format!("need at least 2 vertices, got {n}")));
        }
        if weights.len() != num_edges(n) {
            return Err(Error::arg(format!(
                "K_{n} has {} edges but {} weights were given",
                num_edges(n),
                weights.len()
            )));
        }
        if let Some(u) = &subset_u {
            if let Some(&v) = u.iter().find(|&&v| v >= n) {
                return Err(Error::arg(format!("subset vertex {v} out of range for n={n}")));
            }
        }
        Ok(GraphInstance { n, weights, subset_u })
    }

    /// All edge weights equal to one.
    pub fn unit(n: usize) -> Result<Self> {
        Self::new(n, vec![Rational::one(); num_edges(n)], None)
    }

    /// Seeded random instance with weights `p/q`, `p` in `[1,100]`, `q` in `[1,10]`.
    pub fn random(n: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let weights = (0..num_edges(n))
            .map(|_| {
                let p: i64 = rng.gen_range(1..=100);
                let q: i64 = rng.gen_range(1..=10);
                Rational::new(p.into(), q.into())
            })
            .collect();
        Self::new(n, weights, None)
    }

    pub fn with_subset(mut self, subset: BTreeSet<usize>) -> Result<Self> {
        if let Some(&v) = subset.iter().find(|&&v| v >= self.n) {
            return Err(Error::arg(format!("subset vertex {v} out of range for n={}", self.n)));
        }
        self.subset_u = Some(subset);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, i: usize, j: usize) -> &Rational {
        &self.weights[edge_index(i, j, self.n)]
    }

    pub fn subset(&self) -> Option<&BTreeSet<usize>> {
        self.subset_u.as_ref()
    }

    pub fn tree_weight(&self, t: &SpanningTree) -> Rational {
        t.edges().iter().map(|&e| &self.weights[e]).sum()
    }

    /// Parses the instance JSON format:
    /// `{"n": 4, "weights": [[0,1,"3/2"], [0,2,1], ...], "subset": [0,1]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawInstance =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let n = raw.n;
        if n < 2 {
            return Err(Error::Parse(format!("n must be at least 2, got {n}")));
        }
        let mut weights: Vec<Option<Rational>> = vec![None; num_edges(n)];
        for (a, b, w) in raw.weights {
            let e = EdgeIndex::new(a, b, n).map_err(|e| Error::Parse(e.to_string()))?;
            if weights[e.idx].is_some() {
                return Err(Error::Parse(format!("duplicate edge ({},{})", e.i, e.j)));
            }
            weights[e.idx] = Some(w.to_rational()?);
        }
        let weights = weights
            .into_iter()
            .enumerate()
            .map(|(idx, w)| {
                w.ok_or_else(|| {
                    let (i, j) = edge_endpoints(idx, n);
                    Error::Parse(format!("missing weight for edge ({i},{j})"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let subset = match raw.subset {
            None => None,
            Some(list) => {
                let set: BTreeSet<usize> = list.iter().copied().collect();
                if set.len() != list.len() {
                    return Err(Error::Parse("duplicate vertex in subset".into()));
                }
                Some(set)
            }
        };
        Self::new(n, weights, subset).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let weights = (0..self.num_edges())
            .map(|idx| {
                let (i, j) = edge_endpoints(idx, self.n);
                (i, j, RawWeight::Str(format_rational(&self.weights[idx])))
            })
            .collect();
        let raw = RawInstance {
            n: self.n,
            weights,
            subset: self.subset_u.as_ref().map(|s| s.iter().copied().collect()),
        };
        serde_json::to_string(&raw).expect("instance serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct RawInstance {
    n: usize,
    weights: Vec<(usize, usize, RawWeight)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    subset: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawWeight {
    Int(i64),
    Str(String),
}

impl RawWeight {
    fn to_rational(&self) -> Result<Rational> {
        match self {
            RawWeight::Int(v) => Ok(Rational::from_integer((*v).into())),
            RawWeight::Str(s) => parse_rational(s),
        }
    }
}

/// Parses `"p/q"` or `"p"`; decimals are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational literal: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// `"p/q"` in lowest terms, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A spanning tree of `K_n`, stored as its sorted edge coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpanningTree {
    n: usize,
    edges: Vec<usize>,
}

impl SpanningTree {
    /// Validates that `edges` are `n - 1` distinct coordinates forming a connected acyclic graph.
    pub fn new(n: usize, mut edges: Vec<usize>) -> Result<Self> {
        edges.sort_unstable();
        edges.dedup();
        if n < 2 {
            return Err(Error::arg("a spanning tree needs at least 2 vertices"));
        }
        if edges.len() != n - 1 {
            return Err(Error::arg(format!(
                "{} distinct edges given, a spanning tree of K_{n} has {}",
                edges.len(),
                n - 1
            )));
        }
        let m = num_edges(n);
        if let Some(&e) = edges.iter().find(|&&e| e >= m) {
            return Err(Error::arg(format!("edge index {e} out of range for n={n}")));
        }
        let mut dsu = Dsu::new(n);
        for &e in &edges {
            let (i, j) = edge_endpoints(e, n);
            if !dsu.union(i, j) {
                return Err(Error::arg(format!("edge ({i},{j}) closes a cycle")));
            }
        }
        Ok(SpanningTree { n, edges })
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .map(|&(a, b)| EdgeIndex::new(a, b, n).map(|e| e.idx))
            .collect::<Result<Vec<_>>>()?;
        if edges.len() != pairs.len() {
            return Err(Error::arg("duplicate edge"));
        }
        Self::new(n, edges)
    }

    /// Trusted constructor for edge sets produced by the enumerators.
    pub(crate) fn from_sorted_unchecked(n: usize, edges: Vec<usize>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        SpanningTree { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&e| edge_endpoints(e, self.n)).collect()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.edges.binary_search(&edge_index(i, j, self.n)).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for (i, j) in self.pairs() {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    pub fn leaves(&self) -> BTreeSet<usize> {
        self.degrees()
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d == 1)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.degrees().iter().filter(|&&d| d == 1).count()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Size of the symmetric difference of the two edge sets.
    pub fn symmetric_difference(&self, other: &SpanningTree) -> usize {
        let (mut a, mut b) = (self.edges.iter().peekable(), other.edges.iter().peekable());
        let mut diff = 0;
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) if x == y => {
                    a.next();
                    b.next();
                }
                (Some(x), Some(y)) => {
                    diff += 1;
                    if x < y {
                        a.next();
                    } else {
                        b.next();
                    }
                }
                (Some(_), None) => {
                    diff += 1;
                    a.next();
                }
                (None, Some(_)) => {
                    diff += 1;
                    b.next();
                }
                (None, None) => return diff,
            }
        }
    }
}

impl fmt::Display for SpanningTree {
    /// `01,12,23` style label.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", edge_label(&self.edges, self.n))
    }
}

/// Compact label for a set of edge coordinates, e.g. `01,12,23`.
pub fn edge_label(edges: &[usize], n: usize) -> String {
    edges
        .iter()
        .map(|&e| {
            let (i, j) = edge_endpoints(e, n);
            if n <= 10 {
                format!("{i}{j}")
            } else {
                format!("{i}-{j}")
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already connected.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// All spanning trees of `K_n` in lexicographic order of their sorted edge lists.
pub fn enumerate_spanning_trees(n: usize, max_n: usize) -> Result<Vec<SpanningTree>> {
    if n < 2 {
        return Err(Error::arg(format!("need at least 2 vertices, got {n}")));
    }
    if n > max_n {
        return Err(Error::ResourceLimit {
            what: "spanning tree enumeration n",
            requested: n,
            cap: max_n,
        });
    }
    let m = num_edges(n);
    let ends: Vec<(usize, usize)> = (0..m).map(|e| edge_endpoints(e, n)).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(n - 1);
    let comp: Vec<usize> = (0..n).collect();
    extend_forest(n, m, &ends, 0, &comp, &mut chosen, &mut out);
    Ok(out)
}

// `comp[v]` is the component label of v in the forest built so far. Labels are
// relabeled eagerly, which is fine for n <= a dozen vertices.
fn extend_forest(
    n: usize,
    m: usize,
    ends: &[(usize, usize)],
    next: usize,
    comp: &[usize],
    chosen: &mut Vec<usize>,
    out: &mut Vec<SpanningTree>,
) {
    let need = n - 1 - chosen.len();
    if need == 0 {
        out.push(SpanningTree::from_sorted_unchecked(n, chosen.clone()));
        return;
    }
    for e in next..=(m - need) {
        let (i, j) = ends[e];
        let (ci, cj) = (comp[i], comp[j]);
        if ci == cj {
            continue;
        }
        let merged: Vec<usize> = comp.iter().map(|&c| if c == cj { ci } else { c }).collect();
        chosen.push(e);
        extend_forest(n, m, ends, e + 1, &merged, chosen, out);
        chosen.pop();
    }
}

/// Number of spanning trees of `K_n` by the matrix-tree theorem: the determinant
/// of the Laplacian with its last row and column removed, in exact arithmetic.
pub fn count_spanning_trees(n: usize) -> BigInt {
    if n < 2 {
        return BigInt::from(u8::from(n == 1));
    }
    let size = n - 1;
    let mut a: Vec<Vec<Rational>> = (0..size)
        .map(|r| {
            (0..size)
                .map(|c| {
                    let v = if r == c { (n - 1) as i64 } else { -1 };
                    Rational::from_integer(v.into())
                })
                .collect()
        })
        .collect();
    determinant(&mut a).to_integer()
}

/// Gaussian elimination determinant over the rationals; destroys `a`.
pub(crate) fn determinant(a: &mut [Vec<Rational>]) -> Rational {
    let size = a.len();
    let mut det = Rational::one();
    for col in 0..size {
        let Some(p) = (col..size).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot;
            for (cell, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *cell -= &f * p;
            }
        }
    }
    det
}

/// The combinatorial side constraints defining the four constrained families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Constraint {
    /// At most `k` leaves.
    LeafMax(usize),
    /// At most `k` leaves inside `subset`.
    LeafMaxInSubset { subset: BTreeSet<usize>, k: usize },
    /// Every leaf lies in `subset`.
    LeavesOnlyIn(BTreeSet<usize>),
    /// No vertex of degree above `k`.
    DegreeMax(usize),
}

impl Constraint {
    pub fn validate(&self, n: usize) -> Result<()> {
        let check_subset = |s: &BTreeSet<usize>| match s.iter().find(|&&v| v >= n) {
            Some(v) => Err(Error::arg(format!("subset vertex {v} out of range for n={n}"))),
            None => Ok(()),
        };
        match self {
            Constraint::LeafMax(k) | Constraint::DegreeMax(k) => {
                if *k == 0 || *k >= n {
                    return Err(Error::arg(format!("k must satisfy 0 < k < n={n}, got {k}")));
                }
            }
            Constraint::LeafMaxInSubset { subset, k } => {
                check_subset(subset)?;
                if *k == 0 || *k >= subset.len() {
                    return Err(Error::arg(format!(
                        "k must satisfy 0 < k < |U|={}, got {k}",
                        subset.len()
                    )));
                }
            }
            Constraint::LeavesOnlyIn(subset) => check_subset(subset)?,
        }
        Ok(())
    }

    pub fn is_satisfied_by(&self, t: &SpanningTree) -> bool {
        let deg = t.degrees();
        let leaves = || deg.iter().enumerate().filter(|&(_, &d)| d == 1).map(|(v, _)| v);
        match self {
            Constraint::LeafMax(k) => leaves().count() <= *k,
            Constraint::LeafMaxInSubset { subset, k } => {
                leaves().filter(|v| subset.contains(v)).count() <= *k
            }
            Constraint::LeavesOnlyIn(subset) => leaves().all(|v| subset.contains(&v)),
            Constraint::DegreeMax(k) => deg.iter().all(|&d| d <= *k),
        }
    }
}

/// The trees satisfying `constraint`, in input order.
pub fn filter_family(
    n: usize,
    trees: &[SpanningTree],
    constraint: &Constraint,
) -> Result<Vec<SpanningTree>> {
    constraint.validate(n)?;
    Ok(trees
        .iter()
        .filter(|t| constraint.is_satisfied_by(t))
        .cloned()
        .collect())
}


#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn edge_order_matches_row_major() {
        let n = 4;
        let expected = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for (idx, &(i, j)) in expected.iter().enumerate() {
            assert_eq!(edge_index(i, j, n), idx);
            assert_eq!(edge_endpoints(idx, n), (i, j));
        }
    }

    proptest! {
        #[test]
        fn edge_index_round_trip(n in 2usize..40, a in 0usize..40, b in 0usize..40) {
            prop_assume!(a < n && b < n && a != b);
            let e = EdgeIndex::new(a, b, n).unwrap();
            prop_assert!(e.idx < num_edges(n));
            prop_assert_eq!(EdgeIndex::from_index(e.idx, n).unwrap(), e);
        }
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_spanning_trees(2, 8).unwrap().len(), 1);
        assert_eq!(enumerate_spanning_trees(3, 8).unwrap().len(), 3);
        assert_eq!(enumerate_spanning_trees(4, 8).unwrap().len(), 16);
        assert_eq!(enumerate_spanning_trees(5, 8).unwrap().len(), 125);
    }

    #[test]
    fn enumeration_is_lexicographic_and_valid() {
        let trees = enumerate_spanning_trees(5, 8).unwrap();
        for w in trees.windows(2) {
            assert!(w[0].edges() < w[1].edges());
        }
        for t in &trees {
            SpanningTree::new(5, t.edges().to_vec()).unwrap();
        }
    }

    #[test]
    fn enumeration_cap() {
        let err = enumerate_spanning_trees(9, DEFAULT_MAX_N).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { cap: 8, .. }));
    }

    #[test]
    fn matrix_tree_counts() {
        assert_eq!(count_spanning_trees(2), BigInt::from(1));
        assert_eq!(count_spanning_trees(4), BigInt::from(16));
        assert_eq!(count_spanning_trees(6), BigInt::from(1296));
    }

    #[test]
    fn leaf_counts() {
        let star = SpanningTree::from_pairs(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.leaf_count(), 3);
        let path = SpanningTree::from_pairs(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(path.leaf_count(), 2);
        let t = SpanningTree::from_pairs(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(t.leaf_count(), 3);
    }

    #[test]
    fn rejects_non_trees() {
        assert!(SpanningTree::from_pairs(4, &[(0, 1), (1, 2), (0, 2)]).is_err());
        assert!(SpanningTree::from_pairs(4, &[(0, 1), (1, 2)]).is_err());
        assert!(SpanningTree::from_pairs(3, &[(0, 1), (0, 1)]).is_err());
    }

    #[test]
    fn filters_on_k4() {
        let trees = enumerate_spanning_trees(4, 8).unwrap();
        let paths = filter_family(4, &trees, &Constraint::DegreeMax(2)).unwrap();
        assert_eq!(paths.len(), 12);
        assert_eq!(filter_family(4, &trees, &Constraint::LeafMax(3)).unwrap().len(), 16);
        let u: BTreeSet<usize> = [0, 1].into();
        let only = filter_family(4, &trees, &Constraint::LeavesOnlyIn(u)).unwrap();
        let expected = vec![
            SpanningTree::from_pairs(4, &[(0, 2), (2, 3), (3, 1)]).unwrap(),
            SpanningTree::from_pairs(4, &[(0, 3), (3, 2), (2, 1)]).unwrap(),
        ];
        assert_eq!(only, expected);
    }

    #[test]
    fn filter_rejects_bad_k() {
        let trees = enumerate_spanning_trees(4, 8).unwrap();
        assert!(filter_family(4, &trees, &Constraint::LeafMax(4)).is_err());
        assert!(filter_family(4, &trees, &Constraint::DegreeMax(0)).is_err());
        let u: BTreeSet<usize> = [0, 1].into();
        let c = Constraint::LeafMaxInSubset { subset: u, k: 2 };
        assert!(filter_family(4, &trees, &c).is_err());
    }

    #[test]
    fn vacuous_filters_are_identity() {
        for n in 3..=6 {
            let trees = enumerate_spanning_trees(n, 8).unwrap();
            assert_eq!(filter_family(n, &trees, &Constraint::DegreeMax(n - 1)).unwrap(), trees);
            assert_eq!(filter_family(n, &trees, &Constraint::LeafMax(n - 1)).unwrap(), trees);
        }
    }

    #[test]
    fn instance_json_round_trip() {
        let g = GraphInstance::random(5, 7)
            .unwrap()
            .with_subset([0, 2].into())
            .unwrap();
        let back = GraphInstance::from_json(&g.to_json()).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn instance_json_parsing() {
        let ok = r#"{"n": 3, "weights": [[0,1,"3/2"], [0,2,1], [2,1,"-4/6"]], "subset": [0,1]}"#;
        let g = GraphInstance::from_json(ok).unwrap();
        assert_eq!(g.weight(1, 2), &Rational::new((-2).into(), 3.into()));
        assert_eq!(g.weight(0, 1), &Rational::new(3.into(), 2.into()));

        let dup = r#"{"n": 3, "weights": [[0,1,1], [1,0,1], [0,2,1], [1,2,1]]}"#;
        assert!(GraphInstance::from_json(dup).unwrap_err().to_string().contains("duplicate"));
        let missing = r#"{"n": 3, "weights": [[0,1,1], [0,2,1]]}"#;
        assert!(GraphInstance::from_json(missing).is_err());
        let range = r#"{"n": 3, "weights": [[0,1,1], [0,2,1], [1,3,1]]}"#;
        assert!(GraphInstance::from_json(range).is_err());
        let decimal = r#"{"n": 2, "weights": [[0,1,"1.5"]]}"#;
        assert!(GraphInstance::from_json(decimal).is_err());
        let bad_subset = r#"{"n": 2, "weights": [[0,1,1]], "subset": [5]}"#;
        assert!(GraphInstance::from_json(bad_subset).is_err());
    }

    #[test]
    fn random_weights_in_range() {
        let g = GraphInstance::random(6, 42).unwrap();
        for w in g.weights() {
            assert!(*w >= Rational::new(1.into(), 10.into()));
            assert!(*w <= Rational::from_integer(100.into()));
        }
        assert_eq!(g, GraphInstance::random(6, 42).unwrap());
    }
}
