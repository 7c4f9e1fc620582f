//! Exact solvers for the minimum spanning tree problem and its leaf- and
//! degree-constrained variants.
//!
//! Two independent methods: exhaustive enumeration of all spanning trees (the
//! ground truth at small `n`), and branch and bound over the integer
//! programming model with exact LP relaxations.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::graph::{
    edge_index, edge_label, enumerate_spanning_trees, format_rational, num_edges, Constraint,
    GraphInstance, SpanningTree,
};
use crate::lp::{LpProblem, OptResult};
use crate::skeleton::for_each_combination;
use crate::Rational;

/// The five problems; parameters travel with the variant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "variant", rename_all = "lowercase")]
pub enum Variant {
    Mst,
    /// At most `k` leaves.
    Lcmst { k: usize },
    /// At most `k` leaves inside `subset`.
    Rlsmst { subset: BTreeSet<usize>, k: usize },
    /// Leaves only inside `subset`.
    Svmst { subset: BTreeSet<usize> },
    /// Every degree at most `k`.
    Dcmst { k: usize },
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::Mst => "mst",
            Variant::Lcmst { .. } => "lcmst",
            Variant::Rlsmst { .. } => "rlsmst",
            Variant::Svmst { .. } => "svmst",
            Variant::Dcmst { .. } => "dcmst",
        }
    }

    pub fn k(&self) -> Option<usize> {
        match self {
            Variant::Lcmst { k } | Variant::Rlsmst { k, .. } | Variant::Dcmst { k } => Some(*k),
            Variant::Mst | Variant::Svmst { .. } => None,
        }
    }

    pub fn constraint(&self) -> Option<Constraint> {
        match self {
            Variant::Mst => None,
            Variant::Lcmst { k } => Some(Constraint::LeafMax(*k)),
            Variant::Rlsmst { subset, k } => Some(Constraint::LeafMaxInSubset {
                subset: subset.clone(),
                k: *k,
            }),
            Variant::Svmst { subset } => Some(Constraint::LeavesOnlyIn(subset.clone())),
            Variant::Dcmst { k } => Some(Constraint::DegreeMax(*k)),
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if n < 2 {
            return Err(Error::arg(format!("need at least 2 vertices, got {n}")));
        }
        match self.constraint() {
            Some(c) => c.validate(n),
            None => Ok(()),
        }
    }

    pub fn accepts(&self, t: &SpanningTree) -> bool {
        self.constraint().is_none_or(|c| c.is_satisfied_by(t))
    }

    fn has_leaf_vars(&self) -> bool {
        matches!(self, Variant::Lcmst { .. } | Variant::Rlsmst { .. } | Variant::Svmst { .. })
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        if let Some(k) = self.k() {
            write!(f, "(k={k})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowKind {
    /// `Σ x_e = n - 1`
    Cardinality,
    /// `Σ_{e ⊆ S} x_e <= |S| - 1`
    Subset,
    /// `Σ_{e ∈ δ(v)} x_e + (|δ(v)| - 1) y_v <= |δ(v)|`
    LeafIndicator,
    /// `Σ_{e ∈ δ(v)} x_e >= 2 - y_v`, so that `y_v = 1` exactly at leaves.
    LeafRepair,
    /// `Σ y_v <= k` over `V` or over `U`.
    LeafBudget,
    /// `y_v = 0` for `v ∉ U`.
    LeafForbidden,
    /// `Σ_{e ∈ δ(v)} x_e <= k`
    Degree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

/// One integer-coefficient row over the model's variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelRow {
    pub kind: RowKind,
    pub coeffs: Vec<(usize, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

impl ModelRow {
    fn holds(&self, lhs: i64) -> bool {
        match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Ge => lhs >= self.rhs,
            Sense::Eq => lhs == self.rhs,
        }
    }
}

/// Variables `x_0..x_{d-1}` (edges, in edge-index order) followed by
/// `y_0..y_{n-1}` for the leaf variants. Every variable is binary; the
/// relaxation keeps `0 <= v <= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IPModel {
    pub n: usize,
    pub variant: Variant,
    pub num_x: usize,
    pub num_y: usize,
    pub rows: Vec<ModelRow>,
    pub repaired: bool,
}

impl IPModel {
    pub fn num_vars(&self) -> usize {
        self.num_x + self.num_y
    }

    pub fn y(&self, v: usize) -> usize {
        self.num_x + v
    }

    pub fn count(&self, kind: RowKind) -> usize {
        self.rows.iter().filter(|r| r.kind == kind).count()
    }

    /// Nonnegativity bounds, one per variable.
    pub fn num_bounds(&self) -> usize {
        self.num_vars()
    }

    fn holds_at(&self, point: &[i64]) -> bool {
        self.rows.iter().all(|r| {
            let lhs: i64 = r.coeffs.iter().map(|&(j, a)| a * point[j]).sum();
            r.holds(lhs)
        })
    }

    /// LP relaxation with `fixed[j] = Some(b)` substituted; `None` when some
    /// row becomes a violated constant.
    fn relaxation(&self, weights: &[Rational], fixed: &[Option<bool>]) -> Option<LpProblem> {
        let mut lp = LpProblem::new(self.num_vars());
        for j in 0..self.num_vars() {
            lp.set_bounds(j, Some(Rational::zero()), Some(Rational::one()));
        }
        for (j, f) in fixed.iter().enumerate() {
            if let Some(b) = f {
                let v = Rational::from_integer((*b as i64).into());
                lp.set_bounds(j, Some(v.clone()), Some(v));
            }
        }
        for r in &self.rows {
            let mut rhs = r.rhs;
            let mut coeffs = Vec::with_capacity(r.coeffs.len());
            for &(j, a) in &r.coeffs {
                match fixed.get(j).copied().flatten() {
                    Some(b) => rhs -= a * b as i64,
                    None => coeffs.push((j, Rational::from_integer(a.into()))),
                }
            }
            if coeffs.is_empty() {
                if !constant_ok(r.sense, rhs) {
                    return None;
                }
                continue;
            }
            let rhs = Rational::from_integer(rhs.into());
            match r.sense {
                Sense::Le => lp.add_le(coeffs, rhs),
                Sense::Ge => lp.add_ge(coeffs, rhs),
                Sense::Eq => lp.add_equality(coeffs, rhs),
            }
        }
        lp.set_objective(weights.iter().cloned().enumerate().collect());
        Some(lp)
    }
}

/// Whether `0 (sense) rhs` holds.
fn constant_ok(sense: Sense, rhs: i64) -> bool {
    match sense {
        Sense::Le => 0 <= rhs,
        Sense::Ge => 0 >= rhs,
        Sense::Eq => rhs == 0,
    }
}

/// The integer programming model with the leaf repair rows.
pub fn build_model(g: &GraphInstance, variant: &Variant) -> Result<IPModel> {
    build_model_with(g.n(), variant, true)
}

/// `repair = false` drops the `Σ x_e >= 2 - y_v` rows and leaves the bare
/// leaf-indicator rows, which do not force `y_v = 1` at a leaf.
pub fn build_model_with(n: usize, variant: &Variant, repair: bool) -> Result<IPModel> {
    variant.validate(n)?;
    if n > 16 {
        return Err(Error::ResourceLimit {
            what: "vertices for the full subset row set",
            requested: n,
            cap: 16,
        });
    }
    let d = num_edges(n);
    let num_y = if variant.has_leaf_vars() { n } else { 0 };
    let mut rows = vec![ModelRow {
        kind: RowKind::Cardinality,
        coeffs: (0..d).map(|e| (e, 1)).collect(),
        sense: Sense::Eq,
        rhs: n as i64 - 1,
    }];
    for size in 2..n {
        for_each_combination(n, size, &mut |s: &[usize]| {
            let mut coeffs = Vec::new();
            for (a, &i) in s.iter().enumerate() {
                for &j in &s[a + 1..] {
                    coeffs.push((edge_index(i, j, n), 1));
                }
            }
            coeffs.sort_unstable();
            rows.push(ModelRow {
                kind: RowKind::Subset,
                coeffs,
                sense: Sense::Le,
                rhs: size as i64 - 1,
            });
        });
    }
    let star = |v: usize| -> Vec<(usize, i64)> {
        let mut c: Vec<(usize, i64)> = (0..n).filter(|&u| u != v).map(|u| (edge_index(u, v, n), 1)).collect();
        c.sort_unstable();
        c
    };
    let y = |v: usize| d + v;
    if variant.has_leaf_vars() {
        let delta = n as i64 - 1;
        for v in 0..n {
            let mut c = star(v);
            c.push((y(v), delta - 1));
            rows.push(ModelRow {
                kind: RowKind::LeafIndicator,
                coeffs: c,
                sense: Sense::Le,
                rhs: delta,
            });
        }
        if repair {
            for v in 0..n {
                let mut c = star(v);
                c.push((y(v), 1));
                rows.push(ModelRow {
                    kind: RowKind::LeafRepair,
                    coeffs: c,
                    sense: Sense::Ge,
                    rhs: 2,
                });
            }
        }
    }
    match variant {
        Variant::Mst => {}
        Variant::Lcmst { k } => rows.push(ModelRow {
            kind: RowKind::LeafBudget,
            coeffs: (0..n).map(|v| (y(v), 1)).collect(),
            sense: Sense::Le,
            rhs: *k as i64,
        }),
        Variant::Rlsmst { subset, k } => rows.push(ModelRow {
            kind: RowKind::LeafBudget,
            coeffs: subset.iter().map(|&v| (y(v), 1)).collect(),
            sense: Sense::Le,
            rhs: *k as i64,
        }),
        Variant::Svmst { subset } => {
            for v in (0..n).filter(|v| !subset.contains(v)) {
                rows.push(ModelRow {
                    kind: RowKind::LeafForbidden,
                    coeffs: vec![(y(v), 1)],
                    sense: Sense::Eq,
                    rhs: 0,
                });
            }
        }
        Variant::Dcmst { k } => {
            for v in 0..n {
                rows.push(ModelRow {
                    kind: RowKind::Degree,
                    coeffs: star(v),
                    sense: Sense::Le,
                    rhs: *k as i64,
                });
            }
        }
    }
    Ok(IPModel {
        n,
        variant: variant.clone(),
        num_x: d,
        num_y,
        rows,
        repaired: repair,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Enumerate,
    Bnb,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Enumerate => "enumerate",
            Method::Bnb => "bnb",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub variant: Variant,
    pub tree: SpanningTree,
    pub weight: Rational,
    pub method: Method,
    /// Trees scanned for enumeration, LP relaxations solved for branch and bound.
    pub nodes_explored: usize,
}

impl Solution {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "variant": self.variant.name(),
            "n": self.tree.n(),
            "k": self.variant.k(),
            "weight": format_rational(&self.weight),
            "edges": self.tree.pairs().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
            "method": self.method.name(),
            "nodes_explored": self.nodes_explored,
        })
    }
}

/// Outcome of a solve: an optimal tree or a proof that none qualifies.
#[derive(Debug, Clone, PartialEq)]
pub enum SolveOutcome {
    Optimal(Solution),
    Infeasible {
        variant: Variant,
        n: usize,
        method: Method,
        nodes_explored: usize,
    },
}

impl SolveOutcome {
    pub fn solution(&self) -> Option<&Solution> {
        match self {
            SolveOutcome::Optimal(s) => Some(s),
            SolveOutcome::Infeasible { .. } => None,
        }
    }

    pub fn weight(&self) -> Option<&Rational> {
        self.solution().map(|s| &s.weight)
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, SolveOutcome::Infeasible { .. })
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            SolveOutcome::Optimal(s) => {
                let mut v = s.to_json();
                v["status"] = json!("optimal");
                v
            }
            SolveOutcome::Infeasible {
                variant,
                n,
                method,
                nodes_explored,
            } => json!({
                "status": "infeasible",
                "variant": variant.name(),
                "n": n,
                "k": variant.k(),
                "method": method.name(),
                "nodes_explored": nodes_explored,
            }),
        }
    }
}

/// Minimum-weight qualifying tree by scanning every spanning tree; ties go to
/// the lexicographically smallest edge set (the enumeration order).
pub fn solve_enumerate(g: &GraphInstance, variant: &Variant, max_n: usize) -> Result<SolveOutcome> {
    let n = g.n();
    variant.validate(n)?;
    let trees = enumerate_spanning_trees(n, max_n)?;
    let mut best: Option<(Rational, &SpanningTree)> = None;
    for t in trees.iter().filter(|t| variant.accepts(t)) {
        let w = g.tree_weight(t);
        if best.as_ref().is_none_or(|(bw, _)| w < *bw) {
            best = Some((w, t));
        }
    }
    Ok(match best {
        Some((weight, tree)) => SolveOutcome::Optimal(Solution {
            variant: variant.clone(),
            tree: tree.clone(),
            weight,
            method: Method::Enumerate,
            nodes_explored: trees.len(),
        }),
        None => SolveOutcome::Infeasible {
            variant: variant.clone(),
            n,
            method: Method::Enumerate,
            nodes_explored: trees.len(),
        },
    })
}

fn is_integral(v: &Rational) -> bool {
    v.is_integer()
}

/// The most fractional `x` variable, lowest index on ties.
fn branching_variable(point: &[Rational], num_x: usize) -> Option<usize> {
    let half = Rational::new(1.into(), 2.into());
    let mut best: Option<(Rational, usize)> = None;
    for (j, v) in point[..num_x].iter().enumerate() {
        if is_integral(v) {
            continue;
        }
        let dist = if *v > half { v - &half } else { &half - v };
        if best.as_ref().is_none_or(|(d, _)| dist < *d) {
            best = Some((dist, j));
        }
    }
    best.map(|(_, j)| j)
}

/// Branch and bound over the model's LP relaxation. Depth-first; at each
/// branching both children are bounded and the better one is explored first.
pub fn solve_bnb(g: &GraphInstance, variant: &Variant) -> Result<SolveOutcome> {
    let model = build_model(g, variant)?;
    solve_model(g, &model)
}

struct Node {
    fixed: Vec<Option<bool>>,
    bound: Rational,
    point: Vec<Rational>,
}

fn bound_node(model: &IPModel, weights: &[Rational], fixed: Vec<Option<bool>>, nodes: &mut usize) -> Option<Node> {
    let lp = model.relaxation(weights, &fixed)?;
    *nodes += 1;
    match lp.optimize() {
        OptResult::Optimal { value, point } => Some(Node {
            fixed,
            bound: value,
            point,
        }),
        OptResult::Infeasible => None,
        OptResult::Unbounded => unreachable!("all variables are boxed"),
    }
}

pub fn solve_model(g: &GraphInstance, model: &IPModel) -> Result<SolveOutcome> {
    let n = model.n;
    if g.n() != n {
        return Err(Error::arg(format!("instance has {} vertices, model {n}", g.n())));
    }
    let weights: Vec<Rational> = g.weights().to_vec();
    let mut nodes = 0;
    let mut incumbent: Option<(Rational, SpanningTree)> = None;
    let mut stack: Vec<Node> = Vec::new();
    if let Some(root) = bound_node(model, &weights, vec![None; model.num_x], &mut nodes) {
        stack.push(root);
    }
    while let Some(node) = stack.pop() {
        if incumbent.as_ref().is_some_and(|(w, _)| node.bound >= *w) {
            continue;
        }
        match branching_variable(&node.point, model.num_x) {
            None => {
                let support: Vec<usize> = (0..model.num_x).filter(|&e| node.point[e].is_one()).collect();
                let tree = SpanningTree::new(n, support).map_err(|e| {
                    Error::contract(format!("integral relaxation point is not a spanning tree: {e}"))
                })?;
                if !model.variant.accepts(&tree) {
                    return Err(Error::contract(format!(
                        "integral point {tree} violates the {} constraint",
                        model.variant
                    )));
                }
                let w = g.tree_weight(&tree);
                if incumbent.as_ref().is_none_or(|(iw, _)| w < *iw) {
                    incumbent = Some((w, tree));
                }
            }
            Some(j) => {
                let mut children: Vec<Node> = [false, true]
                    .into_iter()
                    .filter_map(|b| {
                        let mut fixed = node.fixed.clone();
                        fixed[j] = Some(b);
                        bound_node(model, &weights, fixed, &mut nodes)
                    })
                    .collect();
                // pushed worse-first so the better bound is popped next
                children.sort_by(|a, b| b.bound.cmp(&a.bound));
                stack.extend(children);
            }
        }
    }
    Ok(match incumbent {
        Some((weight, tree)) => SolveOutcome::Optimal(Solution {
            variant: model.variant.clone(),
            tree,
            weight,
            method: Method::Bnb,
            nodes_explored: nodes,
        }),
        None => SolveOutcome::Infeasible {
            variant: model.variant.clone(),
            n,
            method: Method::Bnb,
            nodes_explored: nodes,
        },
    })
}

/// Result of projecting all 0/1 solutions of a model onto `x`.
#[derive(Debug, Clone, Serialize)]
pub struct FeasibleSetReport {
    pub variant: Variant,
    pub n: usize,
    pub repaired: bool,
    pub assignments_scanned: u64,
    pub projected: usize,
    pub expected: usize,
    /// Edge sets admitted by the model that are not qualifying trees.
    pub extra: Vec<String>,
    /// Qualifying trees the model rejects.
    pub missing: Vec<String>,
}

impl FeasibleSetReport {
    pub fn passed(&self) -> bool {
        self.extra.is_empty() && self.missing.is_empty()
    }
}

/// Scans every 0/1 assignment to `(x, y)`, projects the model's solutions onto
/// `x` and compares with the trees satisfying the variant's constraint.
pub fn model_feasible_set_check(n: usize, variant: &Variant, repair: bool) -> Result<FeasibleSetReport> {
    const MAX_N: usize = 6;
    if n > MAX_N {
        return Err(Error::ResourceLimit {
            what: "vertices for the 0/1 model scan",
            requested: n,
            cap: MAX_N,
        });
    }
    let model = build_model_with(n, variant, repair)?;
    let d = model.num_x;
    let mut projected: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut scanned: u64 = 0;
    let mut point = vec![0i64; model.num_vars()];
    // the cardinality row pins |x| = n - 1, so other x patterns are skipped
    // wholesale; they are counted as scanned
    let y_patterns: u64 = 1 << model.num_y;
    let x_patterns: u64 = 1 << d;
    for xmask in 0..x_patterns {
        if xmask.count_ones() as usize != n - 1 {
            scanned += y_patterns;
            continue;
        }
        for (e, p) in point[..d].iter_mut().enumerate() {
            *p = (xmask >> e & 1) as i64;
        }
        for ymask in 0..y_patterns {
            scanned += 1;
            for v in 0..model.num_y {
                point[d + v] = (ymask >> v & 1) as i64;
            }
            if model.holds_at(&point) {
                projected.insert((0..d).filter(|&e| xmask >> e & 1 == 1).collect());
                break;
            }
        }
    }
    let expected: BTreeSet<Vec<usize>> = enumerate_spanning_trees(n, MAX_N)?
        .into_iter()
        .filter(|t| variant.accepts(t))
        .map(|t| t.edges().to_vec())
        .collect();
    let label = |e: &Vec<usize>| edge_label(e, n);
    Ok(FeasibleSetReport {
        variant: variant.clone(),
        n,
        repaired: repair,
        assignments_scanned: scanned,
        projected: projected.len(),
        expected: expected.len(),
        extra: projected.difference(&expected).map(label).collect(),
        missing: expected.difference(&projected).map(label).collect(),
    })
}
