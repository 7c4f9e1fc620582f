//! Exact rational linear programming.
//!
//! A two-phase revised simplex method over `BigRational` with Bland's
//! smallest-index rule for both the entering and the leaving variable, so every
//! solve terminates and is reproducible. No floating point is used anywhere.
//!
//! Problems are stated over arbitrary variable bounds and converted internally
//! to the standard form `min c·x, A x = b, x >= 0, b >= 0`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use crate::Rational;

/// A sparse linear form `Σ coeff · x_var` paired with a right-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub coeffs: Vec<(usize, Rational)>,
    pub rhs: Rational,
}

impl LinearConstraint {
    pub fn new(coeffs: Vec<(usize, Rational)>, rhs: Rational) -> Self {
        LinearConstraint { coeffs, rhs }
    }

    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().map(|(j, a)| a * &x[*j]).sum()
    }
}

/// `min objective·x` subject to `equalities`, `inequalities` (read as `row·x <= rhs`)
/// and per-variable bounds. A `None` bound means unbounded in that direction.
#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub num_vars: usize,
    pub equalities: Vec<LinearConstraint>,
    pub inequalities: Vec<LinearConstraint>,
    pub lower_bounds: Vec<Option<Rational>>,
    pub upper_bounds: Vec<Option<Rational>>,
    pub objective: Option<Vec<(usize, Rational)>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityResult {
    Feasible(Vec<Rational>),
    Infeasible,
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityResult::Feasible(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OptResult {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpProblem {
    /// A problem on `num_vars` variables, all of them `>= 0` and without upper bounds.
    pub fn new(num_vars: usize) -> Self {
        LpProblem {
            num_vars,
            equalities: Vec::new(),
            inequalities: Vec::new(),
            lower_bounds: vec![Some(Rational::zero()); num_vars],
            upper_bounds: vec![None; num_vars],
            objective: None,
        }
    }

    fn check_coeffs(&self, coeffs: &[(usize, Rational)]) {
        for (j, _) in coeffs {
            assert!(*j < self.num_vars, "variable {j} out of range ({} vars)", self.num_vars);
        }
    }

    pub fn add_equality(&mut self, coeffs: Vec<(usize, Rational)>, rhs: Rational) {
        self.check_coeffs(&coeffs);
        self.equalities.push(LinearConstraint::new(coeffs, rhs));
    }

    /// `coeffs·x <= rhs`
    pub fn add_le(&mut self, coeffs: Vec<(usize, Rational)>, rhs: Rational) {
        self.check_coeffs(&coeffs);
        self.inequalities.push(LinearConstraint::new(coeffs, rhs));
    }

    /// `coeffs·x >= rhs`, stored negated.
    pub fn add_ge(&mut self, coeffs: Vec<(usize, Rational)>, rhs: Rational) {
        let coeffs = coeffs.into_iter().map(|(j, a)| (j, -a)).collect();
        self.add_le(coeffs, -rhs);
    }

    pub fn set_bounds(&mut self, var: usize, lower: Option<Rational>, upper: Option<Rational>) {
        self.lower_bounds[var] = lower;
        self.upper_bounds[var] = upper;
    }

    pub fn set_objective(&mut self, coeffs: Vec<(usize, Rational)>) {
        self.check_coeffs(&coeffs);
        self.objective = Some(coeffs);
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective
            .as_ref()
            .map(|c| c.iter().map(|(j, a)| a * &x[*j]).sum())
            .unwrap_or_else(Rational::zero)
    }

    /// Exact check that `x` satisfies every constraint and bound.
    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars {
            return false;
        }
        let bounds_ok = x.iter().enumerate().all(|(j, v)| {
            self.lower_bounds[j].as_ref().is_none_or(|l| v >= l)
                && self.upper_bounds[j].as_ref().is_none_or(|u| v <= u)
        });
        bounds_ok
            && self.equalities.iter().all(|r| r.lhs(x) == r.rhs)
            && self.inequalities.iter().all(|r| r.lhs(x) <= r.rhs)
    }

    pub fn feasible(&self) -> FeasibilityResult {
        let Some(std) = StandardForm::build(self, false) else {
            return FeasibilityResult::Infeasible;
        };
        let mut simplex = Simplex::new(&std);
        if !simplex.phase_one() {
            return FeasibilityResult::Infeasible;
        }
        FeasibilityResult::Feasible(std.recover(&simplex.column_values()))
    }

    /// Minimizes the objective (a missing objective is read as zero).
    pub fn optimize(&self) -> OptResult {
        let Some(std) = StandardForm::build(self, true) else {
            return OptResult::Infeasible;
        };
        let mut simplex = Simplex::new(&std);
        if !simplex.phase_one() {
            return OptResult::Infeasible;
        }
        if !simplex.phase_two(&std.cost) {
            return OptResult::Unbounded;
        }
        let point = std.recover(&simplex.column_values());
        OptResult::Optimal {
            value: self.objective_value(&point),
            point,
        }
    }
}

/// How an original variable is expressed through standard-form columns.
#[derive(Debug, Clone)]
enum VarMap {
    /// `x = offset + col`
    Shift { col: usize, offset: Rational },
    /// `x = offset - col`
    Flip { col: usize, offset: Rational },
    /// `x = pos - neg`
    Split { pos: usize, neg: usize },
}

struct StandardForm {
    num_cols: usize,
    columns: Vec<Vec<(usize, Rational)>>,
    rhs: Vec<Rational>,
    /// Row whose unit column is a slack usable as an initial basic variable.
    unit_slack: Vec<Option<usize>>,
    cost: Vec<Rational>,
    maps: Vec<VarMap>,
}

impl StandardForm {
    /// Returns `None` when a variable has crossing bounds.
    fn build(p: &LpProblem, with_cost: bool) -> Option<Self> {
        let mut maps = Vec::with_capacity(p.num_vars);
        let mut num_cols = 0;
        // (coeffs over structural columns, rhs) for upper-bound rows
        let mut bound_rows: Vec<(Vec<(usize, Rational)>, Rational)> = Vec::new();
        for j in 0..p.num_vars {
            match (&p.lower_bounds[j], &p.upper_bounds[j]) {
                (Some(l), hi) => {
                    maps.push(VarMap::Shift {
                        col: num_cols,
                        offset: l.clone(),
                    });
                    if let Some(u) = hi {
                        if u < l {
                            return None;
                        }
                        bound_rows.push((vec![(num_cols, Rational::one())], u - l));
                    }
                    num_cols += 1;
                }
                (None, Some(u)) => {
                    maps.push(VarMap::Flip {
                        col: num_cols,
                        offset: u.clone(),
                    });
                    num_cols += 1;
                }
                (None, None) => {
                    maps.push(VarMap::Split {
                        pos: num_cols,
                        neg: num_cols + 1,
                    });
                    num_cols += 2;
                }
            }
        }

        let substitute = |row: &LinearConstraint| -> (Vec<(usize, Rational)>, Rational) {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            let mut rhs = row.rhs.clone();
            for (j, a) in &row.coeffs {
                match &maps[*j] {
                    VarMap::Shift { col, offset } => {
                        rhs -= a * offset;
                        *acc.entry(*col).or_default() += a;
                    }
                    VarMap::Flip { col, offset } => {
                        rhs -= a * offset;
                        *acc.entry(*col).or_default() -= a;
                    }
                    VarMap::Split { pos, neg } => {
                        *acc.entry(*pos).or_default() += a;
                        *acc.entry(*neg).or_default() -= a;
                    }
                }
            }
            let coeffs = acc.into_iter().filter(|(_, a)| !a.is_zero()).collect();
            (coeffs, rhs)
        };

        // exact duplicates are dropped; everything else is kept as stated
        let mut seen_eq = BTreeSet::new();
        let mut eq_rows = Vec::new();
        for row in &p.equalities {
            let r = substitute(row);
            if seen_eq.insert(r.clone()) {
                eq_rows.push(r);
            }
        }
        let mut seen_le = BTreeSet::new();
        let mut le_rows = Vec::new();
        for r in p.inequalities.iter().map(substitute).chain(bound_rows) {
            if seen_le.insert(r.clone()) {
                le_rows.push(r);
            }
        }

        let num_structural = num_cols;
        let mut columns: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); num_structural];
        let mut rhs = Vec::new();
        let mut unit_slack = Vec::new();
        for (coeffs, b) in eq_rows {
            let r = rhs.len();
            let flip = b.is_negative();
            for (c, a) in coeffs {
                columns[c].push((r, if flip { -a } else { a }));
            }
            rhs.push(if flip { -b } else { b });
            unit_slack.push(None);
        }
        for (coeffs, b) in le_rows {
            let r = rhs.len();
            let flip = b.is_negative();
            for (c, a) in coeffs {
                columns[c].push((r, if flip { -a } else { a }));
            }
            let slack = columns.len();
            columns.push(vec![(r, if flip { -Rational::one() } else { Rational::one() })]);
            rhs.push(if flip { -b } else { b });
            unit_slack.push(if flip { None } else { Some(slack) });
        }
        let num_cols = columns.len();

        let mut cost = vec![Rational::zero(); num_cols];
        if with_cost {
            if let Some(obj) = &p.objective {
                for (j, a) in obj {
                    match &maps[*j] {
                        VarMap::Shift { col, .. } => cost[*col] += a,
                        VarMap::Flip { col, .. } => cost[*col] -= a,
                        VarMap::Split { pos, neg } => {
                            cost[*pos] += a;
                            cost[*neg] -= a;
                        }
                    }
                }
            }
        }

        Some(StandardForm {
            num_cols,
            columns,
            rhs,
            unit_slack,
            cost,
            maps,
        })
    }

    fn recover(&self, col_values: &[Rational]) -> Vec<Rational> {
        self.maps
            .iter()
            .map(|m| match m {
                VarMap::Shift { col, offset } => offset + &col_values[*col],
                VarMap::Flip { col, offset } => offset - &col_values[*col],
                VarMap::Split { pos, neg } => &col_values[*pos] - &col_values[*neg],
            })
            .collect()
    }
}

/// Revised simplex state with an explicit dense basis inverse.
///
/// Columns `0..num_cols` are the standard-form columns; column `num_cols + r`
/// is the artificial unit column of row `r`. Artificials never re-enter.
struct Simplex<'a> {
    std: &'a StandardForm,
    m: usize,
    binv: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    xb: Vec<Rational>,
}

impl<'a> Simplex<'a> {
    fn new(std: &'a StandardForm) -> Self {
        let m = std.rhs.len();
        let binv = (0..m)
            .map(|r| {
                let mut row = vec![Rational::zero(); m];
                row[r] = Rational::one();
                row
            })
            .collect();
        let basis: Vec<usize> = (0..m)
            .map(|r| std.unit_slack[r].unwrap_or(std.num_cols + r))
            .collect();
        let mut is_basic = vec![false; std.num_cols + m];
        for &b in &basis {
            is_basic[b] = true;
        }
        Simplex {
            std,
            m,
            binv,
            basis,
            is_basic,
            xb: std.rhs.clone(),
        }
    }

    fn is_artificial(&self, j: usize) -> bool {
        j >= self.std.num_cols
    }

    /// `B^{-1} A_j`
    fn column_in_basis(&self, j: usize) -> Vec<Rational> {
        let mut u = vec![Rational::zero(); self.m];
        for (r, a) in &self.std.columns[j] {
            for (i, ui) in u.iter_mut().enumerate() {
                let b = &self.binv[i][*r];
                if !b.is_zero() {
                    *ui += b * a;
                }
            }
        }
        u
    }

    fn pivot(&mut self, row: usize, enter: usize, u: &[Rational]) {
        let piv = u[row].clone();
        for v in self.binv[row].iter_mut() {
            if !v.is_zero() {
                *v /= &piv;
            }
        }
        self.xb[row] /= &piv;
        let pivot_row: Vec<(usize, Rational)> = self.binv[row]
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k, v.clone()))
            .collect();
        let xr = self.xb[row].clone();
        for (i, ui) in u.iter().enumerate() {
            if i == row || ui.is_zero() {
                continue;
            }
            for (k, v) in &pivot_row {
                let delta = ui * v;
                self.binv[i][*k] -= delta;
            }
            let delta = ui * &xr;
            self.xb[i] -= delta;
        }
        self.is_basic[self.basis[row]] = false;
        self.is_basic[enter] = true;
        self.basis[row] = enter;
    }

    /// Runs Bland-rule iterations for cost vector `cost` over the standard
    /// columns (artificial costs given by `artificial_cost`). Returns false if
    /// the objective is unbounded below.
    fn iterate(&mut self, cost: &[Rational], artificial_cost: &Rational) -> bool {
        let n = self.std.num_cols;
        loop {
            // duals y = c_B B^{-1}
            let mut y = vec![Rational::zero(); self.m];
            for i in 0..self.m {
                let b = self.basis[i];
                let c = if b < n { &cost[b] } else { artificial_cost };
                if c.is_zero() {
                    continue;
                }
                for (k, v) in self.binv[i].iter().enumerate() {
                    if !v.is_zero() {
                        y[k] += c * v;
                    }
                }
            }
            let entering = (0..n).find(|&j| {
                if self.is_basic[j] {
                    return false;
                }
                let mut d = cost[j].clone();
                for (r, a) in &self.std.columns[j] {
                    if !y[*r].is_zero() {
                        d -= &y[*r] * a;
                    }
                }
                d.is_negative()
            });
            let Some(enter) = entering else {
                return true;
            };
            let u = self.column_in_basis(enter);
            let mut leave: Option<(usize, Rational)> = None;
            for (i, ui) in u.iter().enumerate() {
                if !ui.is_positive() {
                    continue;
                }
                let ratio = &self.xb[i] / ui;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return false;
            };
            self.pivot(row, enter, &u);
        }
    }

    /// Minimizes the sum of artificials; true iff the system is feasible.
    /// Afterwards no artificial is basic except on linearly dependent rows,
    /// where it is pinned at zero.
    fn phase_one(&mut self) -> bool {
        if self.basis.iter().all(|&b| !self.is_artificial(b)) {
            return true;
        }
        let zero_cost = vec![Rational::zero(); self.std.num_cols];
        self.iterate(&zero_cost, &Rational::one());
        let infeasibility: Rational = (0..self.m)
            .filter(|&i| self.is_artificial(self.basis[i]))
            .map(|i| self.xb[i].clone())
            .sum();
        if infeasibility.is_positive() {
            return false;
        }
        for row in 0..self.m {
            if !self.is_artificial(self.basis[row]) {
                continue;
            }
            let candidate = (0..self.std.num_cols).find(|&j| {
                if self.is_basic[j] {
                    return false;
                }
                let v: Rational = self.std.columns[j]
                    .iter()
                    .map(|(r, a)| &self.binv[row][*r] * a)
                    .sum();
                !v.is_zero()
            });
            if let Some(j) = candidate {
                let u = self.column_in_basis(j);
                self.pivot(row, j, &u);
            }
        }
        true
    }

    fn phase_two(&mut self, cost: &[Rational]) -> bool {
        self.iterate(cost, &Rational::zero())
    }

    fn column_values(&self) -> Vec<Rational> {
        let mut vals = vec![Rational::zero(); self.std.num_cols];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.std.num_cols {
                vals[b] = self.xb[i].clone();
            }
        }
        vals
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    #[test]
    fn empty_interval_is_infeasible() {
        let mut p = LpProblem::new(1);
        p.add_le(vec![(0, r(1))], r(-1));
        assert_eq!(p.feasible(), FeasibilityResult::Infeasible);
        let mut p = LpProblem::new(1);
        p.set_bounds(0, Some(r(0)), Some(r(-1)));
        assert_eq!(p.feasible(), FeasibilityResult::Infeasible);
    }

    #[test]
    fn simplex_feasibility() {
        let mut p = LpProblem::new(2);
        p.add_equality(vec![(0, r(1)), (1, r(1))], r(1));
        match p.feasible() {
            FeasibilityResult::Feasible(x) => assert!(p.is_satisfied(&x)),
            FeasibilityResult::Infeasible => panic!("feasible system"),
        }
    }

    #[test]
    fn lower_bound_optimum() {
        let mut p = LpProblem::new(1);
        p.set_bounds(0, Some(r(3)), None);
        p.set_objective(vec![(0, r(1))]);
        assert_eq!(
            p.optimize(),
            OptResult::Optimal {
                value: r(3),
                point: vec![r(3)]
            }
        );
    }

    #[test]
    fn simplex_sum_optimum() {
        let mut p = LpProblem::new(2);
        p.add_equality(vec![(0, r(1)), (1, r(1))], r(1));
        p.set_objective(vec![(0, r(1)), (1, r(1))]);
        match p.optimize() {
            OptResult::Optimal { value, point } => {
                assert_eq!(value, r(1));
                assert!(p.is_satisfied(&point));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbounded_and_free_variables() {
        let mut p = LpProblem::new(1);
        p.set_bounds(0, None, None);
        p.set_objective(vec![(0, r(1))]);
        assert_eq!(p.optimize(), OptResult::Unbounded);

        // free x, y: minimize x subject to x - y = 2, y >= -3, y <= 5
        let mut p = LpProblem::new(2);
        p.set_bounds(0, None, None);
        p.set_bounds(1, Some(r(-3)), Some(r(5)));
        p.add_equality(vec![(0, r(1)), (1, r(-1))], r(2));
        p.set_objective(vec![(0, r(1))]);
        match p.optimize() {
            OptResult::Optimal { value, point } => {
                assert_eq!(value, r(-1));
                assert_eq!(point, vec![r(-1), r(-3)]);
            }
            other => panic!("{other:?}"),
        }

        // upper bound only: maximize x with x <= 7/2
        let mut p = LpProblem::new(1);
        p.set_bounds(0, None, Some(q(7, 2)));
        p.set_objective(vec![(0, r(-1))]);
        assert!(matches!(p.optimize(), OptResult::Optimal { value, .. } if value == q(-7, 2)));
    }

    #[test]
    fn redundant_equalities() {
        // x + y = 1 stated three times (two scaled), plus 2x + 2y = 2
        let mut p = LpProblem::new(2);
        p.add_equality(vec![(0, r(1)), (1, r(1))], r(1));
        p.add_equality(vec![(0, r(1)), (1, r(1))], r(1));
        p.add_equality(vec![(0, r(2)), (1, r(2))], r(2));
        p.add_equality(vec![(0, r(3)), (1, r(1))], r(2));
        p.set_objective(vec![(0, r(-1))]);
        match p.optimize() {
            OptResult::Optimal { value, point } => {
                assert_eq!(value, q(-1, 2));
                assert_eq!(point, vec![q(1, 2), q(1, 2)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example cycles under the textbook largest-coefficient rule.
        let mut p = LpProblem::new(4);
        p.add_le(vec![(0, q(1, 4)), (1, r(-60)), (2, q(-1, 25)), (3, r(9))], r(0));
        p.add_le(vec![(0, q(1, 2)), (1, r(-90)), (2, q(-1, 50)), (3, r(3))], r(0));
        p.add_le(vec![(2, r(1))], r(1));
        p.set_objective(vec![(0, q(-3, 4)), (1, r(150)), (2, q(-1, 50)), (3, r(6))]);
        match p.optimize() {
            OptResult::Optimal { value, point } => {
                assert_eq!(value, q(-1, 20));
                assert!(p.is_satisfied(&point));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn deterministic_witness() {
        let mut p = LpProblem::new(3);
        p.add_equality(vec![(0, r(1)), (1, r(1)), (2, r(1))], r(1));
        p.add_le(vec![(0, r(1)), (2, r(-1))], q(1, 3));
        assert_eq!(p.feasible(), p.feasible());
    }
}
