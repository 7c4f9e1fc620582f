//! The simplex against brute-force vertex enumeration on small boxed LPs.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treeskel::lp::{FeasibilityResult, LpProblem, OptResult};
use treeskel::Rational;

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// A hyperplane `a·x = b` that may be tight at a vertex.
#[derive(Clone)]
struct Plane {
    a: Vec<Rational>,
    b: Rational,
}

/// Solves the square system; `None` when singular.
fn solve_square(planes: &[&Plane], n: usize) -> Option<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = planes
        .iter()
        .map(|p| {
            let mut row = p.a.clone();
            row.push(p.b.clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = Rational::one() / &m[col][col];
        for cell in &mut m[col][col..] {
            *cell *= &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (cell, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *cell -= &f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

fn choose(n: usize, r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == r {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        cur.push(i);
        choose(n, r, i + 1, cur, out);
        cur.pop();
    }
}

/// Minimum over all basic feasible points, or `None` if there are none.
fn vertex_oracle(p: &LpProblem) -> Option<Rational> {
    let n = p.num_vars;
    let dense = |coeffs: &[(usize, Rational)]| {
        let mut a = vec![Rational::zero(); n];
        for (j, c) in coeffs {
            a[*j] += c;
        }
        a
    };
    let eqs: Vec<Plane> = p
        .equalities
        .iter()
        .map(|r| Plane {
            a: dense(&r.coeffs),
            b: r.rhs.clone(),
        })
        .collect();
    let mut others: Vec<Plane> = p
        .inequalities
        .iter()
        .map(|r| Plane {
            a: dense(&r.coeffs),
            b: r.rhs.clone(),
        })
        .collect();
    for j in 0..n {
        let mut unit = vec![Rational::zero(); n];
        unit[j] = Rational::one();
        for bound in [&p.lower_bounds[j], &p.upper_bounds[j]].into_iter().flatten() {
            others.push(Plane {
                a: unit.clone(),
                b: bound.clone(),
            });
        }
    }
    assert!(eqs.len() <= n, "generator keeps equalities at most square");
    let mut subsets = Vec::new();
    choose(others.len(), n - eqs.len(), 0, &mut Vec::new(), &mut subsets);
    let mut best: Option<Rational> = None;
    for s in subsets {
        let planes: Vec<&Plane> = eqs.iter().chain(s.iter().map(|&i| &others[i])).collect();
        let Some(x) = solve_square(&planes, n) else {
            continue;
        };
        if !p.is_satisfied(&x) {
            continue;
        }
        let v = p.objective_value(&x);
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    }
    best
}

fn random_problem(rng: &mut ChaCha8Rng) -> LpProblem {
    let n = rng.gen_range(1..=4);
    let mut p = LpProblem::new(n);
    for j in 0..n {
        let lo = rng.gen_range(-3..=1);
        let hi = lo + rng.gen_range(0..=4);
        p.set_bounds(j, Some(q(lo)), Some(q(hi)));
    }
    let coeffs = |rng: &mut ChaCha8Rng| -> Vec<(usize, Rational)> {
        (0..n)
            .filter_map(|j| {
                let c = rng.gen_range(-3..=3);
                (c != 0).then(|| (j, q(c)))
            })
            .collect()
    };
    for _ in 0..rng.gen_range(0..=4) {
        let c = coeffs(rng);
        let rhs = q(rng.gen_range(-6..=6));
        match rng.gen_range(0..3) {
            0 => p.add_le(c, rhs),
            1 => p.add_ge(c, rhs),
            _ if p.equalities.len() < n => p.add_equality(c, rhs),
            _ => p.add_le(c, rhs),
        }
    }
    let obj = (0..n).map(|j| (j, Rational::new(rng.gen_range(-5..=5).into(), rng.gen_range(1..=3).into()))).collect();
    p.set_objective(obj);
    p
}

#[test]
fn simplex_matches_vertex_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut feasible = 0;
    for trial in 0..400 {
        let p = random_problem(&mut rng);
        let want = vertex_oracle(&p);
        match (p.optimize(), &want) {
            (OptResult::Optimal { value, point }, Some(w)) => {
                assert_eq!(&value, w, "trial {trial}");
                assert!(p.is_satisfied(&point), "trial {trial}");
                feasible += 1;
            }
            (OptResult::Infeasible, None) => {}
            (got, _) => panic!("trial {trial}: simplex {got:?}, oracle {want:?}"),
        }
        match p.feasible() {
            FeasibilityResult::Feasible(x) => {
                assert!(want.is_some() && p.is_satisfied(&x), "trial {trial}")
            }
            FeasibilityResult::Infeasible => assert!(want.is_none(), "trial {trial}"),
        }
    }
    // the generator should exercise both outcomes
    assert!(feasible > 50 && feasible < 400, "{feasible} feasible");
}

#[test]
fn unbounded_direction_detected() {
    // min -x - y with x - y <= 1, x, y >= 0: unbounded along (1, 1)
    let mut p = LpProblem::new(2);
    p.add_le(vec![(0, q(1)), (1, q(-1))], q(1));
    p.set_objective(vec![(0, q(-1)), (1, q(-1))]);
    assert_eq!(p.optimize(), OptResult::Unbounded);
    // boxed, it is not
    p.set_bounds(1, Some(q(0)), Some(q(2)));
    match p.optimize() {
        OptResult::Optimal { value, .. } => assert_eq!(value, q(-5)),
        other => panic!("{other:?}"),
    }
}
