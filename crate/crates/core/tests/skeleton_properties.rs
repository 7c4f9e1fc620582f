//! Skeleton adjacency against a separating-hyperplane formulation.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use treeskel::clique::clique_number;
use treeskel::constructions::{hp_vertex_set, tsp_vertex_set};
use treeskel::graph::DEFAULT_MAX_N;
use treeskel::lp::{LpProblem, OptResult};
use treeskel::skeleton::{
    adjacent, adjacent_unreduced, build_skeleton, AdjacencyOracle, CharVector, Family, VertexSet, DEFAULT_PAIR_BUDGET,
};
use treeskel::Rational;

/// `[x, y]` is an edge iff some `c` has `c·x = c·y` and `c·x >= c·z + t` for
/// every other vertex `z` with `t > 0`. Maximizes `t` with `c ∈ [-1, 1]^d`.
fn edge_by_hyperplane(x: &CharVector, y: &CharVector, others: &[&CharVector]) -> bool {
    if others.is_empty() {
        return true;
    }
    let d = x.len();
    let t = d;
    let mut p = LpProblem::new(d + 1);
    for j in 0..d {
        p.set_bounds(j, Some(-Rational::one()), Some(Rational::one()));
    }
    p.set_bounds(t, None, Some(Rational::one()));
    let diff = |a: &CharVector, b: &CharVector| -> Vec<(usize, Rational)> {
        (0..d)
            .filter_map(|j| {
                let v = i64::from(a.get(j)) - i64::from(b.get(j));
                (v != 0).then(|| (j, Rational::from_integer(v.into())))
            })
            .collect()
    };
    p.add_equality(diff(x, y), Rational::zero());
    for z in others {
        let mut row = diff(x, z);
        row.push((t, -Rational::one()));
        p.add_ge(row, Rational::zero());
    }
    p.set_objective(vec![(t, -Rational::one())]);
    match p.optimize() {
        OptResult::Optimal { value, .. } => value < Rational::zero(),
        other => panic!("hyperplane LP: {other:?}"),
    }
}

fn check_against_hyperplane(vs: &VertexSet) {
    let g = build_skeleton(vs, AdjacencyOracle::Lp, DEFAULT_PAIR_BUDGET).unwrap();
    let v = vs.vectors();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let others: Vec<&CharVector> = (0..v.len()).filter(|&k| k != i && k != j).map(|k| &v[k]).collect();
            assert_eq!(
                g.is_adjacent(i, j),
                edge_by_hyperplane(&v[i], &v[j], &others),
                "{} pair {} {}",
                vs.family(),
                vs.label(i),
                vs.label(j)
            );
        }
    }
}

#[test]
fn random_tree_subsets_match_hyperplane_oracle() {
    let all = VertexSet::for_family(4, Family::Mst, DEFAULT_MAX_N).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..25 {
        let mut vectors = all.vectors().to_vec();
        vectors.shuffle(&mut rng);
        vectors.truncate(3 + trial % 10);
        let vs = VertexSet::new(4, Family::Construction { name: format!("subset-{trial}") }, vectors).unwrap();
        check_against_hyperplane(&vs);
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                assert_eq!(adjacent(i, j, &vs).unwrap(), adjacent_unreduced(i, j, &vs).unwrap());
            }
        }
    }
}

#[test]
fn constrained_families_match_hyperplane_oracle() {
    for family in [Family::Lcmst { k: 2 }, Family::Dcmst { k: 2 }, Family::Svmst { subset: [0, 1, 2].into() }] {
        let vs = VertexSet::for_family(4, family, DEFAULT_MAX_N).unwrap();
        check_against_hyperplane(&vs);
    }
    check_against_hyperplane(&hp_vertex_set(5, &(0..5).collect(), 0, 4).unwrap());
    check_against_hyperplane(&tsp_vertex_set(5, &(0..5).collect()).unwrap());
}

#[test]
fn small_tsp_and_path_skeletons() {
    // on K_5 the complement of a 5-cycle is a 5-cycle, and every such pair sums
    // to the all-ones vector, so exactly those 6 pairs are non-adjacent
    let tsp = tsp_vertex_set(5, &(0..5).collect()).unwrap();
    let g = build_skeleton(&tsp, AdjacencyOracle::Lp, DEFAULT_PAIR_BUDGET).unwrap();
    assert_eq!(g.num_edges(), 12 * 11 / 2 - 6);
    for i in 0..tsp.len() {
        for j in i + 1..tsp.len() {
            let complementary = tsp.vectors()[i].symmetric_difference(&tsp.vectors()[j]) == 10;
            assert_eq!(g.is_adjacent(i, j), !complementary);
        }
    }
    let hp = hp_vertex_set(5, &(0..5).collect(), 0, 4).unwrap();
    let h = build_skeleton(&hp, AdjacencyOracle::Lp, DEFAULT_PAIR_BUDGET).unwrap();
    let c = clique_number(&h);
    assert!(h.is_clique(&c.witness));
    assert_eq!(c.size, 6);
}

#[test]
fn mst_skeleton_degrees_match_swap_counts() {
    // tree-polytope edges are exactly the single-edge swaps
    let vs = VertexSet::for_family(5, Family::Mst, DEFAULT_MAX_N).unwrap();
    let g = build_skeleton(&vs, AdjacencyOracle::Lp, DEFAULT_PAIR_BUDGET).unwrap();
    for (i, deg) in g.degrees().into_iter().enumerate() {
        let swaps = (0..vs.len())
            .filter(|&j| j != i && vs.vectors()[i].symmetric_difference(&vs.vectors()[j]) == 2)
            .count();
        assert_eq!(deg, swaps, "{}", vs.label(i));
    }
}
