use num_bigint::BigInt;
use treeskel::constructions::{lc_family_by_filter, lc_trees, LeafFamilySpec};
use treeskel::graph::{count_spanning_trees, enumerate_spanning_trees, filter_family, DEFAULT_MAX_N};
use treeskel::Constraint;

/// Stirling numbers of the second kind by the usual recurrence.
fn stirling2(n: usize, k: usize) -> u64 {
    let mut s = vec![vec![0u64; k + 1]; n + 1];
    s[0][0] = 1;
    for i in 1..=n {
        for j in 1..=k.min(i) {
            s[i][j] = j as u64 * s[i - 1][j] + s[i - 1][j - 1];
        }
    }
    s[n][k]
}

fn factorial(m: usize) -> u64 {
    (1..=m as u64).product()
}

#[test]
fn enumeration_matches_matrix_tree_and_cayley() {
    for n in 2..=7 {
        let trees = enumerate_spanning_trees(n, DEFAULT_MAX_N).unwrap();
        let cayley = (n as u64).pow(n as u32 - 2);
        assert_eq!(trees.len() as u64, cayley, "n={n}");
        assert_eq!(count_spanning_trees(n), BigInt::from(cayley), "n={n}");
        assert!(trees.windows(2).all(|w| w[0].edges() < w[1].edges()), "lexicographic order, n={n}");
    }
}

#[test]
fn leaf_count_distribution() {
    // labelled trees on n vertices with exactly k leaves: n!/k! * S(n-2, n-k)
    for n in 3..=7 {
        let trees = enumerate_spanning_trees(n, DEFAULT_MAX_N).unwrap();
        for k in 2..n {
            let got = trees.iter().filter(|t| t.leaf_count() == k).count() as u64;
            let want = factorial(n) / factorial(k) * stirling2(n - 2, n - k);
            assert_eq!(got, want, "n={n} k={k}");
        }
    }
}

#[test]
fn filters_are_monotone_in_k() {
    for n in 4..=6 {
        let trees = enumerate_spanning_trees(n, DEFAULT_MAX_N).unwrap();
        let mut prev_leaf = 0;
        let mut prev_deg = 0;
        for k in 1..n {
            let leaf = filter_family(n, &trees, &Constraint::LeafMax(k)).unwrap().len();
            let deg = filter_family(n, &trees, &Constraint::DegreeMax(k)).unwrap().len();
            assert!(leaf >= prev_leaf && deg >= prev_deg);
            prev_leaf = leaf;
            prev_deg = deg;
        }
        assert_eq!(prev_leaf, trees.len());
        assert_eq!(prev_deg, trees.len());
    }
}

#[test]
fn leaf_family_equals_filtered_trees() {
    for n in 4..=7 {
        for k in 2..=n - 2 {
            for on_u in 1..k {
                let spec = LeafFamilySpec::standard(n, k, on_u).unwrap();
                let mut built = lc_trees(&spec).unwrap();
                built.sort();
                let filtered = lc_family_by_filter(&spec, DEFAULT_MAX_N).unwrap();
                assert_eq!(built, filtered, "{spec}");
            }
        }
    }
}
