use proptest::prelude::*;
use supertree::ancestor::AncestorColorIndex;
use supertree::color::ColorState;
use supertree::oracle::{self, NaiveColors, NaivePaths};
use supertree::{Decomposition, MaxAssign, PathStore, RootedTree, SumAdd};

/// Parent lists where node `i` attaches to one of the `w` nodes before it.
fn tree_strategy(max_n: usize) -> impl Strategy<Value = RootedTree> {
    (
        1..=max_n,
        prop_oneof![Just(1usize), Just(2), Just(4), Just(usize::MAX)],
    )
        .prop_flat_map(|(n, w)| {
            let picks = proptest::collection::vec(any::<prop::sample::Index>(), n);
            picks.prop_map(move |picks| {
                let parents = (0..n)
                    .map(|i| {
                        (i > 0).then(|| {
                            let lo = i.saturating_sub(w);
                            lo + picks[i].index(i - lo)
                        })
                    })
                    .collect();
                RootedTree::from_parents(parents).unwrap()
            })
        })
}

#[derive(Debug, Clone)]
enum PathOp {
    Lca(usize, usize),
    Query(usize, usize),
    Update(usize, usize, i64),
    PointQuery(usize),
    PointUpdate(usize, i64),
}

fn path_ops(len: usize) -> impl Strategy<Value = Vec<PathOp>> {
    let op =
        (0..5u8, any::<usize>(), any::<usize>(), -20i64..=20).prop_map(|(k, i, j, d)| match k {
            0 => PathOp::Lca(i, j),
            1 => PathOp::Query(i, j),
            2 => PathOp::Update(i, j, d),
            3 => PathOp::PointQuery(i),
            _ => PathOp::PointUpdate(i, d),
        });
    proptest::collection::vec(op, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn decomposition_invariants(t in tree_strategy(200), h in 1usize..=9) {
        let d = Decomposition::build(t, h).unwrap();
        prop_assert_eq!(oracle::check_decomposition(&d), Ok(()));
    }

    #[test]
    fn sum_paths_match_oracle(t in tree_strategy(60), h in 1usize..=8, ops in path_ops(120)) {
        let n = t.len();
        let values: Vec<i64> = (0..n as i64).map(|v| v * 3 - 40).collect();
        let mut ps = PathStore::<SumAdd>::new(Decomposition::build(t.clone(), h).unwrap(), values.clone());
        let mut o = NaivePaths::<SumAdd>::new(t, values);
        for op in ops {
            match op {
                PathOp::Lca(i, j) => prop_assert_eq!(ps.find_lca(i % n, j % n), o.lca(i % n, j % n)),
                PathOp::Query(i, j) => prop_assert_eq!(ps.path_query(i % n, j % n), o.path_query(i % n, j % n)),
                PathOp::Update(i, j, d) => {
                    ps.path_update(i % n, j % n, &d);
                    o.path_update(i % n, j % n, &d);
                }
                PathOp::PointQuery(x) => prop_assert_eq!(ps.point_query(x % n), o.point_query(x % n)),
                PathOp::PointUpdate(x, d) => {
                    ps.point_update(x % n, &d);
                    o.point_update(x % n, &d);
                }
            }
            prop_assert_eq!(ps.true_values(), o.values.clone());
        }
        prop_assert_eq!(ps.audit(), Ok(()));
    }

    #[test]
    fn max_assign_paths_match_oracle(t in tree_strategy(60), h in 1usize..=8, ops in path_ops(120)) {
        let n = t.len();
        let values: Vec<i64> = (0..n as i64).map(|v| (v * 37) % 23).collect();
        let mut ps = PathStore::<MaxAssign>::new(Decomposition::build(t.clone(), h).unwrap(), values.clone());
        let mut o = NaivePaths::<MaxAssign>::new(t, values);
        for op in ops {
            match op {
                PathOp::Query(i, j) | PathOp::Lca(i, j) => {
                    prop_assert_eq!(ps.path_query(i % n, j % n), o.path_query(i % n, j % n))
                }
                PathOp::Update(i, j, d) => {
                    ps.path_update(i % n, j % n, &Some(d));
                    o.path_update(i % n, j % n, &Some(d));
                }
                PathOp::PointQuery(x) => prop_assert_eq!(ps.point_query(x % n), o.point_query(x % n)),
                PathOp::PointUpdate(x, d) => {
                    ps.point_update(x % n, &Some(d));
                    o.point_update(x % n, &Some(d));
                }
            }
        }
        prop_assert_eq!(ps.true_values(), o.values);
    }

    #[test]
    fn recoloring_matches_oracle(
        t in tree_strategy(60),
        h in 1usize..=8,
        ops in proptest::collection::vec((any::<bool>(), any::<usize>(), any::<usize>(), 0i64..4, 0i64..4), 150),
    ) {
        let n = t.len();
        let values: Vec<i64> = (0..n as i64).map(|v| v * 5 - 17).collect();
        let colors: Vec<i64> = (0..n as i64).map(|v| (v * 7) % 4).collect();
        let mut cs = ColorState::new(Decomposition::build(t.clone(), h).unwrap(), values.clone(), colors.clone());
        let mut o = NaiveColors::new(t, values, colors);
        for (k, (query, i, j, a, b)) in ops.into_iter().enumerate() {
            let (i, j) = (i % n, j % n);
            if query {
                prop_assert_eq!(cs.color_query(i, j, a), o.color_fold(i, j, a));
            } else {
                cs.recolor_path(i, j, a, b);
                o.recolor(i, j, a, b);
            }
            if k % 50 == 49 {
                prop_assert_eq!(cs.audit(), Ok(()));
            }
        }
        prop_assert_eq!(cs.current_colors(), o.colors);
    }

    #[test]
    fn ancestor_pairs_match_oracle(
        t in tree_strategy(120),
        h in 1usize..=10,
        seed in proptest::collection::vec(0i64..4, 120),
    ) {
        let colors = seed[..t.len()].to_vec();
        let idx = AncestorColorIndex::build(Decomposition::build(t.clone(), h).unwrap(), &colors);
        prop_assert_eq!(idx.audit(), Ok(()));
        let mut total = 0;
        for a in 0..4 {
            for b in 0..4 {
                let q = idx.query(a, b);
                prop_assert_eq!(q, oracle::ancestor_pairs(&t, &colors, a, b));
                total += q;
            }
        }
        prop_assert_eq!(total, t.levels().iter().map(|&l| l as u64).sum::<u64>());
    }
}
