use rand::Rng;
use supertree::bst::{DeleteMode, RebuildBst, Threshold};
use supertree::gen::{generate_tree, rng, TreeKind};
use supertree::hlist::HListUniverse;
use supertree::oracle::{ArrayLists, SortedSet};
use supertree::Decomposition;

#[test]
fn ten_thousand_random_inserts() {
    let mut r = rng(1);
    let mut t = RebuildBst::<u64>::default();
    let mut o = SortedSet::new();
    for _ in 0..10_000 {
        let k = r.random_range(0..1_000_000);
        assert_eq!(t.insert(k), o.insert(k));
        assert!(t.height() <= Threshold::SqrtLog.limit(t.len()) as i32);
    }
    assert_eq!(t.in_order(), o.into_iter().collect::<Vec<_>>());
    t.audit().unwrap();
}

#[test]
fn sorted_inserts_force_rebuilds() {
    let mut t = RebuildBst::<u32>::default();
    for k in 0..5000 {
        t.insert(k);
        assert!(t.height() <= Threshold::SqrtLog.limit(t.len()) as i32);
    }
    assert!(t.rebuilds() > 0);
    assert_eq!(t.in_order(), (0..5000).collect::<Vec<_>>());
}

#[test]
fn interleaved_ops_in_both_modes() {
    for mode in [DeleteMode::Physical, DeleteMode::Logical] {
        let mut r = rng(2);
        let mut t = RebuildBst::<i32>::new(mode, Threshold::SqrtLog);
        let mut o = SortedSet::new();
        for op in 0..5000 {
            let k = r.random_range(0..300);
            match r.random_range(0..3) {
                0 => assert_eq!(t.insert(k), o.insert(k)),
                1 => assert_eq!(t.delete(&k), o.remove(&k)),
                _ => assert_eq!(t.contains(&k), o.contains(&k)),
            }
            assert_eq!(t.len(), o.len());
            if op % 250 == 0 {
                t.audit().unwrap();
            }
        }
        assert_eq!(t.in_order(), o.iter().copied().collect::<Vec<_>>());
    }
}

#[test]
fn every_distance_query_matches_array() {
    let mut r = rng(3);
    for h in [1, 2, 3, 5] {
        for _ in 0..3 {
            let mut u = HListUniverse::<()>::new(h).unwrap();
            let mut o = ArrayLists::default();
            let a = u.new_list(r.random_range(1..=100));
            let b = u.new_list(r.random_range(1..=100));
            o.push_list(a.clone());
            o.push_list(b.clone());
            let (x, y) = (a[r.random_range(0..2) * (a.len() - 1)], b[0]);
            u.concatenate(x, y).unwrap();
            o.concatenate(x, y);
            u.audit().unwrap();
            for x in 0..u.len() {
                for dir in 0..2 {
                    let toward = u.neighbors(x)[dir];
                    assert_eq!(u.find_endpoint(x, dir), o.endpoint(x, toward));
                    for d in 0..=u.len() {
                        assert_eq!(
                            u.element_at_distance(x, dir, d),
                            o.at_distance(x, toward, d)
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn build_steps_grow_linearly() {
    for kind in [
        TreeKind::Chain,
        TreeKind::RandomAttach,
        TreeKind::Caterpillar,
    ] {
        let per_node: Vec<f64> = [2_000, 8_000, 32_000]
            .iter()
            .map(|&n| {
                let d = Decomposition::build_default(generate_tree(kind, n, 4));
                d.build_steps() as f64 / n as f64
            })
            .collect();
        let (lo, hi) = per_node
            .iter()
            .fold((f64::MAX, 0f64), |(lo, hi), &x| (lo.min(x), hi.max(x)));
        assert!(hi <= 1.5 * lo, "{kind}: steps per node {per_node:?}");
    }
}
