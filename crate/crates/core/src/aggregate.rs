//! Block aggregates with composable lazy updates.

use std::fmt::Debug;

/// Aggregate and lazy-update algebra stored per group.
///
/// Laws every implementation must satisfy:
///
/// * `combine` is associative and commutative with identity `agg_identity()`;
/// * `apply_agg(u, fold(block), block.len()) == fold(block.map(|v| apply_value(u, v)))`;
/// * applying `compose(older, newer)` equals applying `older` and then `newer`.
///
/// Path folds visit nodes in traversal order rather than path order, which is why
/// `combine` must commute.
pub trait Aggregator {
    type Value: Clone + Debug + PartialEq;
    type Agg: Clone + Debug + PartialEq;
    type Update: Clone + Debug + PartialEq;

    fn agg_identity() -> Self::Agg;
    fn agg_of_value(v: &Self::Value) -> Self::Agg;
    fn combine(a: &Self::Agg, b: &Self::Agg) -> Self::Agg;
    fn upd_identity() -> Self::Update;
    fn apply_value(u: &Self::Update, v: &Self::Value) -> Self::Value;
    fn apply_agg(u: &Self::Update, a: &Self::Agg, count: usize) -> Self::Agg;
    fn compose(older: &Self::Update, newer: &Self::Update) -> Self::Update;

    fn fold<'a, I>(values: I) -> Self::Agg
    where
        I: IntoIterator<Item = &'a Self::Value>,
        Self::Value: 'a,
    {
        values.into_iter().fold(Self::agg_identity(), |acc, v| {
            Self::combine(&acc, &Self::agg_of_value(v))
        })
    }
}

/// Sum of values, updates add a delta to every covered value.
#[derive(Debug, Clone, Copy, Default)]
pub struct SumAdd;

impl Aggregator for SumAdd {
    type Value = i64;
    type Agg = i64;
    type Update = i64;

    fn agg_identity() -> i64 {
        0
    }
    fn agg_of_value(v: &i64) -> i64 {
        *v
    }
    fn combine(a: &i64, b: &i64) -> i64 {
        a.wrapping_add(*b)
    }
    fn upd_identity() -> i64 {
        0
    }
    fn apply_value(u: &i64, v: &i64) -> i64 {
        v.wrapping_add(*u)
    }
    fn apply_agg(u: &i64, a: &i64, count: usize) -> i64 {
        a.wrapping_add(u.wrapping_mul(count as i64))
    }
    fn compose(older: &i64, newer: &i64) -> i64 {
        older.wrapping_add(*newer)
    }
}

/// Maximum of values, updates assign a constant. `None` is the empty maximum / no-op update.
#[derive(Debug, Clone, Copy, Default)]
pub struct MaxAssign;

impl Aggregator for MaxAssign {
    type Value = i64;
    type Agg = Option<i64>;
    type Update = Option<i64>;

    fn agg_identity() -> Option<i64> {
        None
    }
    fn agg_of_value(v: &i64) -> Option<i64> {
        Some(*v)
    }
    fn combine(a: &Option<i64>, b: &Option<i64>) -> Option<i64> {
        match (a, b) {
            (Some(x), Some(y)) => Some(*x.max(y)),
            (x, None) => *x,
            (None, y) => *y,
        }
    }
    fn upd_identity() -> Option<i64> {
        None
    }
    fn apply_value(u: &Option<i64>, v: &i64) -> i64 {
        u.unwrap_or(*v)
    }
    fn apply_agg(u: &Option<i64>, a: &Option<i64>, count: usize) -> Option<i64> {
        match u {
            Some(x) if count > 0 => Some(*x),
            _ => *a,
        }
    }
    fn compose(older: &Option<i64>, newer: &Option<i64>) -> Option<i64> {
        newer.or(*older)
    }
}
