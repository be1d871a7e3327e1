//! H-lists: doubly linked lists where every element also links to the elements exactly
//! `h` positions away on either side.
//!
//! Neither link slot means "left" or "right": concatenation and splitting can flip a
//! list's orientation, so traversal always continues away from the element it came
//! from. The invariant that ties the two link kinds together is that `hv[k]` points
//! in the same direction as `v[k]`.
//!
//! Endpoint and distance queries cost O(h + len/h); concatenate and split cost O(h).

use std::cell::Cell;

use thiserror::Error;

pub type ElemId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HListError {
    #[error("h must be at least 1")]
    InvalidH,
    #[error("no element {0}")]
    UnknownElement(ElemId),
    #[error("{y} is not a neighbor of {x}")]
    NotAdjacent { x: ElemId, y: ElemId },
    #[error("{0} is not a list endpoint")]
    NotEndpoint(ElemId),
    #[error("{x} and {y} are ends of the same list")]
    SameList { x: ElemId, y: ElemId },
}

#[derive(Debug, Clone)]
struct Elem<T> {
    payload: T,
    v: [Option<ElemId>; 2],
    hv: [Option<ElemId>; 2],
}

/// Arena of elements sharing one `h`.
#[derive(Debug, Clone)]
pub struct HListUniverse<T = ()> {
    h: usize,
    elems: Vec<Elem<T>>,
    steps: Cell<u64>,
}

impl<T> HListUniverse<T> {
    pub fn new(h: usize) -> Result<Self, HListError> {
        if h == 0 {
            return Err(HListError::InvalidH);
        }
        Ok(Self {
            h,
            elems: Vec::new(),
            steps: Cell::new(0),
        })
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn steps(&self) -> u64 {
        self.steps.get()
    }

    #[inline]
    fn tick(&self) {
        self.steps.set(self.steps.get() + 1);
    }

    pub fn payload(&self, x: ElemId) -> &T {
        &self.elems[x].payload
    }

    pub fn neighbors(&self, x: ElemId) -> [Option<ElemId>; 2] {
        self.elems[x].v
    }

    pub fn hneighbors(&self, x: ElemId) -> [Option<ElemId>; 2] {
        self.elems[x].hv
    }

    fn check(&self, x: ElemId) -> Result<(), HListError> {
        if x < self.elems.len() {
            Ok(())
        } else {
            Err(HListError::UnknownElement(x))
        }
    }

    /// Appends a fresh list holding `payloads` in order. Slot 0 points toward the
    /// first element, slot 1 toward the last. Returns the new element ids.
    pub fn push_list(&mut self, payloads: impl IntoIterator<Item = T>) -> Vec<ElemId> {
        let start = self.elems.len();
        self.elems.extend(payloads.into_iter().map(|payload| Elem {
            payload,
            v: [None; 2],
            hv: [None; 2],
        }));
        let end = self.elems.len();
        let h = self.h;
        for x in start..end {
            let back = |d: usize| x.checked_sub(d).filter(|&y| y >= start);
            let fwd = |d: usize| Some(x + d).filter(|&y| y < end);
            self.elems[x].v = [back(1), fwd(1)];
            self.elems[x].hv = [back(h), fwd(h)];
        }
        (start..end).collect()
    }

    pub fn opposite_neighbor(&self, x: ElemId, y: Option<ElemId>) -> Option<ElemId> {
        let v = &self.elems[x].v;
        if y == v[1] {
            v[0]
        } else {
            v[1]
        }
    }

    pub fn opposite_hneighbor(&self, x: ElemId, y: Option<ElemId>) -> Option<ElemId> {
        let hv = &self.elems[x].hv;
        if y == hv[1] {
            hv[0]
        } else {
            hv[1]
        }
    }

    pub fn neighbor_index(&self, x: ElemId, y: ElemId) -> Result<usize, HListError> {
        self.elems[x]
            .v
            .iter()
            .position(|&s| s == Some(y))
            .ok_or(HListError::NotAdjacent { x, y })
    }

    pub fn hneighbor_index(&self, x: ElemId, y: ElemId) -> Result<usize, HListError> {
        self.elems[x]
            .hv
            .iter()
            .position(|&s| s == Some(y))
            .ok_or(HListError::NotAdjacent { x, y })
    }

    // Unchecked variants used on links known to be symmetric.
    #[inline]
    fn nidx(&self, x: ElemId, y: ElemId) -> usize {
        usize::from(self.elems[x].v[0] != Some(y))
    }

    #[inline]
    fn hidx(&self, x: ElemId, y: ElemId) -> usize {
        usize::from(self.elems[x].hv[0] != Some(y))
    }

    /// The endpoint reached by walking from `x` through slot `dir`.
    pub fn find_endpoint(&self, x: ElemId, dir: usize) -> ElemId {
        let (mut y, mut dir) = (x, dir);
        if self.elems[x].v[dir].is_none() {
            return x;
        }
        while let Some(next) = self.elems[y].hv[dir] {
            self.tick();
            dir = 1 - self.hidx(next, y);
            y = next;
        }
        while let Some(next) = self.elems[y].v[dir] {
            self.tick();
            dir = 1 - self.nidx(next, y);
            y = next;
        }
        y
    }

    /// The element exactly `distance` positions from `x` through slot `dir`, if any.
    pub fn element_at_distance(&self, x: ElemId, dir: usize, distance: usize) -> Option<ElemId> {
        let (mut y, mut dir, mut cnt) = (x, dir, 0);
        while cnt + self.h <= distance {
            let Some(next) = self.elems[y].hv[dir] else {
                break;
            };
            self.tick();
            dir = 1 - self.hidx(next, y);
            y = next;
            cnt += self.h;
        }
        while cnt < distance {
            let Some(next) = self.elems[y].v[dir] else {
                break;
            };
            self.tick();
            dir = 1 - self.nidx(next, y);
            y = next;
            cnt += 1;
        }
        (cnt == distance).then_some(y)
    }

    /// Up to `h` `(element, slot toward the junction)` pairs, starting at `x` and
    /// walking away from its neighbor `y`.
    fn boundary(&self, x: ElemId, y: ElemId, slot: usize) -> Vec<(ElemId, usize)> {
        let mut out = Vec::with_capacity(self.h);
        out.push((x, slot));
        let mut a = x;
        let mut b = self.opposite_neighbor(x, Some(y));
        while let Some(bb) = b {
            if out.len() >= self.h {
                break;
            }
            self.tick();
            out.push((bb, self.nidx(bb, a)));
            let c = self.opposite_neighbor(bb, Some(a));
            a = bb;
            b = c;
        }
        out
    }

    /// Joins the lists ending at `x` and `y` by making `x` and `y` neighbors.
    pub fn concatenate(&mut self, x: ElemId, y: ElemId) -> Result<(), HListError> {
        self.check(x)?;
        self.check(y)?;
        let free_slot = |e: ElemId| self.elems[e].v.iter().position(Option::is_none);
        let i = free_slot(x).ok_or(HListError::NotEndpoint(x))?;
        let j = free_slot(y).ok_or(HListError::NotEndpoint(y))?;
        if x == y || self.find_endpoint(x, 1 - i) == y {
            return Err(HListError::SameList { x, y });
        }

        self.elems[x].v[i] = Some(y);
        self.elems[y].v[j] = Some(x);
        let lx = self.boundary(x, y, i);
        let ly = self.boundary(y, x, j);
        for c in (1..=lx.len()).rev() {
            let k = self.h - c + 1;
            if k > ly.len() {
                break;
            }
            self.tick();
            let (a, b) = lx[c - 1];
            let (d, e) = ly[k - 1];
            self.elems[a].hv[b] = Some(d);
            self.elems[d].hv[e] = Some(a);
        }
        Ok(())
    }

    /// Breaks the link between neighbors `x` and `y`.
    pub fn split(&mut self, x: ElemId, y: ElemId) -> Result<(), HListError> {
        self.check(x)?;
        self.check(y)?;
        let i = self.neighbor_index(x, y)?;
        let j = self.neighbor_index(y, x)?;
        let lx = self.boundary(x, y, i);
        let ly = self.boundary(y, x, j);
        for (a, b) in lx.into_iter().chain(ly) {
            self.tick();
            self.elems[a].hv[b] = None;
        }
        self.elems[x].v[i] = None;
        self.elems[y].v[j] = None;
        Ok(())
    }

    /// Walks `d` plain links from `x` through slot `dir`, without counting steps.
    fn walk_plain(&self, x: ElemId, dir: usize, d: usize) -> Option<ElemId> {
        let (mut y, mut dir) = (x, dir);
        for _ in 0..d {
            let next = self.elems[y].v[dir]?;
            dir = 1 - self.nidx(next, y);
            y = next;
        }
        Some(y)
    }

    /// Checks neighbor symmetry and that every skip link lands exactly `h` plain links
    /// away in the direction of the same-numbered neighbor slot.
    pub fn audit(&self) -> Result<(), String> {
        for x in 0..self.elems.len() {
            let e = &self.elems[x];
            if e.v[0].is_some() && e.v[0] == e.v[1] {
                return Err(format!("{x}: both neighbor slots hold {:?}", e.v[0]));
            }
            for k in 0..2 {
                if let Some(y) = e.v[k] {
                    let back = self.elems[y].v.iter().filter(|&&s| s == Some(x)).count();
                    if back != 1 {
                        return Err(format!("{x}: neighbor {y} links back {back} times"));
                    }
                }
                let expect = match e.v[k] {
                    None => None,
                    Some(_) => self.walk_plain(x, k, self.h),
                };
                if e.hv[k] != expect {
                    return Err(format!(
                        "{x}: hv[{k}] = {:?}, element {} away is {expect:?}",
                        e.hv[k], self.h
                    ));
                }
            }
        }
        Ok(())
    }
}

impl HListUniverse<()> {
    /// Appends a fresh list of `len` unit payloads.
    pub fn new_list(&mut self, len: usize) -> Vec<ElemId> {
        self.push_list(std::iter::repeat_n((), len))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn universe(h: usize) -> HListUniverse {
        HListUniverse::new(h).unwrap()
    }

    #[test]
    fn opposite_and_index_functions() {
        let mut u = universe(2);
        let ids = u.new_list(3);
        let (a, x, b) = (ids[0], ids[1], ids[2]);
        assert_eq!(u.opposite_neighbor(x, Some(b)), Some(a));
        assert_eq!(u.opposite_neighbor(x, Some(a)), Some(b));
        assert_eq!(u.opposite_neighbor(a, Some(x)), None);
        assert_eq!(u.neighbor_index(x, a), Ok(0));
        assert_eq!(u.neighbor_index(x, b), Ok(1));
        assert_eq!(
            u.neighbor_index(a, b),
            Err(HListError::NotAdjacent { x: a, y: b })
        );
        assert_eq!(u.hneighbor_index(a, b), Ok(1));
        assert_eq!(u.opposite_hneighbor(a, Some(b)), None);
    }

    #[test]
    fn endpoints_and_distances() {
        let mut u = universe(2);
        let e = u.new_list(5);
        assert_eq!(u.find_endpoint(e[2], 1), e[4]);
        assert_eq!(u.find_endpoint(e[2], 0), e[0]);
        assert_eq!(u.find_endpoint(e[0], 0), e[0]);
        assert_eq!(u.element_at_distance(e[1], 1, 3), Some(e[4]));
        assert_eq!(u.element_at_distance(e[1], 1, 4), None);
        assert_eq!(u.element_at_distance(e[1], 1, 0), Some(e[1]));
        assert_eq!(u.element_at_distance(e[1], 0, 1), Some(e[0]));
        assert_eq!(u.element_at_distance(e[1], 0, 2), None);
        u.audit().unwrap();
    }

    #[test]
    fn singletons() {
        let mut u = universe(2);
        let a = u.new_list(1)[0];
        let b = u.new_list(1)[0];
        assert_eq!(u.find_endpoint(a, 0), a);
        assert_eq!(u.find_endpoint(a, 1), a);
        u.concatenate(a, b).unwrap();
        assert_eq!(u.hneighbors(a), [None, None]);
        assert_eq!(u.hneighbors(b), [None, None]);
        u.audit().unwrap();
        u.split(a, b).unwrap();
        assert_eq!(u.neighbors(a), [None, None]);
        assert_eq!(u.neighbors(b), [None, None]);
        u.audit().unwrap();
    }

    #[test]
    fn concatenate_matches_fresh_list() {
        let mut u = universe(2);
        let l = u.new_list(3);
        let r = u.new_list(3);
        u.concatenate(l[2], r[0]).unwrap();
        u.audit().unwrap();
        let order: Vec<ElemId> = (0..6)
            .map(|d| u.element_at_distance(l[0], 1, d).unwrap())
            .collect();
        assert_eq!(order, vec![0, 1, 2, 3, 4, 5]);
        // same skip links as a fresh 6-element list
        let mut fresh = universe(2);
        fresh.new_list(6);
        for x in 0..6 {
            assert_eq!(u.hneighbors(x), fresh.hneighbors(x), "element {x}");
        }
    }

    #[test]
    fn concatenate_flipped_orientation() {
        let mut u = universe(3);
        let l = u.new_list(4);
        let r = u.new_list(5);
        // join head to head: r is traversed backwards from l's point of view
        u.concatenate(l[0], r[0]).unwrap();
        u.audit().unwrap();
        assert_eq!(u.find_endpoint(l[3], 0), r[4]);
        assert_eq!(u.find_endpoint(r[4], 0), l[3]);
        assert_eq!(u.element_at_distance(l[2], 0, 5), Some(r[2]));
    }

    #[test]
    fn concatenate_errors() {
        let mut u = universe(2);
        let l = u.new_list(4);
        assert_eq!(
            u.concatenate(l[1], l[3]),
            Err(HListError::NotEndpoint(l[1]))
        );
        assert_eq!(
            u.concatenate(l[0], l[3]),
            Err(HListError::SameList { x: l[0], y: l[3] })
        );
        assert_eq!(
            u.concatenate(l[0], l[0]),
            Err(HListError::SameList { x: l[0], y: l[0] })
        );
        assert_eq!(u.concatenate(l[0], 99), Err(HListError::UnknownElement(99)));
        assert!(matches!(
            u.split(l[0], l[2]),
            Err(HListError::NotAdjacent { .. })
        ));
        assert_eq!(
            HListUniverse::<()>::new(0).unwrap_err(),
            HListError::InvalidH
        );
    }

    #[test]
    fn split_middle_matches_fresh_lists() {
        let mut u = universe(2);
        let l = u.new_list(6);
        u.split(l[2], l[3]).unwrap();
        u.audit().unwrap();
        let mut fresh = universe(2);
        fresh.new_list(3);
        fresh.new_list(3);
        for x in 0..6 {
            assert_eq!(u.hneighbors(x), fresh.hneighbors(x), "element {x}");
            assert_eq!(u.neighbors(x), fresh.neighbors(x), "element {x}");
        }
    }

    #[test]
    fn h_one_skip_links_equal_neighbors() {
        let mut u = universe(1);
        let a = u.new_list(3);
        let b = u.new_list(2);
        u.concatenate(a[0], b[1]).unwrap();
        u.audit().unwrap();
        for x in 0..5 {
            assert_eq!(u.hneighbors(x), u.neighbors(x));
        }
    }
}
