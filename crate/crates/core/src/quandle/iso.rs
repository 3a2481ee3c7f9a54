//! Isomorphism of small quandle tables by search.
//!
//! Elements are first colored by invariants and refined until stable; the
//! search then maps one element at a time within color classes, closing the
//! partial map under the operation after each choice.

use std::collections::BTreeMap;

use super::QuandleTable;
use crate::error::{Error, Result};

/// Default largest size accepted by the search.
pub const BRUTE_FORCE_LIMIT: usize = 16;

/// Cycle type of the right translation by `y`, plus how many elements it fixes
/// and how many elements `x` satisfy `y * x = y`.
fn base_signature(q: &QuandleTable, y: usize) -> Vec<usize> {
    let n = q.size();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = q.op(x, y);
            len += 1;
        }
        cycles.push(len);
    }
    cycles.sort_unstable();
    let stab = (0..n).filter(|&x| q.op(y, x) == y).count();
    let mut sig = vec![stab];
    sig.extend(cycles);
    sig
}

/// Colors of `y`, `x * y` and `y * x` as `y` runs over the table.
type Triple = (usize, usize, usize);

/// Stable joint coloring of both tables.
fn refine(q1: &QuandleTable, q2: &QuandleTable) -> (Vec<usize>, Vec<usize>) {
    fn relabel<K: Ord + Clone>(a: &[K], b: &[K]) -> (Vec<usize>, Vec<usize>) {
        let mut ids: BTreeMap<K, usize> = BTreeMap::new();
        for k in a.iter().chain(b) {
            let next = ids.len();
            ids.entry(k.clone()).or_insert(next);
        }
        // renumber in key order so labels do not depend on table order
        for (i, v) in ids.values_mut().enumerate() {
            *v = i;
        }
        (a.iter().map(|k| ids[k]).collect(), b.iter().map(|k| ids[k]).collect())
    }
    let s1: Vec<Vec<usize>> = (0..q1.size()).map(|y| base_signature(q1, y)).collect();
    let s2: Vec<Vec<usize>> = (0..q2.size()).map(|y| base_signature(q2, y)).collect();
    let (mut c1, mut c2) = relabel(&s1, &s2);
    loop {
        let step = |q: &QuandleTable, c: &[usize]| -> Vec<(usize, Vec<Triple>)> {
            (0..q.size())
                .map(|x| {
                    let mut around: Vec<Triple> =
                        (0..q.size()).map(|y| (c[y], c[q.op(x, y)], c[q.op(y, x)])).collect();
                    around.sort_unstable();
                    (c[x], around)
                })
                .collect()
        };
        let (n1, n2) = relabel(&step(q1, &c1), &step(q2, &c2));
        let classes = |c: &[usize], d: &[usize]| c.iter().chain(d).max().map_or(0, |m| m + 1);
        if classes(&n1, &n2) == classes(&c1, &c2) {
            return (n1, n2);
        }
        c1 = n1;
        c2 = n2;
    }
}

struct Search<'a> {
    q1: &'a QuandleTable,
    q2: &'a QuandleTable,
    c1: Vec<usize>,
    c2: Vec<usize>,
    fwd: Vec<Option<usize>>,
    bwd: Vec<Option<usize>>,
    assigned: Vec<usize>,
}

impl Search<'_> {
    fn set(&mut self, x: usize, y: usize) -> bool {
        match (self.fwd[x], self.bwd[y]) {
            (Some(z), _) => z == y,
            (None, Some(_)) => false,
            (None, None) if self.c1[x] != self.c2[y] => false,
            (None, None) => {
                self.fwd[x] = Some(y);
                self.bwd[y] = Some(x);
                self.assigned.push(x);
                true
            }
        }
    }

    /// Map `x ↦ y` and everything it forces. On failure the caller unwinds.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        let start = self.assigned.len();
        if !self.set(x, y) {
            return false;
        }
        let mut i = start;
        while i < self.assigned.len() {
            let a = self.assigned[i];
            let fa = self.fwd[a].unwrap();
            for j in 0..self.assigned.len() {
                let b = self.assigned[j];
                let fb = self.fwd[b].unwrap();
                if !self.set(self.q1.op(a, b), self.q2.op(fa, fb)) || !self.set(self.q1.op(b, a), self.q2.op(fb, fa)) {
                    return false;
                }
            }
            i += 1;
        }
        true
    }

    fn undo(&mut self, len: usize) {
        while self.assigned.len() > len {
            let x = self.assigned.pop().unwrap();
            let y = self.fwd[x].take().unwrap();
            self.bwd[y] = None;
        }
    }

    fn run(&mut self) -> bool {
        let n = self.q1.size();
        let mut class_size = vec![0usize; n + 1];
        for &c in &self.c1 {
            class_size[c] += 1;
        }
        let Some(x) = (0..n).filter(|&x| self.fwd[x].is_none()).min_by_key(|&x| class_size[self.c1[x]]) else {
            return true;
        };
        for y in 0..n {
            if self.bwd[y].is_some() || self.c2[y] != self.c1[x] {
                continue;
            }
            let mark = self.assigned.len();
            if self.assign(x, y) && self.run() {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

/// An isomorphism `φ` with `φ(x * y) = φ(x) * φ(y)`, as the list of images,
/// if one exists. Tables larger than `limit` are refused.
pub fn quandle_isomorphism(q1: &QuandleTable, q2: &QuandleTable, limit: usize) -> Result<Option<Vec<usize>>> {
    let size = q1.size().max(q2.size());
    if size > limit {
        return Err(Error::QuandleTooLarge { size, limit });
    }
    if q1.size() != q2.size() {
        return Ok(None);
    }
    let (c1, c2) = refine(q1, q2);
    let mut h1 = c1.clone();
    let mut h2 = c2.clone();
    h1.sort_unstable();
    h2.sort_unstable();
    if h1 != h2 {
        return Ok(None);
    }
    let n = q1.size();
    let mut s = Search { q1, q2, c1, c2, fwd: vec![None; n], bwd: vec![None; n], assigned: Vec::new() };
    Ok(s.run().then(|| s.fwd.into_iter().map(|y| y.unwrap()).collect()))
}

/// Exhaustive isomorphism test, up to `BRUTE_FORCE_LIMIT` elements.
pub fn quandle_isomorphic_bruteforce(q1: &QuandleTable, q2: &QuandleTable) -> Result<bool> {
    Ok(quandle_isomorphism(q1, q2, BRUTE_FORCE_LIMIT)?.is_some())
}
