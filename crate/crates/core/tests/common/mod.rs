//! Oracles shared by the integration tests. None of them use the
//! classification; they work from raw tables and exhaustive enumeration.
#![allow(dead_code)]

use std::collections::HashMap;

use lambda_core::conjugacy::{enumerate_units, Budget};
use lambda_core::quandle::{alexander_quandle, quandle_isomorphism, QuandleTable};
use lambda_core::{GroupShape, LambdaModule, Partition, Prime};

pub fn pr(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

/// Every abelian group of order `p^n`.
pub fn shapes(p: u64, n: u32) -> Vec<GroupShape> {
    if n == 0 {
        return vec![GroupShape::trivial(pr(p))];
    }
    Partition::all(n as usize)
        .into_iter()
        .map(|part| {
            let exps: Vec<u32> = part.parts().iter().map(|&k| k as u32).collect();
            GroupShape::from_cyclic_exponents(pr(p), &exps).unwrap().0
        })
        .collect()
}

/// Every Λ-module structure on every group of order `p^n`.
pub fn all_modules(p: u64, n: u32) -> Vec<LambdaModule> {
    let mut out = Vec::new();
    for s in shapes(p, n) {
        if s.is_trivial() {
            out.push(LambdaModule::zero(pr(p)));
            continue;
        }
        for a in enumerate_units(&s, Budget(u64::MAX)).unwrap() {
            out.push(LambdaModule::new(a).unwrap());
        }
    }
    out
}

/// Invariant of a table under relabelling: for each `y`, the cycle type of
/// `x ↦ x * y`, sorted over `y`.
pub fn table_invariant(q: &QuandleTable) -> Vec<Vec<usize>> {
    let n = q.size();
    let mut sig: Vec<Vec<usize>> = (0..n)
        .map(|y| {
            let mut seen = vec![false; n];
            let mut cyc = Vec::new();
            for s in 0..n {
                let mut len = 0;
                let mut x = s;
                while !seen[x] {
                    seen[x] = true;
                    x = q.op(x, y);
                    len += 1;
                }
                if len > 0 {
                    cyc.push(len);
                }
            }
            cyc.sort_unstable();
            cyc
        })
        .collect();
    sig.sort();
    sig
}

/// Isomorphism classes of the tables, by invariant bucket then explicit
/// search. Returns one representative index per class.
pub fn quandle_classes(tables: &[QuandleTable]) -> Vec<usize> {
    let mut buckets: HashMap<Vec<Vec<usize>>, Vec<usize>> = HashMap::new();
    let mut reps = Vec::new();
    for (i, q) in tables.iter().enumerate() {
        let b = buckets.entry(table_invariant(q)).or_default();
        let found = b.iter().any(|&j| quandle_isomorphism(&tables[j], q, usize::MAX).unwrap().is_some());
        if !found {
            b.push(i);
            reps.push(i);
        }
    }
    reps
}

/// Number of Alexander quandles of order `p^n` and how many are connected,
/// by building every table.
pub fn brute_force_quandle_counts(p: u64, n: u32) -> (usize, usize) {
    let tables: Vec<QuandleTable> = all_modules(p, n).iter().map(|m| alexander_quandle(m).unwrap()).collect();
    let reps = quandle_classes(&tables);
    let connected = reps.iter().filter(|&&i| tables[i].is_connected()).count();
    (reps.len(), connected)
}
