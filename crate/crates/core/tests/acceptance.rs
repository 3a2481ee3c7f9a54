//! One PASS/FAIL line per acceptance criterion.
//!
//! The run reports; it exits non-zero on a FAIL only when
//! `ACCEPTANCE_STRICT` is set, so the remaining test targets still run.

mod common;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use common::*;
use lambda_core::canonical_tables::{check_counts, count_modules, enumerate_modules, verify_table, CheckStatus};
use lambda_core::conjugacy::Budget;
use lambda_core::decomposition::f_primary_components;
use lambda_core::quandle::{
    count_connected, count_quandles, enumerate_quandles, extend, image_module, quandle_isomorphic_bruteforce,
    quandles_isomorphic, QuandleTable, StepKind,
};
use lambda_core::{Hom, LambdaModule, Subgroup};

const ENUMERATION_LIMIT: Duration = Duration::from_secs(10);
const FULL_VERIFICATION_LIMIT: Duration = Duration::from_secs(600);
const EXTENSION_LIMIT: Duration = Duration::from_secs(60);
const ISOMORPHISM_LIMIT: Duration = Duration::from_secs(600);
/// Largest module order on which component intersections are checked
/// element by element.
const EXHAUSTIVE_INTERSECTION_ORDER: u64 = 81;
/// Largest `|N|` for the extension contract.
const EXTENSION_ORDER: u64 = 27;
/// Largest quandle order whose axioms are checked.
const AXIOM_ORDER: u64 = 625;

const MODULE_COUNTS: [(u64, [u128; 4]); 3] = [(2, [1, 5, 15, 59]), (3, [2, 14, 62, 344]), (5, [4, 44, 324, 2989])];
const QUANDLE_COUNTS: [(u64, [u128; 4]); 2] = [(2, [1, 3, 11, 23]), (3, [2, 11, 45, 287])];
const CONNECTED_COUNTS: [(u64, [u128; 4]); 2] = [(2, [0, 1, 2, 9]), (3, [1, 8, 30, 166])];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn module_counts() -> Outcome {
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    for (p, listed) in MODULE_COUNTS {
        for n in 1..=4u32 {
            let start = Instant::now();
            let rows = enumerate_modules(pr(p), n).unwrap().grand_total as u128;
            let took = start.elapsed();
            slowest = slowest.max(took);
            let closed = count_modules(pr(p), n).unwrap();
            let want = listed[n as usize - 1];
            if rows != closed || rows != want || took > ENUMERATION_LIMIT {
                bad.push(format!("p={p} n={n}: enumerated {rows}, closed form {closed}, listed {want}, {took:.2?}"));
            }
        }
    }
    if bad.is_empty() {
        outcome(true, format!("12 (p, n) pairs agree; slowest enumeration {slowest:.2?}"))
    } else {
        outcome(false, bad.join("; "))
    }
}

fn quandle_counts(connected_only: bool) -> Outcome {
    let listed = if connected_only { CONNECTED_COUNTS } else { QUANDLE_COUNTS };
    let mut bad = Vec::new();
    for (p, want) in listed {
        for n in 1..=4u32 {
            let qs = enumerate_quandles(pr(p), n).unwrap();
            let got = if connected_only { qs.iter().filter(|q| q.connected).count() } else { qs.len() } as u128;
            let closed =
                if connected_only { count_connected(pr(p), n) } else { count_quandles(pr(p), n) }.unwrap();
            let w = want[n as usize - 1];
            if got != closed || got != w {
                bad.push(format!("p={p} n={n}: enumerated {got}, closed form {closed}, listed {w}"));
            }
        }
    }
    // independent check on the smallest orders
    let mut oracle = Vec::new();
    for (p, n) in [(2, 3), (2, 4), (3, 2), (3, 3)] {
        let (all, conn) = brute_force_quandle_counts(p, n);
        let got = if connected_only { conn } else { all };
        oracle.push(format!("{}^{}={got}", p, n));
    }
    let oracle = format!("exhaustive table oracle: {}", oracle.join(", "));
    if bad.is_empty() {
        outcome(true, format!("8 (p, n) pairs agree; {oracle}"))
    } else {
        outcome(false, format!("{}; {oracle}", bad.join("; ")))
    }
}

fn full_verification() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut checks = 0;
    for n in 0..=4 {
        let v = verify_table(pr(2), n, Budget::default()).unwrap();
        checks += v.checks.len();
        if v.partial {
            bad.push(format!("n={n} not exhaustive"));
        }
        for c in v.checks.iter().filter(|c| c.status != CheckStatus::Pass) {
            bad.push(format!("n={n} {} {:?}: {}", c.name, c.shape, c.detail));
        }
    }
    let took = start.elapsed();
    if took > FULL_VERIFICATION_LIMIT {
        bad.push(format!("took {took:.2?}"));
    }
    outcome(bad.is_empty(), if bad.is_empty() { format!("{checks} checks in {took:.2?}") } else { bad.join("; ") })
}

fn family_checks(name: &str) -> Outcome {
    let mut bad = Vec::new();
    for p in [2, 3, 5] {
        for n in 0..=4 {
            for c in check_counts(pr(p), n).unwrap().into_iter().filter(|c| c.name == name) {
                if c.status != CheckStatus::Pass {
                    bad.push(format!("p={p} n={n}: {}", c.detail));
                }
            }
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "p in {2, 3, 5}, n <= 4".into() } else { bad.join("; ") })
}

fn elements_of(sub: &Subgroup) -> HashSet<Vec<u64>> {
    let emb = sub.embedding();
    sub.shape().elements().unwrap().map(|x| emb.apply_unchecked(&x).coords).collect()
}

/// The components are t-invariant, their orders multiply to `|M|`, and the
/// sum map from their external direct sum is an isomorphism onto `M`.
fn decomposition_failure(m: &LambdaModule) -> Option<String> {
    let comps = f_primary_components(m).unwrap();
    if m.log_order() == 0 {
        return (!comps.is_empty()).then(|| "zero module has components".into());
    }
    let logs: u32 = comps.iter().map(|(_, c)| c.standardized.log_order()).sum();
    if logs != m.log_order() {
        return Some(format!("component orders give p^{logs}"));
    }
    let order = m.shape().order().unwrap();
    if order <= EXHAUSTIVE_INTERSECTION_ORDER {
        let sets: Vec<_> = comps.iter().map(|(_, c)| elements_of(&c.subgroup())).collect();
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if sets[i].intersection(&sets[j]).count() != 1 {
                    return Some(format!("components {i} and {j} meet"));
                }
            }
        }
    }
    let parts: Vec<LambdaModule> = comps.iter().map(|(_, c)| c.standardized.clone()).collect();
    let sum = lambda_core::decomposition::direct_sum(&parts).unwrap();
    let r = sum.module.shape().rank();
    let mut cols = vec![m.shape().zero(); r];
    let mut off = 0;
    for (_, c) in &comps {
        for col in c.embedding.columns() {
            cols[sum.position[off]] = col;
            off += 1;
        }
    }
    let iso = Hom::from_columns(sum.module.shape().clone(), m.shape().clone(), &cols).unwrap();
    if !iso.is_injective() {
        return Some("sum map is not injective".into());
    }
    let lhs = m.action().as_hom().compose(&iso).unwrap();
    let rhs = iso.compose(&sum.module.action().as_hom()).unwrap();
    (lhs != rhs).then(|| "sum map does not commute with t".into())
}

fn decomposition() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for p in [2, 3] {
        for n in 0..=4 {
            for row in enumerate_modules(pr(p), n).unwrap().rows {
                count += 1;
                if let Some(e) = decomposition_failure(&row.module) {
                    bad.push(format!("p={p} {} [{}]: {e}", row.family, row.parameters));
                }
            }
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { format!("{count} modules") } else { bad.join("; ") })
}

fn extension_contract() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut count = 0;
    let (mut direct, mut exchanged) = (0, 0);
    for p in [2u64, 3] {
        for n in 0..=4 {
            if p.pow(n) > EXTENSION_ORDER {
                continue;
            }
            for row in enumerate_modules(pr(p), n).unwrap().rows {
                count += 1;
                let nm = &row.module;
                let tag = format!("p={p} {} [{}]", row.family, row.parameters);
                let r = match extend(nm) {
                    Ok(r) => r,
                    Err(e) => {
                        bad.push(format!("{tag}: {e}"));
                        continue;
                    }
                };
                let (i, j) = (nm.log_order(), nm.image_log_order());
                let m = &r.extended;
                if m.log_order() - i != i - j {
                    bad.push(format!("{tag}: |M/N| = p^{}", m.log_order() - i));
                }
                if !r.inclusion.is_injective()
                    || Subgroup::image(&r.inclusion).log_order() != m.image_log_order()
                    || !Subgroup::image(&r.inclusion).is_subgroup_of(&m.image_subgroup())
                {
                    bad.push(format!("{tag}: (1 - t)M is not the embedded N"));
                }
                let mut prev = (i, j);
                for s in &r.steps {
                    if s.shape.rank() != nm.shape().rank()
                        || s.shape.log_order() != prev.0 + 1
                        || s.image_log_order != prev.1 + 1
                    {
                        bad.push(format!("{tag}: step {:?} breaks the per-step contract", s.kind));
                    }
                    prev = (s.shape.log_order(), s.image_log_order);
                    match s.kind {
                        StepKind::Direct => direct += 1,
                        StepKind::Exchanged => exchanged += 1,
                    }
                }
                if !lambda_core::decomposition::lambda_isomorphic(&image_module(m), nm, Budget::default()).unwrap() {
                    bad.push(format!("{tag}: image not isomorphic to N"));
                }
            }
        }
    }
    let took = start.elapsed();
    if took > EXTENSION_LIMIT {
        bad.push(format!("took {took:.2?}"));
    }
    if bad.is_empty() {
        outcome(true, format!("{count} modules, {direct} direct and {exchanged} exchanged steps, {took:.2?}"))
    } else {
        outcome(false, bad.join("; "))
    }
}

fn isomorphism_oracle() -> Outcome {
    let start = Instant::now();
    let qs = enumerate_quandles(pr(2), 4).unwrap();
    let tables: Vec<QuandleTable> = qs.iter().map(|q| q.table().unwrap()).collect();
    let mut pairs = 0;
    let mut bad = Vec::new();
    for i in 0..qs.len() {
        for j in i + 1..qs.len() {
            pairs += 1;
            let fast = quandles_isomorphic(&qs[i].module, &qs[j].module, Budget::default()).unwrap();
            let slow = quandle_isomorphic_bruteforce(&tables[i], &tables[j]).unwrap();
            if fast != slow {
                bad.push(format!("{i} vs {j}: {fast} vs {slow}"));
            }
        }
    }
    let took = start.elapsed();
    if pairs != 253 {
        bad.push(format!("{pairs} pairs"));
    }
    if took > ISOMORPHISM_LIMIT {
        bad.push(format!("took {took:.2?}"));
    }
    outcome(bad.is_empty(), if bad.is_empty() { format!("{pairs} pairs agree in {took:.2?}") } else { bad.join("; ") })
}

/// Idempotency, bijective right translations and right distributivity, each
/// over every element, pair or triple.
fn axioms_hold(q: &QuandleTable) -> bool {
    let n = q.size();
    let t: Vec<u16> = (0..n * n).map(|k| q.op(k / n, k % n) as u16).collect();
    if (0..n).any(|x| t[x * n + x] as usize != x) {
        return false;
    }
    let mut col = vec![0u16; n];
    let mut hit = vec![usize::MAX; n];
    for z in 0..n {
        for x in 0..n {
            col[x] = t[x * n + z];
            if hit[col[x] as usize] == z {
                return false;
            }
            hit[col[x] as usize] = z;
        }
        for x in 0..n {
            let row_x = &t[x * n..(x + 1) * n];
            let xz = col[x] as usize;
            let row_xz = &t[xz * n..(xz + 1) * n];
            // (x * y) * z against (x * z) * (y * z), for every y
            let ok = row_x.iter().zip(&col).fold(true, |ok, (&xy, &yz)| ok & (col[xy as usize] == row_xz[yz as usize]));
            if !ok {
                return false;
            }
        }
    }
    true
}

fn quandle_axioms() -> Outcome {
    let start = Instant::now();
    let mut tables = 0;
    let mut bad = Vec::new();
    for p in [2u64, 3, 5] {
        for n in 0..=4 {
            if p.pow(n) > AXIOM_ORDER {
                continue;
            }
            for q in enumerate_quandles(pr(p), n).unwrap() {
                tables += 1;
                if !axioms_hold(&q.table().unwrap()) {
                    bad.push(format!("p={p} n={n} image {} [{}]", q.image_family, q.image_parameters));
                }
            }
        }
    }
    let took = start.elapsed();
    outcome(bad.is_empty(), if bad.is_empty() { format!("{tables} tables in {took:.2?}") } else { bad.join("; ") })
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("module counts", module_counts),
        ("quandle counts", || quandle_counts(false)),
        ("connected quandle counts", || quandle_counts(true)),
        ("full table verification at p = 2", full_verification),
        ("per-family counts", || family_checks("counts")),
        ("per-stratum counts", || family_checks("strata")),
        ("decomposition properties", decomposition),
        ("extension contract", extension_contract),
        ("isomorphism test against the exhaustive oracle", isomorphism_oracle),
        ("quandle axioms", quandle_axioms),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("{} {:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 && std::env::var_os("ACCEPTANCE_STRICT").is_some() {
        std::process::exit(1);
    }
}
