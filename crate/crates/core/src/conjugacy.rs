//! Conjugacy in GL(M): an exhaustive oracle, an invariant pre-screen, orbit
//! closure under a generating set, and the rational-canonical-form path for
//! elementary abelian groups.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::core_algebra::{
    arith, gl_order, irreducible_polys, unit_count, FpMatrix, GroupShape, IntPoly, Partition,
    PolyModP, StructuredMatrix, Subgroup,
};
use crate::error::{Error, Result};

/// Largest unit group the exhaustive procedures will sweep.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "LAMBDA_CLASSIFY_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    /// The default, overridden by `LAMBDA_CLASSIFY_BUDGET` when it parses.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Budget)
            .unwrap_or_default()
    }

    pub fn allows(&self, shape: &GroupShape) -> bool {
        unit_count(shape) <= self.0 as u128
    }

    pub fn check(&self, shape: &GroupShape) -> Result<()> {
        let size = unit_count(shape);
        if size > self.0 as u128 {
            return Err(Error::BudgetExceeded { size, budget: self.0 });
        }
        Ok(())
    }
}

/// A unit `P` with `P·A = B·P`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyWitness {
    pub conjugator: StructuredMatrix,
}

/// Every structured matrix in row-major lexicographic order of entries.
struct StructuredIter {
    shape: GroupShape,
    steps: Vec<u64>,
    moduli: Vec<u64>,
    current: Option<Vec<u64>>,
}

impl Iterator for StructuredIter {
    type Item = StructuredMatrix;

    fn next(&mut self) -> Option<StructuredMatrix> {
        let cur = self.current.as_mut()?;
        let out = StructuredMatrix::from_parts_unchecked(self.shape.clone(), cur.clone());
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            cur[i] += self.steps[i];
            if cur[i] < self.moduli[i] {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

fn all_structured(shape: &GroupShape) -> StructuredIter {
    let n = shape.rank();
    let e = shape.exps();
    let p = shape.p();
    let mut steps = Vec::with_capacity(n * n);
    let mut moduli = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            steps.push(arith::pow(p, e[r].saturating_sub(e[c])));
            moduli.push(shape.moduli()[r]);
        }
    }
    StructuredIter { shape: shape.clone(), steps, moduli, current: Some(vec![0; n * n]) }
}

/// Stream GL(M) in row-major lexicographic order, refusing beyond the budget.
pub fn enumerate_units(
    shape: &GroupShape,
    budget: Budget,
) -> Result<impl Iterator<Item = StructuredMatrix>> {
    budget.check(shape)?;
    Ok(all_structured(shape).filter(|a| a.is_unit()))
}

fn check_pair(a: &StructuredMatrix, b: &StructuredMatrix) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch(format!("{} vs {}", a.shape(), b.shape())));
    }
    if !a.is_unit() || !b.is_unit() {
        return Err(Error::NotUnit);
    }
    Ok(())
}

/// Exhaustive search for a conjugator.
pub fn are_conjugate_oracle(
    a: &StructuredMatrix,
    b: &StructuredMatrix,
    budget: Budget,
) -> Result<Option<ConjugacyWitness>> {
    check_pair(a, b)?;
    Ok(enumerate_units(a.shape(), budget)?
        .find(|p| p.mul_unchecked(a) == b.mul_unchecked(p))
        .map(|conjugator| ConjugacyWitness { conjugator }))
}

/// Conjugation-invariant vector: for each probe polynomial `g` and each
/// `s ≤ e_1`, `log_p |ker g(σ_A) ∩ p^s M|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint(pub Vec<u32>);

/// `X - c`, the monic quadratics, and `(X - c)^m` for `m = 2, 3, 4`, with
/// `0 ≤ c < p` as integer polynomials.
fn probe_family(p: u64) -> Vec<IntPoly> {
    let mut out: Vec<IntPoly> = (0..p as i64).map(|c| IntPoly::new(vec![-c, 1])).collect();
    out.extend(crate::core_algebra::poly::monic_polys(p, 2).map(|g| g.lift()));
    for m in 2..=4 {
        out.extend((0..p as i64).map(|c| IntPoly::new(vec![-c, 1]).pow(m)));
    }
    out
}

pub fn fingerprint(a: &StructuredMatrix) -> Fingerprint {
    let shape = a.shape();
    let e1 = shape.max_exponent();
    let mut v = Vec::new();
    for g in probe_family(shape.p()) {
        let ga = a.eval_int_poly(&g);
        let cols = ga.as_hom().columns();
        for s in 0..=e1 {
            let ps = arith::pow(shape.p(), s);
            let scaled: Vec<_> = cols.iter().map(|c| shape.scale(ps, c)).collect();
            let log_psm: u32 = shape.exps().iter().map(|&e| e.saturating_sub(s)).sum();
            v.push(log_psm - Subgroup::span(shape, &scaled).log_order());
        }
    }
    Fingerprint(v)
}

/// A generating set of GL(M) with inverses: elementary transvections scaled to
/// respect the layer divisibility, and diagonal unit scalings.
pub fn generators(shape: &GroupShape) -> Vec<(StructuredMatrix, StructuredMatrix)> {
    let n = shape.rank();
    let p = shape.p();
    let e = shape.exps();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let m = shape.moduli()[a];
            let c = arith::pow(p, e[a].saturating_sub(e[b])) % m;
            let mut g = StructuredMatrix::identity(shape).entries().to_vec();
            let mut h = g.clone();
            g[a * n + b] = c;
            h[a * n + b] = arith::neg_mod(c, m);
            out.push((
                StructuredMatrix::from_parts_unchecked(shape.clone(), g),
                StructuredMatrix::from_parts_unchecked(shape.clone(), h),
            ));
        }
    }
    for a in 0..n {
        let m = shape.moduli()[a];
        for u in arith::unit_group_generators(p, e[a]) {
            let mut g = StructuredMatrix::identity(shape).entries().to_vec();
            let mut h = g.clone();
            g[a * n + a] = u;
            h[a * n + a] = arith::inv_mod(u, m).unwrap();
            out.push((
                StructuredMatrix::from_parts_unchecked(shape.clone(), g),
                StructuredMatrix::from_parts_unchecked(shape.clone(), h),
            ));
        }
    }
    out
}

/// Conjugacy class of `a` as a set of row-major entry vectors.
pub fn orbit(a: &StructuredMatrix) -> HashSet<Vec<u64>> {
    let gens = generators(a.shape());
    let mut seen = HashSet::from([a.entries().to_vec()]);
    let mut stack = vec![a.clone()];
    while let Some(x) = stack.pop() {
        for (g, h) in &gens {
            let y = x.conjugate_by(g, h);
            if !seen.contains(y.entries()) {
                seen.insert(y.entries().to_vec());
                stack.push(y);
            }
        }
    }
    seen
}

/// Whether the reduction of `a` has minimal polynomial a power of `f`.
pub fn in_stratum(a: &StructuredMatrix, f: &PolyModP) -> bool {
    let mp = a.reduce_mod_p().min_poly();
    let fac = mp.factor();
    fac.len() == 1 && &fac[0].0 == f
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    pub representative: StructuredMatrix,
    pub size: u128,
}

/// Conjugacy classes of GL(M)_f. Within budget every unit is swept and each
/// class represented by its lexicographically least member; otherwise, for
/// `Z_p^n`, classes are the rational canonical forms with sizes from the
/// centralizer formula.
pub fn conjugacy_classes(
    shape: &GroupShape,
    f: &PolyModP,
    budget: Budget,
) -> Result<Vec<ConjugacyClass>> {
    if budget.allows(shape) {
        let mut visited: HashSet<Vec<u64>> = HashSet::new();
        let mut out = Vec::new();
        for a in enumerate_units(shape, budget)? {
            if visited.contains(a.entries()) || !in_stratum(&a, f) {
                continue;
            }
            let orb = orbit(&a);
            out.push(ConjugacyClass { representative: a, size: orb.len() as u128 });
            visited.extend(orb);
        }
        return Ok(out);
    }
    if shape.is_elementary() {
        let n = shape.rank();
        let d = f.degree().unwrap_or(0);
        if d == 0 || !n.is_multiple_of(d) {
            return Ok(Vec::new());
        }
        return Ok(Partition::all(n / d)
            .into_iter()
            .map(|lam| {
                let ed = vec![(f.clone(), lam)];
                ConjugacyClass {
                    representative: rcf_matrix(shape, &ed),
                    size: class_size(shape.p(), n as u32, &ed),
                }
            })
            .collect());
    }
    Err(Error::BudgetExceeded { size: unit_count(shape), budget: budget.0 })
}

/// Similarity over Z_p via elementary divisors.
pub fn rcf_conjugate(a: &FpMatrix, b: &FpMatrix) -> bool {
    a.dim() == b.dim() && a.p() == b.p() && a.elementary_divisors() == b.elementary_divisors()
}

/// `|C_{GL(n,p)}(A)|` from the elementary divisors of `A`.
pub fn centralizer_order(p: u64, ed: &[(PolyModP, Partition)]) -> u128 {
    let mut total: u128 = 1;
    for (f, lam) in ed {
        let q = (p as u128).pow(f.degree().unwrap() as u32);
        let conj = lam.conjugate();
        let mut exp: u32 = conj.parts().iter().map(|&x| (x * x) as u32).sum();
        let mut mults: BTreeMap<usize, u32> = BTreeMap::new();
        for &part in lam.parts() {
            *mults.entry(part).or_default() += 1;
        }
        for &m in mults.values() {
            exp -= m * (m + 1) / 2;
            for k in 1..=m {
                total *= q.pow(k) - 1;
            }
        }
        total *= q.pow(exp);
    }
    total
}

pub fn class_size(p: u64, n: u32, ed: &[(PolyModP, Partition)]) -> u128 {
    gl_order(n, p as u128) / centralizer_order(p, ed)
}

/// Block diagonal of companion matrices of `f^{λ_i}` on `Z_p^n`.
pub fn rcf_matrix(shape: &GroupShape, ed: &[(PolyModP, Partition)]) -> StructuredMatrix {
    let p = shape.p();
    let blocks: Vec<FpMatrix> = ed
        .iter()
        .flat_map(|(f, lam)| lam.parts().iter().map(move |&k| FpMatrix::companion(&f.pow(k as u32))))
        .collect();
    let m = FpMatrix::block_diag(p, &blocks);
    StructuredMatrix::new(shape.clone(), m.entries().to_vec()).expect("elementary shape")
}

/// Every elementary-divisor datum of an invertible `n × n` matrix over Z_p,
/// i.e. every conjugacy class of GL(n, p).
pub fn rcf_types(p: u64, n: usize) -> Vec<Vec<(PolyModP, Partition)>> {
    let mut irr = Vec::new();
    for d in 1..=n {
        irr.extend(irreducible_polys(p, d));
    }
    fn rec(
        irr: &[PolyModP],
        i: usize,
        rem: usize,
        cur: &mut Vec<(PolyModP, Partition)>,
        out: &mut Vec<Vec<(PolyModP, Partition)>>,
    ) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        if i == irr.len() {
            return;
        }
        rec(irr, i + 1, rem, cur, out);
        let d = irr[i].degree().unwrap();
        for k in 1..=rem / d {
            for lam in Partition::all(k) {
                cur.push((irr[i].clone(), lam));
                rec(irr, i + 1, rem - k * d, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&irr, 0, n, &mut Vec::new(), &mut out);
    out
}

/// Decide conjugacy by whichever path applies: invariant pre-screen,
/// rational canonical form on `Z_p^n`, otherwise the exhaustive oracle.
pub fn are_conjugate(a: &StructuredMatrix, b: &StructuredMatrix, budget: Budget) -> Result<bool> {
    check_pair(a, b)?;
    if a == b {
        return Ok(true);
    }
    if a.shape().is_elementary() {
        return Ok(rcf_conjugate(&a.reduce_mod_p(), &b.reduce_mod_p()));
    }
    if fingerprint(a) != fingerprint(b) {
        return Ok(false);
    }
    Ok(are_conjugate_oracle(a, b, budget)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_algebra::Prime;

    fn shape(p: u64, layers: &[(u32, usize)]) -> GroupShape {
        GroupShape::new(Prime::new(p).unwrap(), layers).unwrap()
    }

    fn m(s: &GroupShape, e: &[u64]) -> StructuredMatrix {
        StructuredMatrix::new(s.clone(), e.to_vec()).unwrap()
    }

    fn poly(p: u64, c: &[u64]) -> PolyModP {
        PolyModP::new(p, c.to_vec()).unwrap()
    }

    #[test]
    fn unit_enumeration_counts() {
        let z4 = shape(2, &[(2, 1)]);
        let u: Vec<_> = enumerate_units(&z4, Budget::default()).unwrap().collect();
        assert_eq!(u.iter().map(|a| a.entries()[0]).collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(enumerate_units(&shape(2, &[(1, 2)]), Budget::default()).unwrap().count(), 6);
        assert_eq!(enumerate_units(&shape(2, &[(2, 1), (1, 1)]), Budget::default()).unwrap().count(), 8);
        for s in [shape(2, &[(1, 4)]), shape(3, &[(2, 1), (1, 2)]), shape(2, &[(3, 1), (1, 1)]), shape(3, &[(2, 2)])] {
            let n = enumerate_units(&s, Budget::default()).unwrap().count() as u128;
            assert_eq!(n, unit_count(&s), "{s}");
        }
        assert!(matches!(
            enumerate_units(&shape(3, &[(1, 4)]), Budget::default()),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn generators_generate() {
        for s in [
            shape(2, &[(2, 1), (1, 1)]),
            shape(2, &[(1, 3)]),
            shape(2, &[(3, 1), (1, 1)]),
            shape(2, &[(2, 1), (1, 2)]),
            shape(3, &[(2, 1), (1, 1)]),
            shape(3, &[(2, 2)]),
            shape(5, &[(2, 1)]),
        ] {
            let gens = generators(&s);
            let id = StructuredMatrix::identity(&s);
            let mut seen = HashSet::from([id.entries().to_vec()]);
            let mut stack = vec![id];
            while let Some(x) = stack.pop() {
                for (g, _) in &gens {
                    let y = g.mul_unchecked(&x);
                    if seen.insert(y.entries().to_vec()) {
                        stack.push(y);
                    }
                }
            }
            assert_eq!(seen.len() as u128, unit_count(&s), "{s}");
            for (g, h) in &gens {
                assert!(g.mul_unchecked(h).is_identity());
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let s = shape(2, &[(2, 1), (1, 1)]);
        let id = StructuredMatrix::identity(&s);
        let w = are_conjugate_oracle(&id, &id, Budget::default()).unwrap().unwrap();
        assert!(w.conjugator.is_identity());
        let a = m(&s, &[3, 0, 1, 1]);
        let b = m(&s, &[1, 0, 1, 1]);
        let w = are_conjugate_oracle(&a, &b, Budget::default()).unwrap().unwrap();
        assert!(w.conjugator.is_unit());
        assert_eq!(w.conjugator.mul(&a).unwrap(), b.mul(&w.conjugator).unwrap());
        assert_eq!(fingerprint(&a), fingerprint(&b));
        let c = m(&s, &[1, 2, 0, 1]);
        assert!(are_conjugate_oracle(&b, &c, Budget::default()).unwrap().is_none());
    }

    #[test]
    fn fingerprint_of_identity() {
        let z9 = shape(3, &[(2, 1)]);
        let fp = fingerprint(&StructuredMatrix::identity(&z9));
        // probe X - 1, s = 0
        let idx = 3;
        assert_eq!(fp.0[idx], 2);
    }

    #[test]
    fn class_examples() {
        let s = shape(2, &[(2, 1), (1, 1)]);
        let cl = conjugacy_classes(&s, &poly(2, &[1, 1]), Budget::default()).unwrap();
        assert_eq!(cl.len(), 5);
        assert_eq!(cl.iter().map(|c| c.size).sum::<u128>(), 8);
        let z2sq = shape(2, &[(1, 2)]);
        let cl = conjugacy_classes(&z2sq, &poly(2, &[1, 1, 1]), Budget::default()).unwrap();
        assert_eq!(cl.len(), 1);
        let z9 = shape(3, &[(2, 1)]);
        let cl = conjugacy_classes(&z9, &poly(3, &[2, 1]), Budget::default()).unwrap();
        let reps: Vec<u64> = cl.iter().map(|c| c.representative.entries()[0]).collect();
        assert_eq!(reps, vec![1, 4, 7]);
        assert!(cl.iter().all(|c| c.size == 1));
    }

    #[test]
    fn class_equation_within_budget() {
        for s in [shape(2, &[(2, 1), (1, 1)]), shape(3, &[(1, 2)]), shape(2, &[(1, 3)]), shape(3, &[(2, 1), (1, 1)])] {
            let mut total = 0u128;
            for d in 1..=s.rank() {
                for f in irreducible_polys(s.p(), d) {
                    let direct = enumerate_units(&s, Budget::default())
                        .unwrap()
                        .filter(|a| in_stratum(a, &f))
                        .count() as u128;
                    let cl = conjugacy_classes(&s, &f, Budget::default()).unwrap();
                    assert_eq!(cl.iter().map(|c| c.size).sum::<u128>(), direct);
                    total += direct;
                }
            }
            assert!(total <= unit_count(&s));
        }
    }

    #[test]
    fn centralizer_formula_matches_orbits() {
        for (p, n) in [(2u64, 2usize), (2, 3), (3, 2), (2, 4)] {
            let s = shape(p, &[(1, n)]);
            let mut sum = 0u128;
            for ed in rcf_types(p, n) {
                let rep = rcf_matrix(&s, &ed);
                let size = class_size(p, n as u32, &ed);
                if n <= 3 {
                    assert_eq!(orbit(&rep).len() as u128, size);
                }
                sum += size;
            }
            assert_eq!(sum, gl_order(n as u32, p as u128));
        }
    }

    #[test]
    fn fast_path_out_of_budget() {
        let s = shape(3, &[(1, 4)]);
        let f = poly(3, &[2, 1]);
        let cl = conjugacy_classes(&s, &f, Budget::default()).unwrap();
        assert_eq!(cl.len(), 5);
        let z = shape(3, &[(1, 3)]);
        let small = conjugacy_classes(&z, &f, Budget(10)).unwrap();
        let full = conjugacy_classes(&z, &f, Budget::default()).unwrap();
        let mut a: Vec<u128> = small.iter().map(|c| c.size).collect();
        let mut b: Vec<u128> = full.iter().map(|c| c.size).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn rcf_examples() {
        let id = FpMatrix::identity(2, 2);
        assert!(rcf_conjugate(&id, &id));
        let c = FpMatrix::companion(&poly(2, &[1, 1, 1]));
        assert!(rcf_conjugate(&c, &c.transpose()));
        let a = FpMatrix::from_rows(3, &[vec![1, 0], vec![0, 2]]);
        let b = FpMatrix::from_rows(3, &[vec![2, 0], vec![0, 2]]);
        assert!(!rcf_conjugate(&a, &b));
    }

    #[test]
    fn rcf_agrees_with_oracle_on_gl3_2() {
        let s = shape(2, &[(1, 3)]);
        let units: Vec<_> = enumerate_units(&s, Budget::default()).unwrap().collect();
        let mut class_of: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
        let mut next = 0;
        for a in &units {
            if class_of.contains_key(a.entries()) {
                continue;
            }
            for x in orbit(a) {
                class_of.insert(x, next);
            }
            next += 1;
        }
        for a in &units {
            for b in units.iter().step_by(7) {
                let same = class_of[a.entries()] == class_of[b.entries()];
                assert_eq!(rcf_conjugate(&a.reduce_mod_p(), &b.reduce_mod_p()), same);
            }
        }
    }
}
