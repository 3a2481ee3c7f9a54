//! Parametrized families of canonical actions, one block per shape.
//!
//! Each family lists its matrix pattern (row-major, reduced per row on
//! construction), the irreducible factors its mod-p minimal polynomial must
//! have, and the number of members in each `|(1-t)M|` stratum as a
//! polynomial in `p`.

use crate::core_algebra::arith::{binomial, pow};
use crate::core_algebra::poly::irreducible_polys;
use crate::core_algebra::PolyModP;

/// One member of a family before it is turned into a module.
pub(crate) struct Member {
    pub params: Vec<(&'static str, u64)>,
    pub entries: Vec<i64>,
    pub factors: Vec<PolyModP>,
}

pub(crate) struct Family {
    pub id: &'static str,
    /// `(exponent, multiplicity)` layers of the underlying group.
    pub layers: &'static [(u32, usize)],
    pub members: fn(u64) -> Vec<Member>,
    /// `(log_p |(1-t)M|, count)` pairs.
    pub strata: fn(i128) -> Vec<(u32, i128)>,
}

impl Family {
    pub fn total(&self, p: i128) -> i128 {
        (self.strata)(p).iter().map(|&(_, c)| c).sum()
    }
}

fn lin(p: u64, b: u64) -> PolyModP {
    PolyModP::linear(p, b % p)
}

fn factor_set(mut fs: Vec<PolyModP>) -> Vec<PolyModP> {
    fs.sort();
    fs.dedup();
    fs
}

/// Residues mod `p^e` prime to `p`, ascending.
fn units(p: u64, e: u32) -> impl Iterator<Item = u64> {
    (1..pow(p, e)).filter(move |b| b % p != 0)
}

fn nonzero(p: u64) -> std::ops::Range<u64> {
    1..p
}

fn neg(c: u64) -> i64 {
    -(c as i64)
}

/// `b0, b1` of an irreducible `X^2 + b1 X + b0`.
fn quad(f: &PolyModP) -> (u64, u64) {
    (f.coeffs()[0], f.coeffs()[1])
}

/// Block-diagonal assembly of square integer blocks.
fn blocks(parts: &[Vec<Vec<i64>>]) -> Vec<i64> {
    let n: usize = parts.iter().map(|b| b.len()).sum();
    let mut out = vec![0i64; n * n];
    let mut off = 0;
    for b in parts {
        for (r, row) in b.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                out[(off + r) * n + off + c] = v;
            }
        }
        off += b.len();
    }
    out
}

fn jordan(b: u64, k: usize) -> Vec<Vec<i64>> {
    (0..k)
        .map(|r| (0..k).map(|c| if r == c { b as i64 } else if c == r + 1 { 1 } else { 0 }).collect())
        .collect()
}

fn companion(f: &PolyModP) -> Vec<Vec<i64>> {
    let d = f.degree().unwrap();
    (0..d)
        .map(|r| {
            (0..d)
                .map(|c| {
                    if r + 1 < d {
                        (c == r + 1) as i64
                    } else {
                        neg(f.coeffs()[c])
                    }
                })
                .collect()
        })
        .collect()
}

fn scalar(b: u64) -> Vec<Vec<i64>> {
    vec![vec![b as i64]]
}

fn m(params: Vec<(&'static str, u64)>, entries: Vec<i64>, factors: Vec<PolyModP>) -> Member {
    Member { params, entries, factors: factor_set(factors) }
}

fn quad_params(names: [&'static str; 2], f: &PolyModP) -> [(&'static str, u64); 2] {
    let (b0, b1) = quad(f);
    [(names[0], b0), (names[1], b1)]
}

fn poly_params(f: &PolyModP) -> Vec<(&'static str, u64)> {
    const NAMES: [&str; 4] = ["b0", "b1", "b2", "b3"];
    let d = f.degree().unwrap();
    (0..d).map(|i| (NAMES[i], f.coeffs()[i])).collect()
}

// n = 0, 1

fn zero_members(_: u64) -> Vec<Member> {
    vec![m(vec![], vec![], vec![])]
}

fn cyclic_members(e: u32) -> impl Fn(u64) -> Vec<Member> {
    move |p| units(p, e).map(|b| m(vec![("b", b)], vec![b as i64], vec![lin(p, b)])).collect()
}

fn cyclic1(p: u64) -> Vec<Member> {
    cyclic_members(1)(p)
}
fn cyclic2(p: u64) -> Vec<Member> {
    cyclic_members(2)(p)
}
fn cyclic3(p: u64) -> Vec<Member> {
    cyclic_members(3)(p)
}
fn cyclic4(p: u64) -> Vec<Member> {
    cyclic_members(4)(p)
}

// n = 2

fn diag2(p: u64) -> Vec<Member> {
    let mut out = Vec::new();
    for b in nonzero(p) {
        for c in b..p {
            out.push(m(vec![("b", b), ("c", c)], blocks(&[scalar(b), scalar(c)]), vec![lin(p, b), lin(p, c)]));
        }
    }
    out
}

fn jordan2(p: u64) -> Vec<Member> {
    nonzero(p).map(|b| m(vec![("b", b)], blocks(&[jordan(b, 2)]), vec![lin(p, b)])).collect()
}

fn companion_members(d: usize) -> impl Fn(u64) -> Vec<Member> {
    move |p| {
        irreducible_polys(p, d)
            .into_iter()
            .map(|f| m(poly_params(&f), blocks(&[companion(&f)]), vec![f.clone()]))
            .collect()
    }
}

fn companion2(p: u64) -> Vec<Member> {
    companion_members(2)(p)
}
fn companion3(p: u64) -> Vec<Member> {
    companion_members(3)(p)
}
fn companion4(p: u64) -> Vec<Member> {
    companion_members(4)(p)
}

// n = 3

/// `diag(b, c)` on `Z_{p^e} x Z_p`.
fn top_diag(e: u32) -> impl Fn(u64) -> Vec<Member> {
    move |p| {
        let mut out = Vec::new();
        for b in units(p, e) {
            for c in nonzero(p) {
                out.push(m(vec![("b", b), ("c", c)], blocks(&[scalar(b), scalar(c)]), vec![lin(p, b), lin(p, c)]));
            }
        }
        out
    }
}

fn top_diag2(p: u64) -> Vec<Member> {
    top_diag(2)(p)
}
fn top_diag3(p: u64) -> Vec<Member> {
    top_diag(3)(p)
}

/// `[[b, 0], [1, b]]` on `Z_{p^e} x Z_p`, `0 < b < p^{e-1}`, `p ∤ b`.
fn top_shear(e: u32) -> impl Fn(u64) -> Vec<Member> {
    move |p| {
        units(p, e - 1)
            .map(|b| m(vec![("b", b)], vec![b as i64, 0, 1, b as i64], vec![lin(p, b)]))
            .collect()
    }
}

fn top_shear2(p: u64) -> Vec<Member> {
    top_shear(2)(p)
}
fn top_shear3(p: u64) -> Vec<Member> {
    top_shear(3)(p)
}

/// `[[b, p^{e-1}], [γ, b]]` on `Z_{p^e} x Z_p`, `0 < b < p^{e-1}`, `p ∤ b`, `γ ∈ Z_p`.
fn top_pshear(e: u32) -> impl Fn(u64) -> Vec<Member> {
    move |p| {
        let top = pow(p, e - 1) as i64;
        let mut out = Vec::new();
        for b in units(p, e - 1) {
            for g in 0..p {
                out.push(m(
                    vec![("b", b), ("gamma", g)],
                    vec![b as i64, top, g as i64, b as i64],
                    vec![lin(p, b)],
                ));
            }
        }
        out
    }
}

fn top_pshear2(p: u64) -> Vec<Member> {
    top_pshear(2)(p)
}
fn top_pshear3(p: u64) -> Vec<Member> {
    top_pshear(3)(p)
}

fn diag3(p: u64) -> Vec<Member> {
    let mut out = Vec::new();
    for b in nonzero(p) {
        for c in b..p {
            for d in c..p {
                out.push(m(
                    vec![("b", b), ("c", c), ("d", d)],
                    blocks(&[scalar(b), scalar(c), scalar(d)]),
                    vec![lin(p, b), lin(p, c), lin(p, d)],
                ));
            }
        }
    }
    out
}

fn jordan2_scalar(p: u64) -> Vec<Member> {
    let mut out = Vec::new();
    for b in nonzero(p) {
        for c in nonzero(p) {
            out.push(m(vec![("b", b), ("c", c)], blocks(&[jordan(b, 2), scalar(c)]), vec![lin(p, b), lin(p, c)]));
        }
    }
    out
}

fn jordan3(p: u64) -> Vec<Member> {
    nonzero(p).map(|b| m(vec![("b", b)], blocks(&[jordan(b, 3)]), vec![lin(p, b)])).collect()
}

fn companion2_scalar(p: u64) -> Vec<Member> {
    let mut out = Vec::new();
    for f in irreducible_polys(p, 2) {
        for c in nonzero(p) {
            let mut params = quad_params(["b0", "b1"], &f).to_vec();
            params.push(("c", c));
            out.push(m(params, blocks(&[companion(&f), scalar(c)]), vec![f.clone(), lin(p, c)]));
        }
    }
    out
}

// n = 4, Z_{p^2}^2

fn sq_diag(p: u64) -> Vec<Member> {
    let us: Vec<u64> = units(p, 2).collect();
    let mut out = Vec::new();
    for (i, &b) in us.iter().enumerate() {
        for &c in &us[i..] {
            out.push(m(vec![("b", b), ("c", c)], blocks(&[scalar(b), scalar(c)]), vec![lin(p, b), lin(p, c)]));
        }
    }
    out
}

fn sq_pshear(p: u64) -> Vec<Member> {
    let pi = p as i64;
    units(p, 2).map(|b| m(vec![("b", b)], vec![b as i64, pi, 0, b as i64], vec![lin(p, b)])).collect()
}

fn sq_pcompanion(p: u64) -> Vec<Member> {
    let pi = p as i64;
    let mut out = Vec::new();
    for b in nonzero(p) {
        for f in irreducible_polys(p, 2) {
            let (b0, b1) = quad(&f);
            let mut params = vec![("b", b)];
            params.extend(quad_params(["b0", "b1"], &f));
            out.push(m(
                params,
                vec![b as i64, pi, -pi * b0 as i64, b as i64 - pi * b1 as i64],
                vec![lin(p, b)],
            ));
        }
    }
    out
}

fn sq_unipotent_lift(p: u64) -> Vec<Member> {
    let pi = p as i64;
    let mut out = Vec::new();
    for b in nonzero(p) {
        for a in 0..p {
            for g in 0..p {
                out.push(m(
                    vec![("b", b), ("alpha", a), ("gamma", g)],
                    vec![b as i64 + pi * a as i64, 1, pi * g as i64, b as i64],
                    vec![lin(p, b)],
                ));
            }
        }
    }
    out
}

fn sq_companion_lift(p: u64) -> Vec<Member> {
    let pi = p as i64;
    let mut out = Vec::new();
    for f in irreducible_polys(p, 2) {
        let (b0, b1) = quad(&f);
        for a in 0..p {
            for be in 0..p {
                let mut params = vec![("alpha", a), ("beta", be)];
                params.extend(quad_params(["b0", "b1"], &f));
                out.push(m(
                    params,
                    vec![pi * a as i64, 1 + pi * be as i64, neg(b0), neg(b1)],
                    vec![f.clone()],
                ));
            }
        }
    }
    out
}

// n = 4, Z_{p^2} x Z_p^2

fn mixed_diag(p: u64) -> Vec<Member> {
    let mut out = Vec::new();
    for b in units(p, 2) {
        for c in nonzero(p) {
            for d in c..p {
                out.push(m(
                    vec![("b", b), ("c", c), ("d", d)],
                    blocks(&[scalar(b), scalar(c), scalar(d)]),
                    vec![lin(p, b), lin(p, c), lin(p, d)],
                ));
            }
        }
    }
    out
}

fn mixed_shear_scalar(p: u64) -> Vec<Member> {
    let mut out = Vec::new();
    for b in nonzero(p) {
        for c in nonzero(p) {
            let (bi, ci) = (b as i64, c as i64);
            out.push(m(
                vec![("b", b), ("c", c)],
                vec![bi, 0, 0, 1, bi, 0, 0, 0, ci],
                vec![lin(p, b), lin(p, c)],
            ));
        }
    }
    out
}

/// `η` sits in the second row: with the top row fixed, conjugation rescales
/// a third-row entry by any unit, while the product of the `p` entry with the
/// second-row entry is invariant.
fn mixed_pshear_eta(p: u64) -> Vec<Member> {
    let pi = p as i64;
    let mut out = Vec::new();
    for b in nonzero(p) {
        for eta in 0..p {
            let bi = b as i64;
            out.push(m(
                vec![("b", b), ("eta", eta)],
                vec![bi, pi, 0, eta as i64, bi, 0, 0, 0, bi],
                vec![lin(p, b)],
            ));
        }
    }
    out
}

/// The class where the third-row entry is the only nonzero gluing term.
fn mixed_pshear_corner(p: u64) -> Vec<Member> {
    let pi = p as i64;
    nonzero(p)
        .map(|b| {
            let bi = b as i64;
            m(vec![("b", b)], vec![bi, pi, 0, 0, bi, 0, 1, 0, bi], vec![lin(p, b)])
        })
        .collect()
}

fn mixed_scalar_jordan(p: u64) -> Vec<Member> {
    let mut out = Vec::new();
    for b in units(p, 2) {
        for c in nonzero(p) {
            out.push(m(vec![("b", b), ("c", c)], blocks(&[scalar(b), jordan(c, 2)]), vec![lin(p, b), lin(p, c)]));
        }
    }
    out
}

fn mixed_cyclic_shear(p: u64) -> Vec<Member> {
    nonzero(p)
        .map(|b| {
            let bi = b as i64;
            m(vec![("b", b)], vec![bi, 0, 0, 0, bi, 1, 1, 0, bi], vec![lin(p, b)])
        })
        .collect()
}

fn mixed_pcyclic_shear(p: u64) -> Vec<Member> {
    let pi = p as i64;
    let mut out = Vec::new();
    for b in nonzero(p) {
        for eta in 0..p {
            let bi = b as i64;
            out.push(m(
                vec![("b", b), ("eta", eta)],
                vec![bi, pi, 0, 0, bi, 1, eta as i64, 0, bi],
                vec![lin(p, b)],
            ));
        }
    }
    out
}

fn mixed_pshear_scalar(p: u64) -> Vec<Member> {
    let pi = p as i64;
    let mut out = Vec::new();
    for b in nonzero(p) {
        for g in 0..p {
            for c in nonzero(p).filter(|&c| c != b) {
                let (bi, ci) = (b as i64, c as i64);
                out.push(m(
                    vec![("b", b), ("gamma", g), ("c", c)],
                    vec![bi, pi, 0, g as i64, bi, 0, 0, 0, ci],
                    vec![lin(p, b), lin(p, c)],
                ));
            }
        }
    }
    out
}

fn mixed_scalar_companion(p: u64) -> Vec<Member> {
    let mut out = Vec::new();
    for b in units(p, 2) {
        for f in irreducible_polys(p, 2) {
            let mut params = vec![("b", b)];
            params.extend(quad_params(["c0", "c1"], &f));
            out.push(m(params, blocks(&[scalar(b), companion(&f)]), vec![lin(p, b), f.clone()]));
        }
    }
    out
}

// n = 4, Z_p^4

fn diag4(p: u64) -> Vec<Member> {
    let mut out = Vec::new();
    for b in nonzero(p) {
        for c in b..p {
            for d in c..p {
                for e in d..p {
                    out.push(m(
                        vec![("b", b), ("c", c), ("d", d), ("e", e)],
                        blocks(&[scalar(b), scalar(c), scalar(d), scalar(e)]),
                        vec![lin(p, b), lin(p, c), lin(p, d), lin(p, e)],
                    ));
                }
            }
        }
    }
    out
}

fn jordan2_diag(p: u64) -> Vec<Member> {
    let mut out = Vec::new();
    for b in nonzero(p) {
        for c in nonzero(p) {
            for d in c..p {
                out.push(m(
                    vec![("b", b), ("c", c), ("d", d)],
                    blocks(&[jordan(b, 2), scalar(c), scalar(d)]),
                    vec![lin(p, b), lin(p, c), lin(p, d)],
                ));
            }
        }
    }
    out
}

fn jordan2_pair(p: u64) -> Vec<Member> {
    let mut out = Vec::new();
    for b in nonzero(p) {
        for c in b..p {
            out.push(m(vec![("b", b), ("c", c)], blocks(&[jordan(b, 2), jordan(c, 2)]), vec![lin(p, b), lin(p, c)]));
        }
    }
    out
}

fn jordan3_scalar(p: u64) -> Vec<Member> {
    let mut out = Vec::new();
    for b in nonzero(p) {
        for c in nonzero(p) {
            out.push(m(vec![("b", b), ("c", c)], blocks(&[jordan(b, 3), scalar(c)]), vec![lin(p, b), lin(p, c)]));
        }
    }
    out
}

fn jordan4(p: u64) -> Vec<Member> {
    nonzero(p).map(|b| m(vec![("b", b)], blocks(&[jordan(b, 4)]), vec![lin(p, b)])).collect()
}

/// Unordered pairs of irreducible quadratics, lexicographic on `(b0, b1)`.
fn companion2_pair(p: u64) -> Vec<Member> {
    let irr = irreducible_polys(p, 2);
    let mut out = Vec::new();
    for (i, f) in irr.iter().enumerate() {
        for g in &irr[i..] {
            let mut params = quad_params(["b0", "b1"], f).to_vec();
            params.extend(quad_params(["c0", "c1"], g));
            out.push(m(params, blocks(&[companion(f), companion(g)]), vec![f.clone(), g.clone()]));
        }
    }
    out
}

/// The non-semisimple action with minimal polynomial `f^2`, `f` quadratic.
fn companion2_glued(p: u64) -> Vec<Member> {
    irreducible_polys(p, 2)
        .into_iter()
        .map(|f| {
            let (b0, b1) = quad(&f);
            let (n0, n1) = (neg(b0), neg(b1));
            m(
                quad_params(["b0", "b1"], &f).to_vec(),
                vec![0, 1, 1, 0, n0, n1, 0, 1, 0, 0, 0, 1, 0, 0, n0, n1],
                vec![f.clone()],
            )
        })
        .collect()
}

fn companion3_scalar(p: u64) -> Vec<Member> {
    let mut out = Vec::new();
    for f in irreducible_polys(p, 3) {
        for c in nonzero(p) {
            let mut params = poly_params(&f);
            params.push(("c", c));
            out.push(m(params, blocks(&[companion(&f), scalar(c)]), vec![f.clone(), lin(p, c)]));
        }
    }
    out
}

fn companion2_diag(p: u64) -> Vec<Member> {
    let mut out = Vec::new();
    for f in irreducible_polys(p, 2) {
        for c in nonzero(p) {
            for d in c..p {
                let mut params = quad_params(["b0", "b1"], &f).to_vec();
                params.extend([("c", c), ("d", d)]);
                out.push(m(
                    params,
                    blocks(&[companion(&f), scalar(c), scalar(d)]),
                    vec![f.clone(), lin(p, c), lin(p, d)],
                ));
            }
        }
    }
    out
}

fn jordan2_companion2(p: u64) -> Vec<Member> {
    let mut out = Vec::new();
    for b in nonzero(p) {
        for f in irreducible_polys(p, 2) {
            let mut params = vec![("b", b)];
            params.extend(quad_params(["c0", "c1"], &f));
            out.push(m(params, blocks(&[jordan(b, 2), companion(&f)]), vec![lin(p, b), f.clone()]));
        }
    }
    out
}

fn c(n: i128, k: i128) -> i128 {
    binomial(n, k)
}

/// Families for `|M| = p^n`, grouped by shape in order of first appearance.
pub(crate) fn families(n: u32) -> Vec<Family> {
    macro_rules! fam {
        ($id:expr, $layers:expr, $members:expr, |$p:ident| $strata:expr) => {
            Family { id: $id, layers: $layers, members: $members, strata: |$p: i128| $strata }
        };
    }
    match n {
        0 => vec![fam!("zero", &[], zero_members, |_p| vec![(0, 1)])],
        1 => vec![fam!("scalar", &[(1, 1)], cyclic1, |p| vec![(0, 1), (1, p - 2)])],
        2 => vec![
            fam!("scalar", &[(2, 1)], cyclic2, |p| vec![(0, 1), (1, p - 1), (2, (p - 2) * p)]),
            fam!("diagonal", &[(1, 2)], diag2, |p| vec![(0, 1), (1, p - 2), (2, c(p - 1, 2))]),
            fam!("jordan", &[(1, 2)], jordan2, |p| vec![(1, 1), (2, p - 2)]),
            fam!("companion", &[(1, 2)], companion2, |p| vec![(2, (p * p - p) / 2)]),
        ],
        3 => vec![
            fam!("scalar", &[(3, 1)], cyclic3, |p| vec![
                (0, 1),
                (1, p - 1),
                (2, p * (p - 1)),
                (3, p * p * (p - 2))
            ]),
            fam!("diagonal", &[(2, 1), (1, 1)], top_diag2, |p| vec![
                (0, 1),
                (1, 2 * p - 3),
                (2, (p - 2) * (2 * p - 1)),
                (3, p * (p - 2) * (p - 2))
            ]),
            fam!("shear", &[(2, 1), (1, 1)], top_shear2, |p| vec![(1, 1), (3, p - 2)]),
            fam!("p-shear", &[(2, 1), (1, 1)], top_pshear2, |p| vec![(1, 1), (2, p - 1), (3, p * (p - 2))]),
            fam!("diagonal", &[(1, 3)], diag3, |p| vec![(0, 1), (1, p - 2), (2, c(p - 1, 2)), (3, c(p, 3))]),
            fam!("jordan2+scalar", &[(1, 3)], jordan2_scalar, |p| vec![
                (1, 1),
                (2, 2 * (p - 2)),
                (3, (p - 2) * (p - 2))
            ]),
            fam!("jordan3", &[(1, 3)], jordan3, |p| vec![(2, 1), (3, p - 2)]),
            fam!("companion3", &[(1, 3)], companion3, |p| vec![(3, (p * p * p - p) / 3)]),
            fam!("companion2+scalar", &[(1, 3)], companion2_scalar, |p| vec![
                (2, (p * p - p) / 2),
                (3, (p * p - p) / 2 * (p - 2))
            ]),
        ],
        4 => vec![
            fam!("scalar", &[(4, 1)], cyclic4, |p| vec![
                (0, 1),
                (1, p - 1),
                (2, p * (p - 1)),
                (3, p * p * (p - 1)),
                (4, p * p * p * (p - 2))
            ]),
            fam!("diagonal", &[(3, 1), (1, 1)], top_diag3, |p| vec![
                (0, 1),
                (1, 2 * p - 3),
                (2, 2 * (p - 1) * (p - 1)),
                (3, p * (p - 2) * (2 * p - 1)),
                (4, p * p * (p - 2) * (p - 2))
            ]),
            fam!("shear", &[(3, 1), (1, 1)], top_shear3, |p| vec![(1, 1), (2, p - 1), (4, p * (p - 2))]),
            fam!("p-shear", &[(3, 1), (1, 1)], top_pshear3, |p| vec![
                (1, 1),
                (2, p * p - 1),
                (4, p * p * (p - 2))
            ]),
            fam!("diagonal", &[(2, 2)], sq_diag, |p| vec![
                (0, 1),
                (1, p - 1),
                (2, p * (p - 2) + c(p, 2)),
                (3, p * (p - 1) * (p - 2)),
                (4, c(p * (p - 2) + 1, 2))
            ]),
            fam!("p-shear", &[(2, 2)], sq_pshear, |p| vec![(1, 1), (2, p - 1), (4, p * (p - 2))]),
            fam!("p-companion", &[(2, 2)], sq_pcompanion, |p| vec![
                (2, (p * p - p) / 2),
                (4, (p * p - p) / 2 * (p - 2))
            ]),
            fam!("unipotent-lift", &[(2, 2)], sq_unipotent_lift, |p| vec![
                (2, p),
                (3, p * (p - 1)),
                (4, p * p * (p - 2))
            ]),
            fam!("companion-lift", &[(2, 2)], sq_companion_lift, |p| vec![(4, p * p * (p * p - p) / 2)]),
            fam!("diagonal", &[(2, 1), (1, 2)], mixed_diag, |p| vec![
                (0, 1),
                (1, 2 * p - 3),
                (2, (p - 2) * (5 * p - 3) / 2),
                (3, (p - 2) * (3 * p * p - 6 * p + 1) / 2),
                (4, p * (p - 1) * (p - 2) * (p - 2) / 2)
            ]),
            fam!("shear+scalar", &[(2, 1), (1, 2)], mixed_shear_scalar, |p| vec![
                (1, 1),
                (2, p - 2),
                (3, p - 2),
                (4, (p - 2) * (p - 2))
            ]),
            fam!("p-shear+eta", &[(2, 1), (1, 2)], mixed_pshear_eta, |p| vec![
                (1, 1),
                (2, p - 1),
                (4, p * (p - 2))
            ]),
            fam!("p-shear+corner", &[(2, 1), (1, 2)], mixed_pshear_corner, |p| vec![(2, 1), (4, p - 2)]),
            fam!("scalar+jordan", &[(2, 1), (1, 2)], mixed_scalar_jordan, |p| vec![
                (1, 1),
                (2, 2 * p - 3),
                (3, (p - 2) * (2 * p - 1)),
                (4, p * (p - 2) * (p - 2))
            ]),
            fam!("cyclic-shear", &[(2, 1), (1, 2)], mixed_cyclic_shear, |p| vec![(2, 1), (4, p - 2)]),
            fam!("p-cyclic-shear", &[(2, 1), (1, 2)], mixed_pcyclic_shear, |p| vec![
                (2, 1),
                (3, p - 1),
                (4, p * (p - 2))
            ]),
            fam!("p-shear+scalar", &[(2, 1), (1, 2)], mixed_pshear_scalar, |p| vec![
                (2, p - 2),
                (3, (p - 2) * (2 * p - 1)),
                (4, p * (p - 2) * (p - 3))
            ]),
            fam!("scalar+companion", &[(2, 1), (1, 2)], mixed_scalar_companion, |p| vec![
                (2, (p * p - p) / 2),
                (3, (p * p - p) / 2 * (p - 1)),
                (4, (p * p - p) / 2 * p * (p - 2))
            ]),
            fam!("diagonal", &[(1, 4)], diag4, |p| vec![
                (0, 1),
                (1, p - 2),
                (2, c(p - 1, 2)),
                (3, c(p, 3)),
                (4, c(p + 1, 4))
            ]),
            fam!("jordan2+diagonal", &[(1, 4)], jordan2_diag, |p| vec![
                (1, 1),
                (2, 2 * (p - 2)),
                (3, (p - 2) * (3 * p - 5) / 2),
                (4, (p - 1) * (p - 2) * (p - 2) / 2)
            ]),
            fam!("jordan2-pair", &[(1, 4)], jordan2_pair, |p| vec![(2, 1), (3, p - 2), (4, c(p - 1, 2))]),
            fam!("jordan3+scalar", &[(1, 4)], jordan3_scalar, |p| vec![
                (2, 1),
                (3, 2 * (p - 2)),
                (4, (p - 2) * (p - 2))
            ]),
            fam!("jordan4", &[(1, 4)], jordan4, |p| vec![(3, 1), (4, p - 2)]),
            fam!("companion2-pair", &[(1, 4)], companion2_pair, |p| vec![(4, c((p * p - p) / 2 + 1, 2))]),
            fam!("companion2-glued", &[(1, 4)], companion2_glued, |p| vec![(4, (p * p - p) / 2)]),
            fam!("companion4", &[(1, 4)], companion4, |p| vec![(4, (p * p * p * p - p * p) / 4)]),
            fam!("companion3+scalar", &[(1, 4)], companion3_scalar, |p| vec![
                (3, (p * p * p - p) / 3),
                (4, (p * p * p - p) / 3 * (p - 2))
            ]),
            fam!("companion2+diagonal", &[(1, 4)], companion2_diag, |p| vec![
                (2, (p * p - p) / 2),
                (3, (p * p - p) / 2 * (p - 2)),
                (4, (p * p - p) / 2 * c(p - 1, 2))
            ]),
            fam!("jordan2+companion2", &[(1, 4)], jordan2_companion2, |p| vec![
                (3, (p * p - p) / 2),
                (4, (p * p - p) / 2 * (p - 2))
            ]),
        ],
        _ => Vec::new(),
    }
}
