//! Subgroups of a layered p-group via Smith normal form over Z/p^E.
//!
//! The ambient group embeds in `Z_{p^E}^r` by scaling coordinate `j` by
//! `p^{E - e_j}`. Diagonalizing the generator matrix there gives a basis of the
//! span adapted to its cyclic decomposition.

use super::arith;
use super::matrix::Hom;
use super::shape::{GroupElement, GroupShape};

#[derive(Debug, Clone)]
pub struct Subgroup {
    ambient: GroupShape,
    e: u32,
    q: u64,
    /// Left transform, `r × r` row-major.
    l: Vec<u64>,
    /// Right transform, `m × m` row-major.
    right: Vec<u64>,
    /// Valuation of the i-th diagonal entry; `e` past the last pivot.
    vals: Vec<u32>,
    ngens: usize,
    basis: Vec<GroupElement>,
    shape: GroupShape,
}

impl Subgroup {
    /// The subgroup generated by `gens`.
    pub fn span(ambient: &GroupShape, gens: &[GroupElement]) -> Self {
        let p = ambient.p();
        let e = ambient.max_exponent();
        let q = arith::pow(p, e);
        let r = ambient.rank();
        let m = gens.len();
        let scale: Vec<u64> = ambient.exps().iter().map(|&ej| arith::pow(p, e - ej)).collect();
        let mut g = vec![0u64; r * m];
        for (c, x) in gens.iter().enumerate() {
            for j in 0..r {
                g[j * m + c] = arith::mul_mod(x.coords[j], scale[j], q);
            }
        }
        let mut l = identity(r, q);
        let mut linv = identity(r, q);
        let mut right = identity(m, q);
        let mut vals = vec![e; r];
        for k in 0..r.min(m) {
            let mut best: Option<(u32, usize, usize)> = None;
            for i in k..r {
                for j in k..m {
                    let v = g[i * m + j];
                    if v != 0 {
                        let val = arith::valuation(v, p, e);
                        if best.is_none_or(|b| val < b.0) {
                            best = Some((val, i, j));
                        }
                    }
                }
            }
            let Some((v, pi, pj)) = best else { break };
            swap_rows(&mut g, m, pi, k);
            swap_rows(&mut l, r, pi, k);
            swap_cols(&mut linv, r, pi, k);
            swap_cols(&mut g, m, pj, k);
            swap_cols(&mut right, m, pj, k);
            let pv = arith::pow(p, v);
            let u = g[k * m + k] / pv;
            let uinv = arith::inv_mod(u, q).expect("unit after removing the valuation");
            scale_row(&mut g, m, k, uinv, q);
            scale_row(&mut l, r, k, uinv, q);
            scale_col(&mut linv, r, k, u % q, q);
            for i in 0..r {
                if i != k && g[i * m + k] != 0 {
                    let c = g[i * m + k] / pv;
                    add_row(&mut g, m, i, k, q - c % q, q);
                    add_row(&mut l, r, i, k, q - c % q, q);
                    add_col(&mut linv, r, k, i, c % q, q);
                }
            }
            for j in 0..m {
                if j != k && g[k * m + j] != 0 {
                    let c = g[k * m + j] / pv;
                    add_col(&mut g, m, j, k, q - c % q, q);
                    add_col(&mut right, m, j, k, q - c % q, q);
                }
            }
            vals[k] = v;
        }
        let mut basis = Vec::new();
        let mut exps = Vec::new();
        for (i, &v) in vals.iter().enumerate() {
            if v >= e {
                continue;
            }
            let pv = arith::pow(p, v);
            let coords = (0..r)
                .map(|j| {
                    let scaled = arith::mul_mod(linv[j * r + i], pv, q);
                    debug_assert_eq!(scaled % scale[j], 0);
                    scaled / scale[j]
                })
                .collect();
            basis.push(GroupElement::new(coords));
            exps.push(e - v);
        }
        let (shape, _) = GroupShape::from_cyclic_exponents(ambient.prime(), &exps)
            .expect("subgroup exponents bounded by the ambient ones");
        Subgroup { ambient: ambient.clone(), e, q, l, right, vals, ngens: m, basis, shape }
    }

    /// The image of a homomorphism.
    pub fn image(h: &Hom) -> Self {
        Self::span(h.codomain(), &h.columns())
    }

    pub fn ambient(&self) -> &GroupShape {
        &self.ambient
    }

    /// Abstract shape of the subgroup; coordinate i corresponds to `basis()[i]`.
    pub fn shape(&self) -> &GroupShape {
        &self.shape
    }

    pub fn basis(&self) -> &[GroupElement] {
        &self.basis
    }

    pub fn log_order(&self) -> u32 {
        self.shape.log_order()
    }

    pub fn is_whole(&self) -> bool {
        self.log_order() == self.ambient.log_order()
    }

    /// Inclusion of the standardized subgroup into the ambient group.
    pub fn embedding(&self) -> Hom {
        Hom::from_columns(self.shape.clone(), self.ambient.clone(), &self.basis)
            .expect("basis elements have the orders of their coordinates")
    }

    fn left_coords(&self, x: &GroupElement) -> Vec<u64> {
        let p = self.ambient.p();
        let r = self.ambient.rank();
        let y: Vec<u64> = x
            .coords
            .iter()
            .zip(self.ambient.exps())
            .map(|(&c, &ej)| arith::mul_mod(c, arith::pow(p, self.e - ej), self.q))
            .collect();
        (0..r)
            .map(|i| {
                let acc: u128 =
                    (0..r).map(|j| self.l[i * r + j] as u128 * y[j] as u128).sum();
                (acc % self.q as u128) as u64
            })
            .collect()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        let p = self.ambient.p();
        self.left_coords(x)
            .iter()
            .zip(&self.vals)
            .all(|(&u, &v)| if v >= self.e { u == 0 } else { u % arith::pow(p, v) == 0 })
    }

    /// Coordinates of `x` with respect to `basis()`, if it lies in the subgroup.
    pub fn coordinates(&self, x: &GroupElement) -> Option<GroupElement> {
        if !self.contains(x) {
            return None;
        }
        let p = self.ambient.p();
        let u = self.left_coords(x);
        Some(GroupElement::new(
            self.vals
                .iter()
                .zip(&u)
                .filter(|(&v, _)| v < self.e)
                .map(|(&v, &ui)| (ui / arith::pow(p, v)) % arith::pow(p, self.e - v))
                .collect(),
        ))
    }

    /// Integer coefficients `x` with `Σ x_j gens_j = y`, if `y` lies in the span.
    pub fn solve(&self, y: &GroupElement) -> Option<Vec<u64>> {
        if !self.contains(y) {
            return None;
        }
        let p = self.ambient.p();
        let u = self.left_coords(y);
        let m = self.ngens;
        let mut w = vec![0u64; m];
        for (i, wi) in w.iter_mut().enumerate().take(self.ambient.rank().min(m)) {
            let v = self.vals[i];
            if v < self.e {
                *wi = u[i] / arith::pow(p, v);
            }
        }
        Some(
            (0..m)
                .map(|j| {
                    let acc: u128 =
                        (0..m).map(|k| self.right[j * m + k] as u128 * w[k] as u128).sum();
                    (acc % self.q as u128) as u64
                })
                .collect(),
        )
    }

    /// `self ⊆ other` (same ambient group).
    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.basis.iter().all(|h| other.contains(h))
    }
}

fn identity(n: usize, q: u64) -> Vec<u64> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1 % q;
    }
    m
}

fn swap_rows(m: &mut [u64], w: usize, a: usize, b: usize) {
    if a != b {
        for k in 0..w {
            m.swap(a * w + k, b * w + k);
        }
    }
}

fn swap_cols(m: &mut [u64], w: usize, a: usize, b: usize) {
    if a != b {
        for r in 0..m.len() / w {
            m.swap(r * w + a, r * w + b);
        }
    }
}

fn scale_row(m: &mut [u64], w: usize, r: usize, c: u64, q: u64) {
    for k in 0..w {
        m[r * w + k] = arith::mul_mod(m[r * w + k], c, q);
    }
}

fn scale_col(m: &mut [u64], w: usize, col: usize, c: u64, q: u64) {
    for r in 0..m.len() / w {
        m[r * w + col] = arith::mul_mod(m[r * w + col], c, q);
    }
}

/// row `dst` += c · row `src`.
fn add_row(m: &mut [u64], w: usize, dst: usize, src: usize, c: u64, q: u64) {
    for k in 0..w {
        m[dst * w + k] = arith::add_mod(m[dst * w + k], arith::mul_mod(c, m[src * w + k], q), q);
    }
}

/// col `dst` += c · col `src`.
fn add_col(m: &mut [u64], w: usize, dst: usize, src: usize, c: u64, q: u64) {
    for r in 0..m.len() / w {
        m[r * w + dst] = arith::add_mod(m[r * w + dst], arith::mul_mod(c, m[r * w + src], q), q);
    }
}
