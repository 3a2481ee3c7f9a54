//! Endomorphisms and homomorphisms of layered p-groups as integer matrices.
//!
//! Entry `(r, c)` of a matrix from a group with coordinate exponents `f` to one
//! with exponents `e` lives in `[0, p^{e_r})` and is divisible by
//! `p^{e_r - f_c}` whenever `e_r > f_c`. With that convention applying and
//! composing are plain matrix products reduced row by row.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::arith;
use super::fp_matrix::FpMatrix;
use super::poly::{IntPoly, PolyModP};
use super::shape::{GroupElement, GroupShape};
use crate::error::{Error, Result};

fn check_entries(p: u64, row_exps: &[u32], col_exps: &[u32], entries: &[u64]) -> Result<()> {
    let cols = col_exps.len();
    if entries.len() != row_exps.len() * cols {
        return Err(Error::InvalidMatrix(format!(
            "expected {}x{} entries, got {}",
            row_exps.len(),
            cols,
            entries.len()
        )));
    }
    for (r, &er) in row_exps.iter().enumerate() {
        let m = arith::pow(p, er);
        for (c, &fc) in col_exps.iter().enumerate() {
            let v = entries[r * cols + c];
            if v >= m {
                return Err(Error::InvalidMatrix(format!(
                    "entry ({r},{c}) = {v} not reduced modulo {m}"
                )));
            }
            if er > fc && !v.is_multiple_of(arith::pow(p, er - fc)) {
                return Err(Error::InvalidMatrix(format!(
                    "entry ({r},{c}) = {v} must be divisible by {}",
                    arith::pow(p, er - fc)
                )));
            }
        }
    }
    Ok(())
}

fn reduce_rows(row_moduli: &[u64], cols: usize, raw: &[i64]) -> Vec<u64> {
    raw.iter()
        .enumerate()
        .map(|(i, &v)| v.rem_euclid(row_moduli[i / cols] as i64) as u64)
        .collect()
}

fn apply_raw(row_moduli: &[u64], cols: usize, entries: &[u64], x: &[u64]) -> Vec<u64> {
    row_moduli
        .iter()
        .enumerate()
        .map(|(r, &m)| {
            let row = &entries[r * cols..(r + 1) * cols];
            let acc: u128 = row.iter().zip(x).map(|(&a, &b)| a as u128 * b as u128).sum();
            (acc % m as u128) as u64
        })
        .collect()
}

fn compose_raw(row_moduli: &[u64], inner: usize, cols: usize, a: &[u64], b: &[u64]) -> Vec<u64> {
    let rows = row_moduli.len();
    let mut out = vec![0u64; rows * cols];
    for r in 0..rows {
        let m = row_moduli[r] as u128;
        for c in 0..cols {
            let mut acc: u128 = 0;
            for k in 0..inner {
                acc += a[r * inner + k] as u128 * b[k * cols + c] as u128;
            }
            out[r * cols + c] = (acc % m) as u64;
        }
    }
    out
}

/// A group endomorphism in block form; the matrix of `t` for a Λ-module.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StructuredMatrix {
    shape: GroupShape,
    entries: Vec<u64>,
}

impl StructuredMatrix {
    /// Validate row-major entries against the shape's range and divisibility
    /// constraints.
    pub fn new(shape: GroupShape, entries: Vec<u64>) -> Result<Self> {
        check_entries(shape.p(), shape.exps(), shape.exps(), &entries)?;
        Ok(StructuredMatrix { shape, entries })
    }

    pub fn from_rows(shape: GroupShape, rows: &[Vec<u64>]) -> Result<Self> {
        if rows.len() != shape.rank() {
            return Err(Error::InvalidMatrix(format!(
                "expected {} rows, got {}",
                shape.rank(),
                rows.len()
            )));
        }
        Self::new(shape, rows.concat())
    }

    /// Reduce signed integers row by row, then validate divisibility.
    pub fn from_signed(shape: GroupShape, entries: &[i64]) -> Result<Self> {
        let n = shape.rank();
        if entries.len() != n * n {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        let e = reduce_rows(shape.moduli(), n, entries);
        Self::new(shape, e)
    }

    pub(crate) fn from_parts_unchecked(shape: GroupShape, entries: Vec<u64>) -> Self {
        debug_assert!(check_entries(shape.p(), shape.exps(), shape.exps(), &entries).is_ok());
        StructuredMatrix { shape, entries }
    }

    pub fn identity(shape: &GroupShape) -> Self {
        let n = shape.rank();
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1 % shape.moduli()[i];
        }
        StructuredMatrix { shape: shape.clone(), entries }
    }

    pub fn zero(shape: &GroupShape) -> Self {
        let n = shape.rank();
        StructuredMatrix { shape: shape.clone(), entries: vec![0; n * n] }
    }

    /// `c · I`, reduced per row.
    pub fn scalar(shape: &GroupShape, c: i64) -> Self {
        let n = shape.rank();
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = c.rem_euclid(shape.moduli()[i] as i64) as u64;
        }
        StructuredMatrix { shape: shape.clone(), entries }
    }

    #[inline]
    pub fn shape(&self) -> &GroupShape {
        &self.shape
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.shape.rank()
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.dim() + c]
    }

    /// Row-major entries.
    #[inline]
    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        let n = self.dim();
        (0..n).map(|r| self.entries[r * n..(r + 1) * n].to_vec()).collect()
    }

    fn same_shape(&self, other: &GroupShape) -> Result<()> {
        if &self.shape != other {
            return Err(Error::ShapeMismatch(format!("{} vs {}", self.shape, other)));
        }
        Ok(())
    }

    /// `σ_A(x)`.
    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        self.shape.check_element(x)?;
        Ok(self.apply_unchecked(x))
    }

    #[inline]
    pub fn apply_unchecked(&self, x: &GroupElement) -> GroupElement {
        GroupElement::new(apply_raw(self.shape.moduli(), self.dim(), &self.entries, &x.coords))
    }

    /// Matrix of `σ_self ∘ σ_other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_shape(&other.shape)?;
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    pub fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.dim();
        StructuredMatrix {
            shape: self.shape.clone(),
            entries: compose_raw(self.shape.moduli(), n, n, &self.entries, &other.entries),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(&other.shape)?;
        Ok(self.zip_rows(other, arith::add_mod))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(&other.shape)?;
        Ok(self.zip_rows(other, arith::sub_mod))
    }

    fn zip_rows(&self, other: &Self, f: impl Fn(u64, u64, u64) -> u64) -> Self {
        let n = self.dim();
        let m = self.shape.moduli();
        StructuredMatrix {
            shape: self.shape.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .enumerate()
                .map(|(i, (&a, &b))| f(a, b, m[i / n]))
                .collect(),
        }
    }

    /// `I - A`.
    pub fn one_minus(&self) -> Self {
        Self::identity(&self.shape).zip_rows(self, arith::sub_mod)
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::scalar(&self.shape, c).mul_unchecked(self)
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(&self.shape);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            k >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.shape)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    /// Entrywise reduction modulo p.
    pub fn reduce_mod_p(&self) -> FpMatrix {
        let p = self.shape.p();
        FpMatrix::from_entries(p, self.dim(), self.entries.iter().map(|&v| v % p).collect())
    }

    /// Membership in GL(M): the reduction mod p is invertible.
    pub fn is_unit(&self) -> bool {
        self.reduce_mod_p().is_invertible()
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv_bar = self.reduce_mod_p().inverse().ok_or(Error::NotUnit)?;
        let n = self.dim();
        let shape = &self.shape;
        // lift; the upper blocks of the reduction vanish so zeros are valid there
        let mut lifted = vec![0u64; n * n];
        for r in 0..n {
            for c in 0..n {
                if shape.exps()[r] <= shape.exps()[c] {
                    lifted[r * n + c] = inv_bar.get(r, c);
                }
            }
        }
        let x0 = StructuredMatrix { shape: shape.clone(), entries: lifted };
        // A·x0 = I - E with E(M) ⊆ pM, so (I - E)^{-1} = Σ E^k
        let e = self.mul_unchecked(&x0).one_minus();
        let mut series = Self::identity(shape);
        let mut term = Self::identity(shape);
        for _ in 0..shape.max_exponent() {
            term = term.mul_unchecked(&e);
            series = series.zip_rows(&term, arith::add_mod);
        }
        let inv = x0.mul_unchecked(&series);
        debug_assert!(self.mul_unchecked(&inv).is_identity());
        Ok(inv)
    }

    /// `g(σ_A)` for an integer polynomial.
    pub fn eval_int_poly(&self, g: &IntPoly) -> Self {
        let mut acc = Self::zero(&self.shape);
        for &c in g.coeffs().iter().rev() {
            acc = acc.mul_unchecked(self).zip_rows(&Self::scalar(&self.shape, c), arith::add_mod);
        }
        acc
    }

    /// `f̄(σ_A)` with the least non-negative lift of `f`.
    pub fn eval_poly(&self, f: &PolyModP) -> Self {
        self.eval_int_poly(&f.lift())
    }

    /// Conjugate `P A P^{-1}`.
    pub fn conjugate_by(&self, p: &Self, p_inv: &Self) -> Self {
        p.mul_unchecked(self).mul_unchecked(p_inv)
    }

    /// Lexicographic key on row-major entries.
    pub fn key(&self) -> &[u64] {
        &self.entries
    }

    pub fn as_hom(&self) -> Hom {
        Hom {
            domain: self.shape.clone(),
            codomain: self.shape.clone(),
            entries: self.entries.clone(),
        }
    }
}

impl fmt::Debug for StructuredMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StructuredMatrix({}; {self})", self.shape)
    }
}

impl fmt::Display for StructuredMatrix {
    /// `[a,b;c,d]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "[{}]", rows.join(";"))
    }
}

/// A homomorphism between two layered groups of the same prime.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hom {
    domain: GroupShape,
    codomain: GroupShape,
    entries: Vec<u64>,
}

impl Hom {
    pub fn new(domain: GroupShape, codomain: GroupShape, entries: Vec<u64>) -> Result<Self> {
        if domain.p() != codomain.p() {
            return Err(Error::MixedPrimes(domain.p(), codomain.p()));
        }
        check_entries(domain.p(), codomain.exps(), domain.exps(), &entries)?;
        Ok(Hom { domain, codomain, entries })
    }

    /// Entries given column by column as images of the domain basis.
    pub fn from_columns(
        domain: GroupShape,
        codomain: GroupShape,
        columns: &[GroupElement],
    ) -> Result<Self> {
        if columns.len() != domain.rank() {
            return Err(Error::ShapeMismatch(format!(
                "{} columns for a domain of rank {}",
                columns.len(),
                domain.rank()
            )));
        }
        let rows = codomain.rank();
        let cols = domain.rank();
        let mut entries = vec![0; rows * cols];
        for (c, col) in columns.iter().enumerate() {
            codomain.check_element(col)?;
            for r in 0..rows {
                entries[r * cols + c] = col.coords[r];
            }
        }
        Self::new(domain, codomain, entries)
    }

    pub fn identity(shape: &GroupShape) -> Self {
        StructuredMatrix::identity(shape).as_hom()
    }

    pub fn domain(&self) -> &GroupShape {
        &self.domain
    }

    pub fn codomain(&self) -> &GroupShape {
        &self.codomain
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.domain.rank() + c]
    }

    /// Image of the `c`-th basis vector.
    pub fn column(&self, c: usize) -> GroupElement {
        let cols = self.domain.rank();
        GroupElement::new((0..self.codomain.rank()).map(|r| self.entries[r * cols + c]).collect())
    }

    pub fn columns(&self) -> Vec<GroupElement> {
        (0..self.domain.rank()).map(|c| self.column(c)).collect()
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        self.domain.check_element(x)?;
        Ok(self.apply_unchecked(x))
    }

    #[inline]
    pub fn apply_unchecked(&self, x: &GroupElement) -> GroupElement {
        GroupElement::new(apply_raw(
            self.codomain.moduli(),
            self.domain.rank(),
            &self.entries,
            &x.coords,
        ))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Hom) -> Result<Hom> {
        if inner.codomain != self.domain {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.domain, self.codomain, inner.domain, inner.codomain
            )));
        }
        Ok(Hom {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            entries: compose_raw(
                self.codomain.moduli(),
                self.domain.rank(),
                inner.domain.rank(),
                &self.entries,
                &inner.entries,
            ),
        })
    }

    /// Square homs are structured matrices.
    pub fn into_structured(self) -> Result<StructuredMatrix> {
        if self.domain != self.codomain {
            return Err(Error::ShapeMismatch(format!(
                "{} -> {} is not an endomorphism",
                self.domain, self.codomain
            )));
        }
        Ok(StructuredMatrix { shape: self.domain, entries: self.entries })
    }

    pub fn is_injective(&self) -> bool {
        super::subgroup::Subgroup::span(&self.codomain, &self.columns()).log_order()
            == self.domain.log_order()
    }
}

impl fmt::Debug for Hom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hom({} -> {}; {:?})", self.domain, self.codomain, self.entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_algebra::shape::Prime;

    fn z4z2() -> GroupShape {
        GroupShape::new(Prime::new(2).unwrap(), &[(2, 1), (1, 1)]).unwrap()
    }

    fn m(shape: &GroupShape, e: &[u64]) -> StructuredMatrix {
        StructuredMatrix::new(shape.clone(), e.to_vec()).unwrap()
    }

    fn el(v: &[u64]) -> GroupElement {
        GroupElement::new(v.to_vec())
    }

    #[test]
    fn apply_examples() {
        let s = z4z2();
        assert_eq!(StructuredMatrix::identity(&s).apply(&el(&[3, 1])).unwrap(), el(&[3, 1]));
        assert_eq!(m(&s, &[1, 2, 1, 1]).apply(&el(&[1, 0])).unwrap(), el(&[1, 1]));
        assert_eq!(m(&s, &[3, 0, 1, 1]).apply(&el(&[2, 1])).unwrap(), el(&[2, 1]));
    }

    #[test]
    fn rejects_invalid_entries() {
        let s = z4z2();
        assert!(StructuredMatrix::new(s.clone(), vec![1, 1, 0, 1]).is_err());
        assert!(StructuredMatrix::new(s.clone(), vec![4, 0, 0, 1]).is_err());
        assert!(StructuredMatrix::new(s.clone(), vec![1, 0, 2, 1]).is_err());
        assert!(StructuredMatrix::new(s, vec![1, 0, 0]).is_err());
    }

    #[test]
    fn mul_matches_pointwise_composition() {
        let s = z4z2();
        let a = m(&s, &[1, 2, 1, 1]);
        let b = m(&s, &[3, 0, 1, 1]);
        let ab = a.mul(&b).unwrap();
        for x in s.elements().unwrap() {
            assert_eq!(ab.apply(&x).unwrap(), a.apply(&b.apply(&x).unwrap()).unwrap());
        }
    }

    #[test]
    fn nilpotent_square() {
        let s = z4z2();
        let n = m(&s, &[0, 0, 1, 0]);
        let n2 = n.mul(&n).unwrap();
        assert!(n2.is_zero());
        for x in s.elements().unwrap() {
            assert_eq!(n2.apply(&x).unwrap(), n.apply(&n.apply(&x).unwrap()).unwrap());
        }
    }

    #[test]
    fn units_and_inverses() {
        let s = z4z2();
        assert!(StructuredMatrix::identity(&s).is_unit());
        assert!(!m(&s, &[2, 0, 0, 1]).is_unit());
        let a = m(&s, &[1, 2, 1, 1]);
        assert!(a.is_unit());
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&a).unwrap().is_identity());
        assert_eq!(m(&s, &[2, 0, 0, 1]).inverse(), Err(Error::NotUnit));
    }

    #[test]
    fn reduction() {
        let s = z4z2();
        let r = m(&s, &[3, 0, 1, 1]).reduce_mod_p();
        assert_eq!(r.entries(), &[1, 0, 1, 1]);
        let r = m(&s, &[1, 2, 1, 1]).reduce_mod_p();
        assert_eq!(r.get(0, 1), 0);
    }

    #[test]
    fn polynomial_evaluation() {
        let s = z4z2();
        let a = m(&s, &[1, 0, 1, 1]);
        let id = StructuredMatrix::identity(&s);
        assert!(id.eval_int_poly(&IntPoly::new(vec![-1, 1])).is_zero());
        assert_eq!(a.eval_int_poly(&IntPoly::new(vec![0, 1])), a);
        let sq = a.eval_int_poly(&IntPoly::new(vec![1, -2, 1]));
        assert!(sq.is_zero());
        for x in s.elements().unwrap() {
            assert!(sq.apply(&x).unwrap().is_zero());
        }
        // the least non-negative lift of (X+1)^2 over Z_2 is X^2+1, which is not
        // the same integer polynomial
        let lifted = PolyModP::new(2, vec![1, 0, 1]).unwrap();
        assert!(!a.eval_poly(&lifted).is_zero());
    }

    #[test]
    fn hom_composition_across_shapes() {
        let p = Prime::new(3).unwrap();
        let z3 = GroupShape::cyclic(p, 1).unwrap();
        let z9 = GroupShape::cyclic(p, 2).unwrap();
        let up = Hom::new(z3.clone(), z9.clone(), vec![3]).unwrap();
        let down = Hom::new(z9.clone(), z3.clone(), vec![1]).unwrap();
        assert!(Hom::new(z3.clone(), z9.clone(), vec![1]).is_err());
        assert!(down.compose(&up).unwrap().entries() == [0]);
        assert_eq!(up.compose(&down).unwrap().entries(), &[3]);
        assert!(up.is_injective());
        assert!(!down.is_injective());
    }
}
