//! Polynomials over Z_p and their integer lifts.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::arith;
use crate::error::{Error, Result};

/// Polynomial over Z_p, coefficients in ascending degree, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyModP {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyModP {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self::from_reduced(p, coeffs.into_iter().map(|c| c % p).collect()))
    }

    fn from_reduced(p: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyModP { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        PolyModP { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::from_reduced(p, vec![1 % p])
    }

    /// `X`.
    pub fn x(p: u64) -> Self {
        PolyModP { p, coeffs: vec![0, 1] }
    }

    /// `X - c`.
    pub fn linear(p: u64, c: u64) -> Self {
        PolyModP { p, coeffs: vec![arith::neg_mod(c, p), 1] }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = arith::inv_mod(self.leading(), self.p).expect("nonzero residue mod p");
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::from_reduced(self.p, self.coeffs.iter().map(|&a| arith::mul_mod(a, c, self.p)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                arith::add_mod(a, b, self.p)
            })
            .collect();
        Self::from_reduced(self.p, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(self.p - 1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + a * b) % self.p;
            }
        }
        Self::from_reduced(self.p, c)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.p), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = arith::inv_mod(d.leading(), self.p).expect("nonzero residue mod p");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(self.p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = arith::mul_mod(r[i], inv, self.p);
            q[i - dd] = c;
            if c != 0 {
                for (j, &b) in d.coeffs.iter().enumerate() {
                    let k = i - dd + j;
                    r[k] = arith::sub_mod(r[k], arith::mul_mod(c, b, self.p), self.p);
                }
            }
        }
        r.truncate(dd);
        (Self::from_reduced(self.p, q), Self::from_reduced(self.p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % self.p)
    }

    /// Integer polynomial with the same least non-negative coefficients.
    pub fn lift(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| c as i64).collect())
    }

    /// Irreducibility by trial division with all monic polynomials of degree
    /// at most half.
    pub fn is_irreducible(&self) -> bool {
        let d = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return false,
        };
        if d == 1 {
            return true;
        }
        (1..=d / 2).all(|k| monic_polys(self.p, k).all(|g| !g.divides(self)))
    }

    /// Factor a monic polynomial into monic irreducibles with multiplicities,
    /// in the order of `irreducible_polys`, degree by degree.
    pub fn factor(&self) -> Vec<(PolyModP, u32)> {
        let mut rest = self.monic();
        let mut out = Vec::new();
        let mut d = 1;
        while rest.degree().unwrap_or(0) >= 1 {
            if 2 * d > rest.degree().unwrap() {
                out.push((rest.clone(), 1));
                break;
            }
            for f in monic_polys(self.p, d) {
                if !f.is_irreducible() {
                    continue;
                }
                let mut k = 0;
                while f.divides(&rest) {
                    rest = rest.div_rem(&f).0;
                    k += 1;
                }
                if k > 0 {
                    out.push((f, k));
                }
            }
            d += 1;
        }
        out.sort_by_key(|a| a.0.order_key());
        out
    }

    /// Degree first, then coefficient sequence constant-first.
    pub fn order_key(&self) -> (usize, Vec<u64>) {
        (self.coeffs.len(), self.coeffs.clone())
    }
}

impl PartialOrd for PolyModP {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PolyModP {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.p.cmp(&other.p).then_with(|| self.order_key().cmp(&other.order_key()))
    }
}

/// All monic polynomials of degree `d`, lexicographic on the lower
/// coefficients with the constant term most significant.
pub fn monic_polys(p: u64, d: usize) -> impl Iterator<Item = PolyModP> {
    let total = (p as usize).pow(d as u32);
    (0..total).map(move |mut idx| {
        let mut c = vec![0u64; d + 1];
        for i in (0..d).rev() {
            c[i] = (idx % p as usize) as u64;
            idx /= p as usize;
        }
        c[d] = 1;
        PolyModP { p, coeffs: c }
    })
}

/// Monic irreducibles of degree `d` other than `X`.
pub fn irreducible_polys(p: u64, d: usize) -> Vec<PolyModP> {
    monic_polys(p, d).filter(|f| f.coeffs[0] != 0 && f.is_irreducible()).collect()
}

impl fmt::Debug for PolyModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.p)
    }
}

impl fmt::Display for PolyModP {
    /// `X^2+X+1`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "X".to_string(),
                (1, c) => format!("{c}X"),
                (i, 1) => format!("X^{i}"),
                (i, c) => format!("{c}X^{i}"),
            };
            terms.push(t);
        }
        write!(f, "{}", terms.join("+"))
    }
}

/// Integer polynomial, ascending coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPoly(Vec<i64>);

impl IntPoly {
    pub fn new(coeffs: Vec<i64>) -> Self {
        IntPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return IntPoly(Vec::new());
        }
        let mut c = vec![0i64; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly(c)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(IntPoly(vec![1]), |acc, _| acc.mul(self))
    }
}
