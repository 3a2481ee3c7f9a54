//! Square matrices over Z_p: rank, inverse, minimal polynomial and
//! elementary divisors.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::arith;
use super::poly::PolyModP;
use super::shape::Partition;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpMatrix {
    p: u64,
    n: usize,
    entries: Vec<u64>,
}

impl FpMatrix {
    pub fn from_entries(p: u64, n: usize, entries: Vec<u64>) -> Self {
        assert_eq!(entries.len(), n * n, "expected {n}x{n} entries");
        FpMatrix { p, n, entries: entries.into_iter().map(|v| v % p).collect() }
    }

    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> Self {
        Self::from_entries(p, rows.len(), rows.concat())
    }

    pub fn identity(p: u64, n: usize) -> Self {
        Self::scalar(p, n, 1)
    }

    pub fn zero(p: u64, n: usize) -> Self {
        FpMatrix { p, n, entries: vec![0; n * n] }
    }

    pub fn scalar(p: u64, n: usize, c: u64) -> Self {
        let mut m = Self::zero(p, n);
        for i in 0..n {
            m.entries[i * n + i] = c % p;
        }
        m
    }

    /// Companion matrix of a monic polynomial: ones on the superdiagonal and
    /// the negated coefficients in the last row.
    pub fn companion(f: &PolyModP) -> Self {
        let p = f.p();
        let d = f.degree().expect("companion of the zero polynomial");
        let mut m = Self::zero(p, d);
        for i in 0..d.saturating_sub(1) {
            m.entries[i * d + i + 1] = 1;
        }
        for j in 0..d {
            m.entries[(d - 1) * d + j] = arith::neg_mod(f.coeffs()[j], p);
        }
        m
    }

    /// Block diagonal sum.
    pub fn block_diag(p: u64, blocks: &[FpMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut m = Self::zero(p, n);
        let mut off = 0;
        for b in blocks {
            for r in 0..b.n {
                for c in 0..b.n {
                    m.entries[(off + r) * n + off + c] = b.get(r, c);
                }
            }
            off += b.n;
        }
        m
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.n + c]
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = vec![0u64; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.entries[r * n + k];
                if a == 0 {
                    continue;
                }
                for c in 0..n {
                    out[r * n + c] = (out[r * n + c] + a * other.entries[k * n + c]) % self.p;
                }
            }
        }
        FpMatrix { p: self.p, n, entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        FpMatrix {
            p: self.p,
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| (a + b) % self.p)
                .collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut e = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                e[c * n + r] = self.entries[r * n + c];
            }
        }
        FpMatrix { p: self.p, n, entries: e }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    pub fn eval_poly(&self, f: &PolyModP) -> Self {
        let mut acc = Self::zero(self.p, self.n);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Self::scalar(self.p, self.n, c));
        }
        acc
    }

    pub fn rank(&self) -> usize {
        row_reduce(self.p, self.n, self.n, &mut self.entries.clone())
    }

    pub fn nullity(&self) -> usize {
        self.n - self.rank()
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let w = 2 * n;
        let mut aug = vec![0u64; n * w];
        for r in 0..n {
            aug[r * w..r * w + n].copy_from_slice(&self.entries[r * n..(r + 1) * n]);
            aug[r * w + n + r] = 1 % self.p;
        }
        let rank = row_reduce(self.p, n, w, &mut aug);
        if rank < n || (0..n).any(|i| aug[i * w + i] != 1) {
            return None;
        }
        let mut e = vec![0; n * n];
        for r in 0..n {
            e[r * n..(r + 1) * n].copy_from_slice(&aug[r * w + n..(r + 1) * w]);
        }
        Some(FpMatrix { p: self.p, n, entries: e })
    }

    /// Monic minimal polynomial: first linear dependency among `I, A, A², …`.
    pub fn min_poly(&self) -> PolyModP {
        let p = self.p;
        let nn = self.n * self.n;
        // rows are vec(A^k) augmented with the unit vector e_k to record the combination
        let mut powers = vec![FpMatrix::identity(p, self.n)];
        for k in 1..=self.n {
            powers.push(powers[k - 1].mul(self));
        }
        for d in 0..=self.n {
            // solve A^d = Σ_{k<d} c_k A^k
            let w = d + 1;
            let mut sys = vec![0u64; nn * w];
            for i in 0..nn {
                for k in 0..d {
                    sys[i * w + k] = powers[k].entries[i];
                }
                sys[i * w + d] = powers[d].entries[i];
            }
            if let Some(sol) = solve_augmented(p, nn, d, &mut sys) {
                let mut coeffs: Vec<u64> = sol.iter().map(|&c| arith::neg_mod(c, p)).collect();
                coeffs.push(1);
                return PolyModP::new(p, coeffs).expect("prime modulus");
            }
        }
        unreachable!("Cayley-Hamilton bounds the minimal polynomial degree")
    }

    /// For each monic irreducible factor of the minimal polynomial, the
    /// partition of exponents in the elementary divisors.
    pub fn elementary_divisors(&self) -> Vec<(PolyModP, Partition)> {
        self.min_poly()
            .factor()
            .into_iter()
            .map(|(f, mult)| {
                let d = f.degree().unwrap();
                let g = self.eval_poly(&f);
                let mut prev = 0usize;
                let mut gk = FpMatrix::identity(self.p, self.n);
                let mut conj = Vec::new();
                for _ in 0..mult {
                    gk = gk.mul(&g);
                    let k = gk.nullity();
                    conj.push((k - prev) / d);
                    prev = k;
                }
                let conj = Partition::new(conj.into_iter().filter(|&x| x > 0).collect())
                    .expect("positive parts");
                (f, conj.conjugate())
            })
            .collect()
    }

    /// Characteristic polynomial assembled from the elementary divisors.
    pub fn char_poly(&self) -> PolyModP {
        self.elementary_divisors().iter().fold(PolyModP::one(self.p), |acc, (f, lam)| {
            acc.mul(&f.pow(lam.size() as u32))
        })
    }

    /// Rational canonical form (primary decomposition): block diagonal of
    /// companion matrices of `f^λ_i`, factors in polynomial order.
    pub fn rational_canonical_form(&self) -> Self {
        let blocks: Vec<FpMatrix> = self
            .elementary_divisors()
            .iter()
            .flat_map(|(f, lam)| {
                lam.parts().iter().map(move |&k| FpMatrix::companion(&f.pow(k as u32))).collect::<Vec<_>>()
            })
            .collect();
        Self::block_diag(self.p, &blocks)
    }
}

/// Gauss-Jordan elimination in place over the leading `cols` columns;
/// returns the rank. Pivot rows are normalized to 1.
fn row_reduce(p: u64, rows: usize, width: usize, m: &mut [u64]) -> usize {
    let mut rank = 0;
    for c in 0..width {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| m[r * width + c] != 0) else {
            continue;
        };
        for k in 0..width {
            m.swap(piv * width + k, rank * width + k);
        }
        let inv = arith::inv_mod(m[rank * width + c], p).unwrap();
        for k in 0..width {
            m[rank * width + k] = m[rank * width + k] * inv % p;
        }
        for r in 0..rows {
            if r != rank && m[r * width + c] != 0 {
                let f = m[r * width + c];
                for k in 0..width {
                    m[r * width + k] = arith::sub_mod(m[r * width + k], f * m[rank * width + k] % p, p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solve `Σ_{k<d} x_k col_k = col_d` for an augmented system of width `d+1`.
fn solve_augmented(p: u64, rows: usize, d: usize, m: &mut [u64]) -> Option<Vec<u64>> {
    let w = d + 1;
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..d {
        let Some(piv) = (rank..rows).find(|&r| m[r * w + c] != 0) else {
            continue;
        };
        for k in 0..w {
            m.swap(piv * w + k, rank * w + k);
        }
        let inv = arith::inv_mod(m[rank * w + c], p).unwrap();
        for k in 0..w {
            m[rank * w + k] = m[rank * w + k] * inv % p;
        }
        for r in 0..rows {
            if r != rank && m[r * w + c] != 0 {
                let f = m[r * w + c];
                for k in 0..w {
                    m[r * w + k] = arith::sub_mod(m[r * w + k], f * m[rank * w + k] % p, p);
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if (rank..rows).any(|r| m[r * w + d] != 0) {
        return None;
    }
    let mut x = vec![0u64; d];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i * w + d];
    }
    Some(x)
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix(p={}; {self})", self.p)
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|r| {
                self.entries[r * self.n..(r + 1) * self.n]
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "[{}]", rows.join(";"))
    }
}
