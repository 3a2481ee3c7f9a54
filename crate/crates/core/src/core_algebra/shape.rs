//! Finite abelian p-groups presented as products of homocyclic layers.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::arith::{self, MAX_MODULUS};
use crate::error::{Error, Result};

/// A validated prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if arith::is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Layer {
    pub exponent: u32,
    pub multiplicity: usize,
}

/// `Z_{p^{e_1}}^{n_1} × … × Z_{p^{e_k}}^{n_k}` with `e_1 > … > e_k > 0`.
///
/// Coordinates are flattened layer by layer; coordinate `j` of the flattened
/// list lives in `[0, p^{exponent(j)})`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ShapeRepr", into = "ShapeRepr")]
pub struct GroupShape {
    p: Prime,
    layers: Vec<Layer>,
    exps: Vec<u32>,
    moduli: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct ShapeRepr {
    p: u64,
    layers: Vec<(u32, usize)>,
}

impl TryFrom<ShapeRepr> for GroupShape {
    type Error = Error;
    fn try_from(r: ShapeRepr) -> Result<Self> {
        GroupShape::new(Prime::new(r.p)?, &r.layers)
    }
}

impl From<GroupShape> for ShapeRepr {
    fn from(s: GroupShape) -> Self {
        ShapeRepr {
            p: s.p.get(),
            layers: s.layers.iter().map(|l| (l.exponent, l.multiplicity)).collect(),
        }
    }
}

impl GroupShape {
    /// Build from `(exponent, multiplicity)` pairs with strictly decreasing
    /// exponents.
    pub fn new(p: Prime, layers: &[(u32, usize)]) -> Result<Self> {
        for w in layers.windows(2) {
            if w[0].0 <= w[1].0 {
                return Err(Error::InvalidShape(format!(
                    "exponents must be strictly decreasing, got {} then {}",
                    w[0].0, w[1].0
                )));
            }
        }
        for &(e, n) in layers {
            if e == 0 || n == 0 {
                return Err(Error::InvalidShape(format!(
                    "layer ({e}, {n}) must have positive exponent and multiplicity"
                )));
            }
        }
        if let Some(&(e, _)) = layers.first() {
            let m = arith::checked_pow(p.get(), e)?;
            if m >= MAX_MODULUS {
                return Err(Error::Overflow(format!(
                    "modulus {}^{e} exceeds 2^32",
                    p.get()
                )));
            }
        }
        let layers: Vec<Layer> = layers
            .iter()
            .map(|&(exponent, multiplicity)| Layer { exponent, multiplicity })
            .collect();
        let exps: Vec<u32> = layers
            .iter()
            .flat_map(|l| std::iter::repeat_n(l.exponent, l.multiplicity))
            .collect();
        let moduli = exps.iter().map(|&e| arith::pow(p.get(), e)).collect();
        Ok(GroupShape { p, layers, exps, moduli })
    }

    /// The trivial group (no cyclic factors).
    pub fn trivial(p: Prime) -> Self {
        GroupShape { p, layers: Vec::new(), exps: Vec::new(), moduli: Vec::new() }
    }

    /// `Z_{p^e}`.
    pub fn cyclic(p: Prime, e: u32) -> Result<Self> {
        Self::new(p, &[(e, 1)])
    }

    /// Group the cyclic exponents (any order) into a shape. Returns the shape
    /// and, for every input factor, its coordinate index in the shape.
    /// Ties keep their input order.
    pub fn from_cyclic_exponents(p: Prime, exps: &[u32]) -> Result<(Self, Vec<usize>)> {
        let mut order: Vec<usize> = (0..exps.len()).filter(|&i| exps[i] > 0).collect();
        order.sort_by(|&a, &b| exps[b].cmp(&exps[a]).then(a.cmp(&b)));
        let mut layers: Vec<(u32, usize)> = Vec::new();
        for &i in &order {
            match layers.last_mut() {
                Some((e, n)) if *e == exps[i] => *n += 1,
                _ => layers.push((exps[i], 1)),
            }
        }
        let shape = Self::new(p, &layers)?;
        let mut position = vec![usize::MAX; exps.len()];
        for (k, &i) in order.iter().enumerate() {
            position[i] = k;
        }
        Ok((shape, position))
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p.get()
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// Exponent of each flattened coordinate.
    #[inline]
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Number of cyclic factors.
    #[inline]
    pub fn rank(&self) -> usize {
        self.exps.len()
    }

    /// `log_p |M|`.
    pub fn log_order(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Largest exponent (the exponent of the group), 0 for the trivial group.
    pub fn max_exponent(&self) -> u32 {
        self.exps.first().copied().unwrap_or(0)
    }

    /// `p^{Σ e_i n_i}`, refusing to wrap.
    pub fn order(&self) -> Result<u64> {
        arith::checked_pow(self.p(), self.log_order())
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.is_empty()
    }

    /// `Z_p^n` for some `n ≥ 1`.
    pub fn is_elementary(&self) -> bool {
        self.layers.len() == 1 && self.layers[0].exponent == 1
    }

    /// Layer index of each flattened coordinate.
    pub fn layer_of(&self) -> Vec<usize> {
        self.layers
            .iter()
            .enumerate()
            .flat_map(|(i, l)| std::iter::repeat_n(i, l.multiplicity))
            .collect()
    }

    /// Coordinate range of layer `i`.
    pub fn layer_range(&self, i: usize) -> std::ops::Range<usize> {
        let start: usize = self.layers[..i].iter().map(|l| l.multiplicity).sum();
        start..start + self.layers[i].multiplicity
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.rank()] }
    }

    pub fn basis_vector(&self, j: usize) -> GroupElement {
        let mut coords = vec![0; self.rank()];
        coords[j] = 1;
        GroupElement { coords }
    }

    /// Validate and wrap coordinates.
    pub fn element(&self, coords: Vec<u64>) -> Result<GroupElement> {
        let x = GroupElement { coords };
        self.check_element(&x)?;
        Ok(x)
    }

    /// Reduce arbitrary integers into canonical range.
    pub fn element_reduced(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} coordinates, got {}",
                self.rank(),
                coords.len()
            )));
        }
        Ok(GroupElement {
            coords: coords
                .iter()
                .zip(&self.moduli)
                .map(|(&c, &m)| c.rem_euclid(m as i64) as u64)
                .collect(),
        })
    }

    pub fn check_element(&self, x: &GroupElement) -> Result<()> {
        if x.coords.len() != self.rank() {
            return Err(Error::ShapeMismatch(format!(
                "element has {} coordinates, shape has rank {}",
                x.coords.len(),
                self.rank()
            )));
        }
        for (j, (&c, &m)) in x.coords.iter().zip(&self.moduli).enumerate() {
            if c >= m {
                return Err(Error::InvalidElement(format!(
                    "coordinate {j} = {c} not reduced modulo {m}"
                )));
            }
        }
        Ok(())
    }

    /// Mixed-radix index of an element (last coordinate fastest).
    pub fn index_of(&self, x: &GroupElement) -> usize {
        let mut idx = 0usize;
        for (&c, &m) in x.coords.iter().zip(&self.moduli) {
            idx = idx * m as usize + c as usize;
        }
        idx
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut coords = vec![0u64; self.rank()];
        for j in (0..self.rank()).rev() {
            let m = self.moduli[j] as usize;
            coords[j] = (idx % m) as u64;
            idx /= m;
        }
        GroupElement { coords }
    }

    /// All elements in index order.
    pub fn elements(&self) -> Result<impl Iterator<Item = GroupElement> + '_> {
        let n = self.order()? as usize;
        Ok((0..n).map(move |i| self.element_at(i)))
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .zip(&self.moduli)
                .map(|((&a, &b), &m)| arith::add_mod(a, b, m))
                .collect(),
        }
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .zip(&self.moduli)
                .map(|((&a, &b), &m)| arith::sub_mod(a, b, m))
                .collect(),
        }
    }

    pub fn scale(&self, c: u64, x: &GroupElement) -> GroupElement {
        GroupElement {
            coords: x
                .coords
                .iter()
                .zip(&self.moduli)
                .map(|(&a, &m)| arith::mul_mod(c, a, m))
                .collect(),
        }
    }

    /// Order of an element, as a power of p.
    pub fn element_log_order(&self, x: &GroupElement) -> u32 {
        x.coords
            .iter()
            .zip(&self.exps)
            .map(|(&c, &e)| e - arith::valuation(c, self.p(), e))
            .max()
            .unwrap_or(0)
    }

    /// `x ∈ p^s M`.
    pub fn in_power_subgroup(&self, x: &GroupElement, s: u32) -> bool {
        x.coords
            .iter()
            .zip(&self.exps)
            .all(|(&c, &e)| arith::valuation(c, self.p(), e) >= s.min(e))
    }
}

impl fmt::Debug for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupShape({self})")
    }
}

impl fmt::Display for GroupShape {
    /// `Z_4 x Z_2^2`, or `0` for the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.layers.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .layers
            .iter()
            .map(|l| {
                let m = arith::pow(self.p(), l.exponent);
                if l.multiplicity == 1 {
                    format!("Z_{m}")
                } else {
                    format!("Z_{m}^{}", l.multiplicity)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Coordinates of an element; the shape is carried by context.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

impl GroupElement {
    pub fn new(coords: Vec<u64>) -> Self {
        GroupElement { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// A partition, weakly decreasing with positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidShape("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let largest = self.0.first().copied().unwrap_or(0);
        Partition((1..=largest).map(|k| self.0.iter().filter(|&&x| x >= k).count()).collect())
    }

    /// All partitions of `n`, largest-first lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for k in (1..=rem.min(max)).rev() {
                cur.push(k);
                rec(rem - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(GroupShape::new(p(2), &[(2, 1), (1, 1)]).unwrap().order(), Ok(8));
        assert_eq!(GroupShape::new(p(3), &[(4, 1)]).unwrap().order(), Ok(81));
        assert_eq!(GroupShape::new(p(2), &[(2, 1), (1, 2)]).unwrap().order(), Ok(16));
        assert_eq!(GroupShape::trivial(p(5)).order(), Ok(1));
    }

    #[test]
    fn order_overflow_is_reported() {
        let s = GroupShape::new(p(65521), &[(1, 5)]).unwrap();
        assert!(matches!(s.order(), Err(Error::Overflow(_))));
        assert!(matches!(GroupShape::new(p(2), &[(40, 1)]), Err(Error::Overflow(_))));
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(GroupShape::new(p(2), &[(1, 1), (2, 1)]).is_err());
        assert!(GroupShape::new(p(2), &[(2, 1), (2, 1)]).is_err());
        assert!(GroupShape::new(p(2), &[(0, 1)]).is_err());
        assert!(GroupShape::new(p(2), &[(1, 0)]).is_err());
        assert_eq!(Prime::new(4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn element_indexing_round_trips() {
        let s = GroupShape::new(p(3), &[(2, 1), (1, 2)]).unwrap();
        for (i, x) in s.elements().unwrap().enumerate() {
            assert_eq!(s.index_of(&x), i);
        }
        assert_eq!(s.elements().unwrap().count(), 81);
    }

    #[test]
    fn display() {
        let s = GroupShape::new(p(2), &[(2, 1), (1, 2)]).unwrap();
        assert_eq!(s.to_string(), "Z_4 x Z_2^2");
        assert_eq!(GroupShape::trivial(p(2)).to_string(), "0");
    }

    #[test]
    fn grouping_cyclic_exponents() {
        let (s, pos) = GroupShape::from_cyclic_exponents(p(2), &[1, 3, 1, 2]).unwrap();
        assert_eq!(s.exps(), &[3, 2, 1, 1]);
        assert_eq!(pos, vec![2, 0, 3, 1]);
    }

    #[test]
    fn partitions() {
        assert_eq!(Partition::all(4).len(), 5);
        let l = Partition::new(vec![1, 2, 2]).unwrap();
        assert_eq!(l.parts(), &[2, 2, 1]);
        assert_eq!(l.conjugate().parts(), &[3, 2]);
    }
}
