//! Λ-modules, their prime and f-primary splittings, submodule
//! standardization, direct sums and isomorphism.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::conjugacy::{self, Budget};
use crate::core_algebra::{
    GroupElement, GroupShape, Hom, IntPoly, PolyModP, Prime, StructuredMatrix, Subgroup,
};
use crate::error::{Error, Result};

/// A finite abelian p-group with an automorphism giving the action of `t`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LambdaModule {
    shape: GroupShape,
    action: StructuredMatrix,
}

impl LambdaModule {
    pub fn new(action: StructuredMatrix) -> Result<Self> {
        if !action.is_unit() {
            return Err(Error::NotUnit);
        }
        Ok(LambdaModule { shape: action.shape().clone(), action })
    }

    /// Build from a shape and row-major signed entries, reducing each row.
    pub fn from_entries(shape: GroupShape, entries: &[i64]) -> Result<Self> {
        Self::new(StructuredMatrix::from_signed(shape, entries)?)
    }

    pub fn zero(p: Prime) -> Self {
        let shape = GroupShape::trivial(p);
        LambdaModule { action: StructuredMatrix::identity(&shape), shape }
    }

    /// `t` acting as the identity.
    pub fn trivial_action(shape: &GroupShape) -> Self {
        LambdaModule { shape: shape.clone(), action: StructuredMatrix::identity(shape) }
    }

    pub fn shape(&self) -> &GroupShape {
        &self.shape
    }

    pub fn action(&self) -> &StructuredMatrix {
        &self.action
    }

    pub fn p(&self) -> u64 {
        self.shape.p()
    }

    pub fn prime(&self) -> Prime {
        self.shape.prime()
    }

    pub fn log_order(&self) -> u32 {
        self.shape.log_order()
    }

    /// `(1 - t)M` as a subgroup.
    pub fn image_subgroup(&self) -> Subgroup {
        Subgroup::image(&self.action.one_minus().as_hom())
    }

    /// `log_p |(1 - t)M|`.
    pub fn image_log_order(&self) -> u32 {
        self.image_subgroup().log_order()
    }

    /// `1 - t` is an automorphism.
    pub fn is_connected(&self) -> bool {
        self.action.one_minus().is_unit()
    }

    pub fn t(&self, x: &GroupElement) -> GroupElement {
        self.action.apply_unchecked(x)
    }
}

impl fmt::Debug for LambdaModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LambdaModule({}; t = {})", self.shape, self.action)
    }
}

impl fmt::Display for LambdaModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, t = {})", self.shape, self.action)
    }
}

/// A t-invariant subgroup presented as a module in its own right.
#[derive(Debug, Clone)]
pub struct SubmoduleBasis {
    pub ambient: LambdaModule,
    pub generators: Vec<GroupElement>,
    pub standardized: LambdaModule,
    /// Standardized coordinates to ambient elements.
    pub embedding: Hom,
}

impl SubmoduleBasis {
    pub fn subgroup(&self) -> Subgroup {
        Subgroup::image(&self.embedding)
    }
}

/// Standardize the span of `gens`, first closing it under `t` when
/// `close_under_t` is set; otherwise a non-invariant span is an error.
pub fn standardize_subgroup(
    ambient: &LambdaModule,
    gens: &[GroupElement],
    close_under_t: bool,
) -> Result<SubmoduleBasis> {
    for g in gens {
        ambient.shape.check_element(g)?;
    }
    let mut all = gens.to_vec();
    let sub = loop {
        let sub = Subgroup::span(&ambient.shape, &all);
        let missing: Vec<GroupElement> =
            sub.basis().iter().map(|h| ambient.t(h)).filter(|th| !sub.contains(th)).collect();
        if missing.is_empty() {
            break sub;
        }
        if !close_under_t {
            return Err(Error::NotInvariant);
        }
        all.extend(missing);
    };
    let cols: Vec<GroupElement> = sub
        .basis()
        .iter()
        .map(|h| sub.coordinates(&ambient.t(h)).expect("t-invariant span"))
        .collect();
    let induced = Hom::from_columns(sub.shape().clone(), sub.shape().clone(), &cols)?
        .into_structured()?;
    Ok(SubmoduleBasis {
        ambient: ambient.clone(),
        generators: all,
        standardized: LambdaModule::new(induced)?,
        embedding: sub.embedding(),
    })
}

/// A module presented over several primes with block-diagonal action:
/// cyclic factors of prime-power order and a matrix of `t` in which entries
/// between factors of different primes vanish.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeModule {
    pub moduli: Vec<u64>,
    pub action: Vec<i64>,
}

/// One Λ-module per prime.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GeneralModule {
    pub components: BTreeMap<u64, LambdaModule>,
}

impl GeneralModule {
    pub fn order(&self) -> Result<u128> {
        let mut total: u128 = 1;
        for m in self.components.values() {
            total = total
                .checked_mul(m.shape.order()? as u128)
                .ok_or_else(|| Error::Overflow("module order".into()))?;
        }
        Ok(total)
    }
}

fn prime_power(m: u64) -> Option<(u64, u32)> {
    if m < 2 {
        return None;
    }
    let p = (2..=m).find(|d| m.is_multiple_of(*d))?;
    let mut e = 0;
    let mut r = m;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

/// Split a block-diagonal composite presentation by prime.
pub fn prime_components(module: &CompositeModule) -> Result<GeneralModule> {
    let k = module.moduli.len();
    if module.action.len() != k * k {
        return Err(Error::InvalidMatrix(format!("expected {} entries", k * k)));
    }
    let mut by_prime: BTreeMap<u64, Vec<(usize, u32)>> = BTreeMap::new();
    let mut primes = Vec::with_capacity(k);
    for (i, &m) in module.moduli.iter().enumerate() {
        let (p, e) = prime_power(m).ok_or_else(|| {
            Error::UnsupportedPresentation(format!("factor Z_{m} is not of prime-power order"))
        })?;
        by_prime.entry(p).or_default().push((i, e));
        primes.push(p);
    }
    for r in 0..k {
        for c in 0..k {
            let v = module.action[r * k + c];
            if primes[r] != primes[c] && v.rem_euclid(module.moduli[r] as i64) != 0 {
                return Err(Error::UnsupportedPresentation(format!(
                    "entry ({r},{c}) links factors of different primes"
                )));
            }
        }
    }
    let mut out = GeneralModule::default();
    for (p, idx) in by_prime {
        let prime = Prime::new(p)?;
        let exps: Vec<u32> = idx.iter().map(|&(_, e)| e).collect();
        let (shape, pos) = GroupShape::from_cyclic_exponents(prime, &exps)?;
        let n = idx.len();
        let mut entries = vec![0i64; n * n];
        for (a, &(ra, _)) in idx.iter().enumerate() {
            for (b, &(rb, _)) in idx.iter().enumerate() {
                entries[pos[a] * n + pos[b]] = module.action[ra * k + rb];
            }
        }
        out.components.insert(p, LambdaModule::from_entries(shape, &entries)?);
    }
    Ok(out)
}

/// The f-primary components `M_f = F(t)^n M`, where `F` is the product of the
/// other primary factors of the reduced minimal polynomial, lifted with least
/// non-negative coefficients, and `|M| = p^n`.
pub fn f_primary_components(module: &LambdaModule) -> Result<Vec<(PolyModP, SubmoduleBasis)>> {
    if module.shape.is_trivial() {
        return Ok(Vec::new());
    }
    let factors = module.action.reduce_mod_p().min_poly().factor();
    if factors.len() == 1 {
        let whole = SubmoduleBasis {
            ambient: module.clone(),
            generators: (0..module.shape.rank()).map(|j| module.shape.basis_vector(j)).collect(),
            standardized: module.clone(),
            embedding: Hom::identity(&module.shape),
        };
        return Ok(vec![(factors[0].0.clone(), whole)]);
    }
    let n = module.log_order();
    let mut out = Vec::with_capacity(factors.len());
    for (i, (f, _)) in factors.iter().enumerate() {
        let mut big = IntPoly::new(vec![1]);
        for (j, (g, mult)) in factors.iter().enumerate() {
            if j != i {
                big = big.mul(&g.lift().pow(*mult));
            }
        }
        let op = module.action.eval_int_poly(&big).pow(n as u64);
        let sub = standardize_subgroup(module, &op.as_hom().columns(), true)?;
        out.push((f.clone(), sub));
    }
    Ok(out)
}

/// Block-diagonal sum; coordinates are stably re-sorted by exponent and
/// `position[i]` is where the i-th concatenated coordinate lands.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub module: LambdaModule,
    pub position: Vec<usize>,
}

pub fn direct_sum(parts: &[LambdaModule]) -> Result<DirectSum> {
    let Some(first) = parts.first() else {
        return Err(Error::InvalidShape("direct sum of no modules".into()));
    };
    let prime = first.prime();
    for part in parts {
        if part.prime() != prime {
            return Err(Error::MixedPrimes(prime.get(), part.p()));
        }
    }
    let exps: Vec<u32> = parts.iter().flat_map(|m| m.shape.exps().to_vec()).collect();
    let (shape, position) = GroupShape::from_cyclic_exponents(prime, &exps)?;
    let n = exps.len();
    let mut entries = vec![0u64; n * n];
    let mut off = 0;
    for part in parts {
        let k = part.shape.rank();
        for r in 0..k {
            for c in 0..k {
                entries[position[off + r] * n + position[off + c]] = part.action.get(r, c);
            }
        }
        off += k;
    }
    let module = LambdaModule::new(StructuredMatrix::new(shape, entries)?)?;
    Ok(DirectSum { module, position })
}

/// Isomorphism of Λ-modules: equal groups and conjugate actions, compared
/// component by component over the irreducible factors.
pub fn lambda_isomorphic(m: &LambdaModule, n: &LambdaModule, budget: Budget) -> Result<bool> {
    if m.shape != n.shape {
        return Ok(false);
    }
    if m.action == n.action {
        return Ok(true);
    }
    if m.image_log_order() != n.image_log_order() {
        return Ok(false);
    }
    let cm = f_primary_components(m)?;
    let cn = f_primary_components(n)?;
    if cm.len() != cn.len() {
        return Ok(false);
    }
    for ((f, a), (g, b)) in cm.iter().zip(&cn) {
        if f != g || a.standardized.shape != b.standardized.shape {
            return Ok(false);
        }
    }
    for ((_, a), (_, b)) in cm.iter().zip(&cn) {
        if !conjugacy::are_conjugate(&a.standardized.action, &b.standardized.action, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn module(p: u64, layers: &[(u32, usize)], e: &[i64]) -> LambdaModule {
        LambdaModule::from_entries(GroupShape::new(prime(p), layers).unwrap(), e).unwrap()
    }

    fn poly(p: u64, c: &[u64]) -> PolyModP {
        PolyModP::new(p, c.to_vec()).unwrap()
    }

    #[test]
    fn standardize_examples() {
        let m = module(2, &[(2, 1), (1, 1)], &[1, 2, 1, 1]);
        let all: Vec<_> = (0..2).map(|j| m.shape().basis_vector(j)).collect();
        let s = standardize_subgroup(&m, &all, true).unwrap();
        assert_eq!(s.standardized.shape(), m.shape());
        assert!(lambda_isomorphic(&s.standardized, &m, Budget::default()).unwrap());

        let z4 = module(2, &[(2, 1)], &[3]);
        let s = standardize_subgroup(&z4, &[GroupElement::new(vec![2])], true).unwrap();
        assert_eq!(s.standardized.shape().exps(), &[1]);
        assert!(s.standardized.action().is_identity());

        let c = module(2, &[(1, 2)], &[0, 1, 1, 1]);
        let g = [GroupElement::new(vec![1, 0])];
        assert!(matches!(standardize_subgroup(&c, &g, false), Err(Error::NotInvariant)));
        let s = standardize_subgroup(&c, &g, true).unwrap();
        assert_eq!(s.standardized.log_order(), 2);
    }

    #[test]
    fn embedding_intertwines_actions() {
        let m = module(3, &[(2, 1), (1, 1)], &[4, 3, 1, 1]);
        let gens = vec![GroupElement::new(vec![3, 1])];
        let s = standardize_subgroup(&m, &gens, true).unwrap();
        for x in s.standardized.shape().elements().unwrap() {
            let lhs = s.embedding.apply(&s.standardized.t(&x)).unwrap();
            let rhs = m.t(&s.embedding.apply(&x).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn prime_split() {
        let c = CompositeModule { moduli: vec![4, 3], action: vec![3, 0, 0, 2] };
        let g = prime_components(&c).unwrap();
        assert_eq!(g.components.keys().copied().collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(g.order().unwrap(), 12);
        let empty = prime_components(&CompositeModule { moduli: vec![], action: vec![] }).unwrap();
        assert!(empty.components.is_empty());
        let bad = CompositeModule { moduli: vec![4, 3], action: vec![3, 1, 0, 2] };
        assert!(matches!(prime_components(&bad), Err(Error::UnsupportedPresentation(_))));
        let single = prime_components(&CompositeModule { moduli: vec![9], action: vec![4] }).unwrap();
        assert_eq!(single.components.len(), 1);
    }

    #[test]
    fn primary_examples() {
        let m = module(2, &[(2, 1), (1, 1)], &[3, 0, 0, 1]);
        assert_eq!(f_primary_components(&m).unwrap().len(), 1);

        let m = module(3, &[(1, 2)], &[1, 0, 0, 2]);
        let c = f_primary_components(&m).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].0, poly(3, &[1, 1]));
        assert_eq!(c[0].1.standardized.action().entries(), &[2]);
        assert_eq!(c[1].1.standardized.action().entries(), &[1]);

        let m = module(5, &[(1, 3)], &[1, 0, 0, 0, 2, 0, 0, 0, 3]);
        let c = f_primary_components(&m).unwrap();
        assert_eq!(c.len(), 3);
        let mut seen = BTreeSet::new();
        for (f, s) in &c {
            assert_eq!(s.standardized.log_order(), 1);
            let root = (0..5).find(|&x| f.eval(x) == 0).unwrap();
            assert_eq!(s.standardized.action().entries(), &[root]);
            seen.insert(root);
        }
        assert_eq!(seen.len(), 3);
    }

    #[test]
    fn sums() {
        let a = module(3, &[(1, 1)], &[1]);
        let b = module(3, &[(1, 1)], &[2]);
        let s = direct_sum(&[a.clone(), b]).unwrap();
        assert_eq!(s.module.action().entries(), &[1, 0, 0, 2]);
        assert_eq!(direct_sum(std::slice::from_ref(&a)).unwrap().module, a);
        let c = module(2, &[(1, 1)], &[1]);
        assert!(matches!(direct_sum(&[a, c]), Err(Error::MixedPrimes(3, 2))));
        let x = module(2, &[(1, 1)], &[1]);
        let y = module(2, &[(2, 1)], &[3]);
        let s = direct_sum(&[x, y]).unwrap();
        assert_eq!(s.module.shape().exps(), &[2, 1]);
        assert_eq!(s.position, vec![1, 0]);
    }

    #[test]
    fn isomorphism_examples() {
        let a = module(2, &[(2, 1), (1, 1)], &[3, 0, 1, 1]);
        let b = module(2, &[(2, 1), (1, 1)], &[1, 0, 1, 1]);
        assert!(lambda_isomorphic(&a, &a, Budget::default()).unwrap());
        assert!(lambda_isomorphic(&a, &b, Budget::default()).unwrap());
        let c = module(3, &[(2, 1)], &[4]);
        let d = module(3, &[(2, 1)], &[7]);
        assert!(!lambda_isomorphic(&c, &d, Budget::default()).unwrap());
    }
}
