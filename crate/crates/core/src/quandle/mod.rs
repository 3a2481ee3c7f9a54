//! Alexander quandles `x * y = t x + (1 - t) y` on Λ-modules, their
//! isomorphism, and the classification of those of order `p^n`.

mod extend;
mod iso;

use serde::Serialize;

pub use extend::{extend, extend_to_order, minimal_extension_exponent, ExtensionResult, ExtensionStep, StepKind};
pub use iso::{quandle_isomorphic_bruteforce, quandle_isomorphism, BRUTE_FORCE_LIMIT};

use crate::canonical_tables::{enumerate_modules, Params, MAX_EXPONENT};
use crate::conjugacy::Budget;
use crate::core_algebra::GroupElement;
use crate::decomposition::{lambda_isomorphic, standardize_subgroup, LambdaModule};
use crate::error::{Error, Result};
use crate::Prime;

/// Largest quandle whose operation table is materialized.
pub const TABLE_LIMIT: usize = 1 << 12;

/// Largest table on which the builder checks right distributivity.
pub const DISTRIBUTIVITY_CHECK_LIMIT: usize = 125;

/// A finite binary operation, `op(x, y) = x * y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuandleTable {
    size: usize,
    op: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    origin: Option<LambdaModule>,
}

impl QuandleTable {
    /// A table given row by row; entries are checked to be in range but the
    /// quandle axioms are not assumed.
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let size = rows.len();
        let mut op = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size || row.iter().any(|&v| v as usize >= size) {
                return Err(Error::InvalidMatrix("table must be square with entries below its size".into()));
            }
            op.extend_from_slice(row);
        }
        Ok(QuandleTable { size, op, origin: None })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.op[x * self.size + y] as usize
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.op.chunks(self.size.max(1)).take(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn origin(&self) -> Option<&LambdaModule> {
        self.origin.as_ref()
    }

    /// `x * x = x`.
    pub fn is_idempotent(&self) -> bool {
        (0..self.size).all(|x| self.op(x, x) == x)
    }

    /// Each right translation `x ↦ x * y` is a bijection.
    pub fn has_bijective_translations(&self) -> bool {
        let mut seen = vec![usize::MAX; self.size];
        for y in 0..self.size {
            for x in 0..self.size {
                let z = self.op(x, y);
                if seen[z] == y {
                    return false;
                }
                seen[z] = y;
            }
        }
        true
    }

    /// `(x * y) * z = (x * z) * (y * z)`.
    pub fn is_right_distributive(&self) -> bool {
        let n = self.size;
        (0..n).all(|z| {
            (0..n).all(|x| {
                let xz = self.op(x, z);
                (0..n).all(|y| self.op(self.op(x, y), z) == self.op(xz, self.op(y, z)))
            })
        })
    }

    pub fn is_quandle(&self) -> bool {
        self.is_idempotent() && self.has_bijective_translations() && self.is_right_distributive()
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.size).all(|x| (0..self.size).all(|y| self.op(x, y) == x))
    }

    /// The inner automorphism group acts transitively.
    pub fn is_connected(&self) -> bool {
        if self.size == 0 {
            return true;
        }
        let mut seen = vec![false; self.size];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for y in 0..self.size {
                let z = self.op(x, y);
                if !seen[z] {
                    seen[z] = true;
                    count += 1;
                    stack.push(z);
                }
            }
        }
        count == self.size
    }
}

/// The operation table of the Alexander quandle on `module`, elements indexed
/// as by `GroupShape::element_at`.
pub fn alexander_quandle(module: &LambdaModule) -> Result<QuandleTable> {
    let shape = module.shape();
    let size = usize::try_from(shape.order()?).unwrap_or(usize::MAX);
    if size > TABLE_LIMIT {
        return Err(Error::QuandleTooLarge { size, limit: TABLE_LIMIT });
    }
    let one_minus = module.action().one_minus();
    let elems: Vec<GroupElement> = shape.elements()?.collect();
    let tx: Vec<GroupElement> = elems.iter().map(|x| module.t(x)).collect();
    let sy: Vec<GroupElement> = elems.iter().map(|y| one_minus.apply_unchecked(y)).collect();
    let mut op = Vec::with_capacity(size * size);
    for a in &tx {
        for b in &sy {
            op.push(shape.index_of(&shape.add(a, b)) as u32);
        }
    }
    let table = QuandleTable { size, op, origin: Some(module.clone()) };
    assert!(table.is_idempotent(), "x * x = x fails on {module}");
    assert!(table.has_bijective_translations(), "right translations of {module} are not bijective");
    if size <= DISTRIBUTIVITY_CHECK_LIMIT {
        assert!(table.is_right_distributive(), "right distributivity fails on {module}");
    }
    Ok(table)
}

/// `1 - t` is an automorphism.
pub fn is_connected(module: &LambdaModule) -> bool {
    module.is_connected()
}

/// `(1 - t)M` with the induced action.
pub fn image_module(module: &LambdaModule) -> LambdaModule {
    let image = module.image_subgroup();
    standardize_subgroup(module, image.basis(), false)
        .expect("(1 - t)M is invariant under t")
        .standardized
}

/// Alexander quandles are isomorphic iff the modules have the same order and
/// isomorphic `(1 - t)`-images.
pub fn quandles_isomorphic(m: &LambdaModule, n: &LambdaModule, budget: Budget) -> Result<bool> {
    if m.log_order() == 0 && n.log_order() == 0 {
        return Ok(true);
    }
    if m.p() != n.p() || m.log_order() != n.log_order() {
        return Ok(false);
    }
    lambda_isomorphic(&image_module(m), &image_module(n), budget)
}

fn check_exponent(n: u32) -> Result<()> {
    if n > MAX_EXPONENT {
        Err(Error::UnsupportedExponent(n))
    } else {
        Ok(())
    }
}

/// Number of Alexander quandles of order `p^n` up to isomorphism.
pub fn count_quandles(p: Prime, n: u32) -> Result<u128> {
    check_exponent(n)?;
    let p = p.get() as i128;
    let v = match n {
        0 => 1,
        1 => p - 1,
        2 => 2 * p * p - 2 * p - 1,
        3 => 3 * p.pow(3) - 4 * p * p + p - 3,
        _ => 5 * p.pow(4) - 6 * p.pow(3) + p * p - 6 * p - 1,
    };
    Ok(v as u128)
}

/// Number of connected Alexander quandles of order `p^n`.
pub fn count_connected(p: Prime, n: u32) -> Result<u128> {
    check_exponent(n)?;
    let p = p.get() as i128;
    let v = match n {
        0 => 1,
        1 => p - 2,
        2 => 2 * p * p - 3 * p - 1,
        3 => 3 * p.pow(3) - 6 * p * p + p,
        _ => 5 * p.pow(4) - 9 * p.pow(3) + p * p - 2 * p + 1,
    };
    Ok(v as u128)
}

/// One Alexander quandle of a classification, identified by its
/// `(1 - t)`-image. The operation table is built on request.
#[derive(Debug, Clone, Serialize)]
pub struct EnumeratedQuandle {
    pub order: u64,
    pub module: LambdaModule,
    /// The canonical module `N` with `(1 - t)M ≅ N`.
    pub image: LambdaModule,
    pub image_family: String,
    pub image_parameters: Params,
    pub connected: bool,
}

impl EnumeratedQuandle {
    pub fn table(&self) -> Result<QuandleTable> {
        alexander_quandle(&self.module)
    }
}

/// A complete list of pairwise non-isomorphic Alexander quandles of order
/// `p^n`: one for each canonical `N` of order `p^i` with
/// `|(1 - t)N| = p^j` and `2i - j ≤ n`.
pub fn enumerate_quandles(p: Prime, n: u32) -> Result<Vec<EnumeratedQuandle>> {
    check_exponent(n)?;
    let mut out = Vec::new();
    for i in 0..=n {
        for row in enumerate_modules(p, i)?.rows {
            if minimal_extension_exponent(&row.module) > n {
                continue;
            }
            let ext = extend_to_order(&row.module, n)?;
            out.push(EnumeratedQuandle {
                order: crate::core_algebra::arith::pow(p.get(), n),
                connected: ext.extended.is_connected(),
                module: ext.extended,
                image: row.module,
                image_family: row.family,
                image_parameters: row.parameters,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core_algebra::GroupShape;

    fn module(p: u64, layers: &[(u32, usize)], e: &[i64]) -> LambdaModule {
        LambdaModule::from_entries(GroupShape::new(Prime::new(p).unwrap(), layers).unwrap(), e).unwrap()
    }

    #[test]
    fn table_examples() {
        let triv = alexander_quandle(&module(2, &[(2, 1)], &[1])).unwrap();
        assert!(triv.is_trivial());
        let d3 = alexander_quandle(&module(3, &[(1, 1)], &[2])).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(d3.op(x, y), (2 * x + 3 - y) % 3);
            }
        }
        assert!(d3.is_connected());
        let tet = module(2, &[(1, 2)], &[0, 1, 1, 1]);
        let q = alexander_quandle(&tet).unwrap();
        assert!(q.is_quandle() && q.is_connected() && is_connected(&tet));
    }

    #[test]
    fn connectivity_examples() {
        assert!(!is_connected(&module(2, &[(1, 2)], &[1, 0, 0, 1])));
        assert!(is_connected(&module(3, &[(1, 1)], &[2])));
        assert!(!is_connected(&module(2, &[(2, 1)], &[3])));
    }

    #[test]
    fn image_examples() {
        assert_eq!(image_module(&module(2, &[(2, 1)], &[1])).log_order(), 0);
        let im = image_module(&module(2, &[(2, 1)], &[3]));
        assert_eq!(im.shape().exps(), &[1]);
        assert!(im.action().is_identity());
        let tet = module(2, &[(1, 2)], &[0, 1, 1, 1]);
        assert!(lambda_isomorphic(&image_module(&tet), &tet, Budget::default()).unwrap());
    }

    #[test]
    fn isomorphism_examples() {
        let b = Budget::default();
        let m = module(2, &[(2, 1), (1, 1)], &[3, 0, 1, 1]);
        assert!(quandles_isomorphic(&m, &m, b).unwrap());
        let t4 = module(2, &[(2, 1)], &[1]);
        let t22 = module(2, &[(1, 2)], &[1, 0, 0, 1]);
        assert!(quandles_isomorphic(&t4, &t22, b).unwrap());
        let z4 = module(2, &[(2, 1)], &[3]);
        let j = module(2, &[(1, 2)], &[1, 1, 0, 1]);
        assert!(quandles_isomorphic(&z4, &j, b).unwrap());
        assert!(!quandles_isomorphic(&t4, &z4, b).unwrap());
    }

    #[test]
    fn counts() {
        let p2 = Prime::new(2).unwrap();
        assert_eq!(count_quandles(p2, 3).unwrap(), 7);
        assert_eq!(count_connected(p2, 2).unwrap(), 1);
        assert_eq!(count_connected(p2, 4).unwrap(), 9);
        for p in [2, 3, 5, 7] {
            let pr = Prime::new(p).unwrap();
            assert_eq!(count_quandles(pr, 1).unwrap() as u64, p - 1);
            assert_eq!(count_connected(pr, 1).unwrap() as u64, p - 2);
        }
        assert!(count_quandles(p2, 5).is_err());
    }

    #[test]
    fn small_enumerations() {
        let p2 = Prime::new(2).unwrap();
        assert_eq!(enumerate_quandles(p2, 1).unwrap().len(), 1);
        assert_eq!(enumerate_quandles(p2, 2).unwrap().len(), 3);
        assert_eq!(enumerate_quandles(Prime::new(3).unwrap(), 2).unwrap().len(), 11);
    }
}
