//! Modules with a prescribed `(1 - t)`-image.
//!
//! Write `α = 1 - t` on `N`. Starting from `M_0 = N`, each step enlarges
//! `M_i` by an index-p overgroup and extends `α_i: M_i -> N` so that its image
//! grows by a factor `p`. Once `α_k` is onto, `t = 1 - α_k` on `M = M_k` has
//! `(1 - t)M = N`.

use serde::Serialize;

use crate::core_algebra::{GroupElement, GroupShape, Hom, StructuredMatrix, Subgroup};
use crate::decomposition::{direct_sum, LambdaModule};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    /// `b = α(a)/p` lay outside the image and was adjoined directly.
    Direct,
    /// `b` was already in the image; the pair was replaced first.
    Exchanged,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtensionStep {
    pub kind: StepKind,
    pub shape: GroupShape,
    pub image_log_order: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtensionResult {
    pub extended: LambdaModule,
    /// Intertwining embedding of the input into `extended`, onto `(1 - t)M`.
    pub inclusion: Hom,
    pub steps: Vec<ExtensionStep>,
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Verification(msg.into())
}

fn in_p_multiple(shape: &GroupShape, x: &GroupElement) -> bool {
    shape.in_power_subgroup(x, 1)
}

/// Coordinatewise `y / p` for `y ∈ pN`.
fn divide_by_p(p: u64, y: &GroupElement) -> GroupElement {
    GroupElement::new(y.coords.iter().map(|&c| c / p).collect())
}

/// Solve `α(x) = y` for `x` in the domain of `α`.
fn preimage(alpha: &Hom, image: &Subgroup, y: &GroupElement) -> Option<GroupElement> {
    let coef = image.solve(y)?;
    Some(GroupElement::new(
        coef.iter().zip(alpha.domain().moduli()).map(|(&c, &m)| c % m).collect(),
    ))
}

/// First `a ∉ pM` (digits `0..p`, first coordinate most significant) with
/// `α(a) ∈ pN`.
fn find_kernel_direction(shape: &GroupShape, alpha: &Hom) -> Option<GroupElement> {
    let p = shape.p();
    let r = shape.rank();
    let total = (p as u128).checked_pow(r as u32)?;
    let target = alpha.codomain();
    (1..total).find_map(|mut idx| {
        let mut coords = vec![0u64; r];
        for c in coords.iter_mut().rev() {
            *c = (idx % p as u128) as u64;
            idx /= p as u128;
        }
        let a = GroupElement::new(coords);
        in_p_multiple(target, &alpha.apply_unchecked(&a)).then_some(a)
    })
}

struct State {
    shape: GroupShape,
    /// `M_i -> N`.
    alpha: Hom,
    /// `N -> M_i`.
    iota: Hom,
}

impl State {
    /// Adjoin `u` with `p u = a` and `α(u) = b`.
    fn adjoin(&mut self, a: &GroupElement, b: &GroupElement) -> Result<()> {
        let p = self.shape.p();
        let r = self.shape.rank();
        let s = a.coords.iter().position(|&c| c % p != 0).ok_or_else(|| fail("a lies in pM"))?;

        // Change basis so that a = (p w, 1, 0) with the 1 in coordinate s.
        let mut phi = vec![0u64; r * r];
        for j in 0..r {
            phi[j * r + j] = 1;
        }
        for j in s..r {
            phi[j * r + s] = a.coords[j];
        }
        let phi = StructuredMatrix::new(self.shape.clone(), phi)?;
        let phi_inv = phi.inverse()?;
        let alpha = self.alpha.compose(&phi.as_hom())?;
        let iota = phi_inv.as_hom().compose(&self.iota)?;

        let mut exps = self.shape.exps().to_vec();
        exps[s] += 1;
        let (next, pos) = GroupShape::from_cyclic_exponents(self.shape.prime(), &exps)?;

        let step_cols: Vec<GroupElement> = (0..r)
            .map(|j| next.scale(if j == s { p } else { 1 }, &next.basis_vector(pos[j])))
            .collect();
        let step = Hom::from_columns(self.shape.clone(), next.clone(), &step_cols)?;

        let target = alpha.codomain().clone();
        let w: Vec<u64> = (0..r).map(|j| if j < s { a.coords[j] / p } else { 0 }).collect();
        let aw = alpha.apply_unchecked(&GroupElement::new(w));
        let mut cols = vec![target.zero(); r];
        for j in 0..r {
            cols[pos[j]] = if j == s { target.sub(b, &aw) } else { alpha.column(j) };
        }
        let next_alpha = Hom::from_columns(next.clone(), target, &cols)?;
        if next_alpha.compose(&step)? != alpha {
            return Err(fail("extended map does not restrict to the previous one"));
        }
        self.iota = step.compose(&iota)?;
        self.alpha = next_alpha;
        self.shape = next;
        Ok(())
    }
}

/// A module `M` containing `N` with `(1 - t)M = N` as Λ-modules and
/// `|M/N| = |N/(1 - t)N|`.
pub fn extend(n: &LambdaModule) -> Result<ExtensionResult> {
    let ns = n.shape().clone();
    let p = n.p();
    let k = ns.log_order() - n.image_log_order();
    let mut st = State { shape: ns.clone(), alpha: n.action().one_minus().as_hom(), iota: Hom::identity(&ns) };
    let mut steps = Vec::with_capacity(k as usize);
    for _ in 0..k {
        let image = Subgroup::image(&st.alpha);
        let before = image.log_order();
        let rank = st.shape.rank();
        let a = find_kernel_direction(&st.shape, &st.alpha)
            .ok_or_else(|| fail("reduction of α mod p is injective before α is onto"))?;
        let b = divide_by_p(p, &st.alpha.apply_unchecked(&a));
        let (a, b, kind) = match preimage(&st.alpha, &image, &b) {
            None => (a, b, StepKind::Direct),
            Some(c) => {
                let a1 = st.shape.sub(&a, &st.shape.scale(p, &c));
                let b2 = ns
                    .elements()?
                    .find(|x| !image.contains(x) && image.contains(&ns.scale(p, x)))
                    .ok_or_else(|| fail("image is all of N"))?;
                let d = preimage(&st.alpha, &image, &ns.scale(p, &b2)).ok_or_else(|| fail("p b' outside the image"))?;
                let a2 = if in_p_multiple(&st.shape, &d) { st.shape.add(&d, &a1) } else { d };
                (a2, b2, StepKind::Exchanged)
            }
        };
        let old_log = st.shape.log_order();
        st.adjoin(&a, &b)?;
        let after = Subgroup::image(&st.alpha).log_order();
        if after != before + 1 || st.shape.log_order() != old_log + 1 || st.shape.rank() != rank {
            return Err(fail(format!(
                "step broke the index-p contract: image {before} -> {after}, order {old_log} -> {}",
                st.shape.log_order()
            )));
        }
        steps.push(ExtensionStep { kind, shape: st.shape.clone(), image_log_order: after });
    }

    let ia = st.iota.compose(&st.alpha)?.into_structured()?;
    let t = ia.one_minus();
    let extended = LambdaModule::new(t).map_err(|_| fail("1 - ι∘α is not invertible"))?;
    check_extension(n, &extended, &st.iota)?;
    Ok(ExtensionResult { extended, inclusion: st.iota, steps })
}

/// `ι` is injective and intertwining, and `(1 - t)M = ι(N)`.
fn check_extension(n: &LambdaModule, m: &LambdaModule, iota: &Hom) -> Result<()> {
    if !iota.is_injective() {
        return Err(fail("inclusion is not injective"));
    }
    let lhs = m.action().as_hom().compose(iota)?;
    let rhs = iota.compose(&n.action().as_hom())?;
    if lhs != rhs {
        return Err(fail("inclusion does not commute with t"));
    }
    let image = m.image_subgroup();
    let embedded = Subgroup::image(iota);
    if image.log_order() != embedded.log_order() || !embedded.is_subgroup_of(&image) {
        return Err(fail("(1 - t)M differs from the embedded copy of N"));
    }
    Ok(())
}

/// `log_p` of the smallest order reachable from `N`: `2i - j` for
/// `|N| = p^i`, `|(1 - t)N| = p^j`.
pub fn minimal_extension_exponent(n: &LambdaModule) -> u32 {
    2 * n.log_order() - n.image_log_order()
}

/// Extend `N` to a module of order `p^target` with `(1 - t)M ≅ N`, padding
/// with one cyclic summand on which `t` is the identity.
pub fn extend_to_order(n: &LambdaModule, target: u32) -> Result<ExtensionResult> {
    let required = minimal_extension_exponent(n);
    if required > target {
        return Err(Error::ExtensionBound { required, target });
    }
    let ext = extend(n)?;
    let pad = target - required;
    if pad == 0 {
        return Ok(ext);
    }
    let filler = LambdaModule::trivial_action(&GroupShape::cyclic(n.prime(), pad)?);
    let sum = direct_sum(&[ext.extended.clone(), filler])?;
    let shape = sum.module.shape().clone();
    let old = ext.inclusion;
    let cols = old.domain().rank();
    let mut entries = vec![0u64; shape.rank() * cols];
    for r in 0..old.codomain().rank() {
        for c in 0..cols {
            entries[sum.position[r] * cols + c] = old.get(r, c);
        }
    }
    let inclusion = Hom::new(old.domain().clone(), shape, entries)?;
    check_extension(n, &sum.module, &inclusion)?;
    Ok(ExtensionResult { extended: sum.module, inclusion, steps: ext.steps })
}
