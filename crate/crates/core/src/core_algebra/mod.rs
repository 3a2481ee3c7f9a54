//! Exact arithmetic for finite abelian p-groups, their endomorphism rings and
//! polynomials over Z_p.

pub mod arith;
pub mod fp_matrix;
pub mod matrix;
pub mod poly;
pub mod shape;
pub mod subgroup;

pub use fp_matrix::FpMatrix;
pub use matrix::{Hom, StructuredMatrix};
pub use poly::{irreducible_polys, IntPoly, PolyModP};
pub use shape::{GroupElement, GroupShape, Layer, Partition, Prime};
pub use subgroup::Subgroup;

use crate::error::Result;

/// `|M|`, refusing to wrap.
pub fn shape_order(shape: &GroupShape) -> Result<u64> {
    shape.order()
}

pub fn mat_apply(a: &StructuredMatrix, x: &GroupElement) -> Result<GroupElement> {
    a.apply(x)
}

pub fn mat_mul(a: &StructuredMatrix, b: &StructuredMatrix) -> Result<StructuredMatrix> {
    a.mul(b)
}

pub fn is_unit(a: &StructuredMatrix) -> bool {
    a.is_unit()
}

pub fn reduce_mod_p(a: &StructuredMatrix) -> FpMatrix {
    a.reduce_mod_p()
}

pub fn min_poly_mod_p(abar: &FpMatrix) -> PolyModP {
    abar.min_poly()
}

pub fn elementary_divisors_mod_p(abar: &FpMatrix) -> Vec<(PolyModP, Partition)> {
    abar.elementary_divisors()
}

pub fn eval_poly_at_matrix(g: &IntPoly, a: &StructuredMatrix) -> StructuredMatrix {
    a.eval_int_poly(g)
}

/// `log_p |𝔐(M)|`: each entry `(r, c)` ranges over `p^{min(e_r, e_c)}` values.
pub fn log_endomorphism_count(shape: &GroupShape) -> u32 {
    let e = shape.exps();
    e.iter().flat_map(|&a| e.iter().map(move |&b| a.min(b))).sum()
}

/// `|GL(M)|`.
pub fn unit_count(shape: &GroupShape) -> u128 {
    let p = shape.p() as u128;
    let mut total = p.pow(log_endomorphism_count(shape));
    for layer in shape.layers() {
        let n = layer.multiplicity as u32;
        // |GL(n,p)| / p^{n²} = Π (1 - p^{-k})
        let gl: u128 = (0..n).map(|k| p.pow(n) - p.pow(k)).product();
        total = total / p.pow(n * n) * gl;
    }
    total
}

/// `|GL(n, q)|`.
pub fn gl_order(n: u32, q: u128) -> u128 {
    (0..n).map(|k| q.pow(n) - q.pow(k)).product()
}
