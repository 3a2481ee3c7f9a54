//! Finite modules over `Z[t, t⁻¹]` of prime-power order and the Alexander
//! quandles built from them.

pub mod canonical_tables;
pub mod conjugacy;
pub mod core_algebra;
pub mod decomposition;
pub mod error;
pub mod quandle;

pub use core_algebra::{
    FpMatrix, GroupElement, GroupShape, Hom, IntPoly, Partition, PolyModP, Prime, StructuredMatrix,
    Subgroup,
};
pub use decomposition::LambdaModule;
pub use error::{Error, Result};
