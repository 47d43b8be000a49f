//! Exact invariants of generalized dimension drop interval algebras
//! `I[m0, m, m1]`: K-theory with `Z/p` coefficients, Bockstein maps,
//! morphism triples, KK-classes and lifting checks.
//!
//! Every type is generic over the integer scalar ([`Int`]); the aliases at
//! the crate root fix it to `i64`, which covers every modulus the
//! enumerations can handle in practice.

pub mod algebra;
pub mod arithmetic;
pub mod coeff;
pub mod error;
pub mod kk;
pub mod lifting;
pub mod scalar;
pub mod triples;

pub use algebra::{BasicHom, DimensionDropAlgebra, HomKind, KHomologyClass};
pub use arithmetic::BezoutPair;
pub use coeff::GpElement;
pub use error::{Error, Result};
pub use kk::{KKElement, KKGroupInfo};
pub use lifting::{FamilyElement, LiftReport};
pub use scalar::Int;
pub use triples::{EqualityMode, KTriple};

pub type Algebra = DimensionDropAlgebra<i64>;
pub type Element = GpElement<i64>;
pub type Triple = KTriple<i64>;
pub type Kk = KKElement<i64>;
pub type Report = LiftReport<i64>;
pub type KHomology = KHomologyClass<i64>;
