//! Prime fields, their finite extensions, automorphisms and subfields.

pub mod auto;
pub mod ext;
pub mod irreducible;
pub mod prime;
pub mod subfield;

pub use auto::FieldAuto;
pub use ext::{ExtField, FE};
pub use prime::{Fp, PrimeField, Rationals};
pub use subfield::{RelBasis, Subfield};
