//! Skew polynomial rings over exact division rings, the nonassociative algebras
//! `S_{n,m,l}(ν,ρ,f)` built from them, and the rank-metric codes given by their
//! spread sets.

pub mod algebra;
pub mod central;
pub mod code;
pub mod corpus;
pub mod error;
pub mod field;
pub mod linalg;
pub mod par;
pub mod rank;
pub mod ring;
pub mod skew;
pub mod text;
pub mod tower;
pub mod upoly;

pub use error::{Error, Result};
