//! Exact K-theoretic toolkit for Grothendieck rings of C*-algebras.
//!
//! Algebras are represented purely by their K-theoretic data: finitely
//! generated abelian groups in canonical form, countably generated group
//! descriptors, and (in the real case) united K-theory triples. On top of
//! that data the crate provides the character maps (Euler, UHF, p-primary,
//! Folner-rank, and their real analogues), a Kunneth tensor engine,
//! exact-sequence verification for six-term cyclic sequences, UHF
//! classification by supernatural numbers, and Grothendieck-ring element
//! arithmetic modulo registered extension relations.
//!
//! All arithmetic is exact; every value is an integer or a rational unless
//! explicitly labeled an estimate with its error bound.

pub mod abgroup;
pub mod catalog;
pub mod crt;
pub mod error;
pub mod folner;
pub mod groring;
pub mod homalg;
pub mod kchar;
pub mod matrix;
pub mod sample;
pub mod uhf;

pub use abgroup::FgAbGroup;
pub use error::Error;
pub use folner::ExtGroup;
pub use kchar::{AlgebraDescriptor, KData};
pub use matrix::IntMatrix;

// re-exported so downstream crates stay on the same arithmetic types
pub use num_bigint;
pub use num_rational;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
