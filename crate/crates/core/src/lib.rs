//! Graded Betti numbers, regularity, linear quotients, polymatroidal ideals,
//! products of linear-form ideals and Hankel chain ideals.

pub mod betti;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod graded;
pub mod hankel;
pub mod ideal;
pub mod linalg;
pub mod linforms;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod polymatroid;
pub mod quotients;

pub use error::{Error, Result};
pub use field::{Characteristic, Field, FieldVisitor, PrimeField, Rationals};
pub use graded::{dimension_monomial, DegreePiece, GradedIdeal};
pub use ideal::MonomialIdeal;
pub use linforms::LinearIdeal;
pub use monomial::{Monomial, VariableSet};
pub use poly::HomPolynomial;
