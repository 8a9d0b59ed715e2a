//! Exact chain-level models for cobar constructions, coHochschild complexes
//! and related transfer and Morita machinery over a field.

pub mod cobarpaths;
pub mod coefficients;
pub mod cohochschild;
pub mod comodfun;
pub mod dgcore;
pub mod error;
pub mod gradedlin;
pub mod hochschild;
pub mod morita;
pub mod simplicial;

pub use coefficients::{FieldSpec, Fp, Scalar};
pub use error::{Error, FieldError, Result};
pub use gradedlin::{BettiTable, GradedMap, GradedSpace, TruncatedComplex};
pub use num_traits::{One, Zero};

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type Q = num_rational::BigRational;
