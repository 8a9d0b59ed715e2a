//! The coHochschild complex, its twisted extension, and the cosimplicial
//! presentations with their conormalized totalization.

mod complex;
mod cosimplicial;

pub use complex::{cohochschild_complex, cohochschild_with, CoHochschildComplex};
pub use cosimplicial::{
    conormalized_tot, cosimplicial_cobar, cosimplicial_cohochschild, tot_bounds, CosimplicialChain,
};
