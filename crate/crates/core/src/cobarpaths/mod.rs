//! The cobar construction, based path constructions, contracting homotopies
//! and the two strong deformation retracts.

mod cobar;
mod paths;
mod sdr;
mod words;

pub use cobar::{cobar, CobarAlgebra};
pub use paths::{path_left, path_right, PathConstruction, Side};
pub use sdr::{sdr_comodule_side, sdr_module_side, SdrWitness};
pub use words::{Bounds, Coef, Slot, WordEngine, WordSpace};
