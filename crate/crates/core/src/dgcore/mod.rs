//! Differential graded coalgebras, algebras, comodules and modules.

mod algebra;
mod builtin;
mod coalgebra;
mod comodule;
mod dgc;
mod report;

pub use algebra::{dual_coalgebra_to_algebra, DgAlgebra, ProductRule};
pub use builtin::{builtin, cp2, point, sphere, trivial};
pub(crate) use coalgebra::zero_check;
pub use coalgebra::{CoalgebraMap, DgCoalgebra};
pub use comodule::{Bicomodule, LeftComodule, LeftModule, MixedModule, RightComodule, RightModule};
pub(crate) use report::attempt;
pub use dgc::{write_dgc, DgcDocument};
pub use report::{Check, Report};
