//! Graded linear algebra: spaces, maps, sign calculus, ranks and homology.

pub mod complex;
pub mod map;
pub mod rank;
pub mod space;
pub mod sum;

pub use complex::{BettiTable, TruncatedComplex};
pub use map::{axpy, koszul_sign, normalize, render_vector, rotate, twist, GradedMap, SparseVec};
pub use rank::{kernel, rank, Echelon, Subspace};
pub use space::GradedSpace;
pub use sum::DirectSum;
