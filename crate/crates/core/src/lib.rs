//! Completely splittable representations of affine and finite Hecke-Clifford
//! superalgebras, computed exactly.

pub mod algebra;
pub mod combinatorics;
pub mod scalars;
pub mod supermodules;
pub mod verify;

pub use scalars::{Field, Fp2, Quad};
pub use supermodules::SuperModule;

/// Modules over the multiquadratic field (characteristic 0).
pub type QuadModule = SuperModule<Quad>;
