//! The affine Hecke-Clifford superalgebra: PBW normal form, intertwiners,
//! and Jucys-Murphy elements of the finite superalgebra.

pub mod intertwiners;
pub mod pbw;

pub use intertwiners::{intertwiner, intertwiner_identities, jucys_murphy, IdentityCheck};
pub use pbw::{normal_form, permutation, reduced_word, Element, Generator, Monomial};
