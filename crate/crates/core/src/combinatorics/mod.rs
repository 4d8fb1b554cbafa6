//! Weights, placed skew shifted diagrams, tableaux, and the bijections
//! between them.

pub mod bijection;
pub mod classify;
pub mod diagrams;
pub mod w2;
pub mod weights;

pub use bijection::{grow_tableau, map_f, map_g};
pub use classify::{classify, classify_finite, size_bound, Classified, Label, ModuleType};
pub use diagrams::{placed_diagrams, strict_partitions, PlacedDiagram, PlacedTableau};
pub use w2::{decompose, in_w2, map_f2, map_g2, ExtendedTableau};
pub use weights::{is_splittable, Characteristic, ClassMember, Violation, Weight};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CombinatoricsError {
    #[error("{0} is not 0 or an odd prime")]
    BadCharacteristic(u32),
    #[error("index {index} lies outside the index set for p = {p}")]
    IndexOutOfRange { index: u32, p: u32 },
    #[error("{0:?} is not splittable")]
    NotSplittable(Vec<u32>),
    #[error("{0} is not in the second family of odd-characteristic weights")]
    NotInSecondFamily(String),
    #[error("tableau {0} is not standard")]
    NotStandard(String),
    #[error("no completely splittable modules for n = {n}, p = {p}: n exceeds (p+1)(p+3)/8 = {bound}")]
    EmptyClassification { n: usize, p: u32, bound: usize },
    #[error("rank must be at least 1")]
    EmptyRank,
    #[error("internal inconsistency: {0}")]
    Internal(String),
}
