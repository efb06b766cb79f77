//! Homotopy transfer along explicit Koszul contractions, by sums over
//! decorated rooted trees.

mod contraction;
mod family;
mod homotopy;
mod tree;

pub use contraction::{
    certify, contraction_defects, Contraction, ContractionDefects, KoszulDelta, KoszulG, LiftedKoszulG,
};
pub use family::IntervalTransfer;
pub use homotopy::{HomotopyTransfer, QuasiIso, TransferredStructure, CERTIFICATION_SAMPLES};
pub use tree::{DecoratedTree, Root, TreeAlgebra};
