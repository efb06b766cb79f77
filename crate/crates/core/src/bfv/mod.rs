//! The BFV pipeline for the zero section `S = {y = 0}` of a trivial bundle.

mod charge;
mod cohomology;
mod instance;
mod structure;

pub use charge::{bfv_differential, build_charge, build_charge_with, Charge, ChargeOutcome, Obstruction};
pub use cohomology::{cohomology_dims, truncated_basis, CohomologyRow};
pub use instance::{Instance, InstanceFile, PoissonEntry};
pub use structure::{bfv_bracket, build_poisson, check_coisotropic, lift_phi, BfvStructure, Coisotropy};
