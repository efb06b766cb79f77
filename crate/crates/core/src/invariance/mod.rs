//! Automorphisms relating BFV structures built from different choices.

mod automorphism;
mod connections;
mod flow;
mod gauge;
mod linear;
mod tautological;

pub use automorphism::{Automorphism, Domain, AUTOMORPHISM_SAMPLES};
pub use connections::{compare_connections, moved_body_coordinate, moved_coordinate, ConnectionComparison};
pub use flow::integrate_flow;
pub use gauge::{bracket_defect, exp_ad, gauge_charges, hamiltonian_automorphism};
pub use linear::{generator_bracket_defect, lift_matrix, linear_automorphism, LinearAutomorphism};
pub use tautological::{gauge_tautological, TautologicalGauge};
