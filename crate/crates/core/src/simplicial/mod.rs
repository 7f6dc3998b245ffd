//! Truncated simplicial sets, pointed in either of two ways, and the
//! passage to chain complexes.

pub mod abelian;
pub mod builder;
pub mod chains;
pub mod corpus;
pub mod set;

pub use abelian::{
    dold_kan_gamma, em_homotopy_groups, levelwise_free, moore_complex, normalized_complex, SimplicialAbelianGroup,
};
pub use builder::{surjections, SimplicialBuilder};
pub use chains::{normalized_chains, reduced_chains};
pub use set::{basepoint_lift, PointedSimplicialSet, SimplicialData, SimplicialPointedSet, ValidationReport, Violation};
