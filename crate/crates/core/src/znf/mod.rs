//! Exact integer linear algebra: Smith normal form, finitely generated
//! abelian groups and bounded free chain complexes.

pub mod complex;
pub mod group;
pub mod lattice;
pub mod matrix;
pub mod snf;

pub use complex::{hyper_ext, hyper_ext_support, ChainComplex, GradedGroups};
pub use group::{cokernel_structure, ext1_fg, hom_fg, rationalize_rank, tensor_fg, FgAbelianGroup};
pub use lattice::Lattice;
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SnfDecomposition};
