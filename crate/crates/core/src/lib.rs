//! Desk-scale computational homological algebra.
//!
//! * [`znf`]: integer matrices, Smith normal form, finitely generated abelian
//!   groups, chain complexes, homology and hyper-Ext.
//! * [`monoid`]: pointed sets, commutative monoids with zero, monoid rings and
//!   the free/forgetful adjunction between pointed sets and abelian groups.
//! * [`simplicial`]: truncated simplicial pointed sets, basepoint lifting,
//!   levelwise abelianization and the Dold–Kan correspondence.
//! * [`derived`]: dualizing-complex homology expressed through formal
//!   `Ext¹(ℚ, −)` values.
//! * [`adele`]: monogenic number fields, truncated finite adeles, strong
//!   approximation and brute-force ideal class groups.

pub mod adele;
pub mod cli;
pub mod derived;
pub mod error;
pub mod monoid;
pub mod simplicial;
pub mod verify;
pub mod wire;
pub mod znf;

pub use error::{Error, Result};
