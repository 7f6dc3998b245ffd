//! Pointed sets (𝕄₀-modules), commutative monoids with zero, monoid rings and
//! the functor square relating them to abelian groups and rings.

pub mod adjunction;
#[allow(clippy::module_inception)]
pub mod monoid;
pub mod pointed;

pub use adjunction::{check_alpha_adjunction, AdjunctionCaps, AdjunctionWitness, FiniteGroup};
pub use monoid::{enumerate_monoids, monoid_ring, smash_monoid_roundtrip, CommMonoidWithZero, MonoidRing, SmashRoundtrip};
pub use pointed::{
    forget_to_pointed, free_abelian, pointed_maps, smash, smash_assoc, smash_index, smash_swap, smash_unitor, wedge, PointedMap,
    PointedSet,
};
