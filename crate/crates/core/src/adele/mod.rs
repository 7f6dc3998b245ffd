//! Monogenic number fields, truncated finite adeles and ideal class groups.

pub mod class_group;
pub mod field;
pub mod finite;
pub mod poly;
pub mod system;

pub use class_group::{class_group, class_group_report, ClassGroupConfig, ClassGroupReport};
pub use field::{factor_prime, is_prime_u64, KElement, NumberField, OkElement, PrimeFactor, PrimeSplit};
pub use finite::{divide_class, divide_class_with_witness, is_global, strong_approx_reduce, Component, FiniteAdele};
pub use system::{adele_to_system, system_to_adele, CompatibleSystem};
