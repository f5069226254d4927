//! Finite and finitely generated abelian groups: Smith normal form,
//! invariant factors, subgroup lattices, duality and character extension.

mod duality;
mod group;
mod matrix;
mod snf;

pub use duality::{
    all_extensions, character_basis, dual_group, extend_character, separation_is_density_check, Assignment, DensityCheck,
    FiniteCharacter, PartialCharacter,
};
pub use group::{
    enumerate_intermediate_subgroups, p_component, quotient_decomposition, ranks, thm17_injection, FiniteAbelian,
    FiniteAbelianPresentation, InjectionFamily, InjectionMember, InvariantFactors, Ranks, Subgroup, SubgroupReport,
    DEFAULT_BUDGET,
};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithForm};
