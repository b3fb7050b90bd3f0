//! Finite quandles given by Cayley tables.

pub mod analysis;
pub mod construct;
pub mod corpus;
pub mod perm;
pub mod search;
pub mod table;

pub use analysis::{
    check_i_quandle, dis, dis_generator_check, lmlt, medial_iff_dis_abelian, orbit_group, orbits,
    right_translation_embedding,
};
pub use construct::{affine_quandle, free_2reductive_symmetric, Automorphism, DEFAULT_SIZE_LIMIT};
pub use perm::{PermGroup, Permutation, DEFAULT_CLOSURE_CAP};
pub use table::{AxiomReport, FiniteBinaryTable};
