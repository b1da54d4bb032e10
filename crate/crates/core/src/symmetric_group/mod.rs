//! The symmetric group `S_m`: permutations, characters, Young's orthogonal
//! representation, and idempotents of the group algebra.

mod character;
mod group_algebra;
mod permutation;
mod young;

pub use character::{
    centralizer_order, character_table, class_size, mn_character, CharacterTable,
};
pub use group_algebra::{
    central_idempotent, primitive_idempotent, primitive_idempotents, GroupAlgebraElement,
};
pub use permutation::{
    lex_permutations, next_permutation, nth_lex_permutation, LexPermutations, Permutation,
};
pub use young::{rep_matrix, young_orthogonal_generator, RepMatrix, YoungRepresentation};

use crate::combinatorics::Partition;

pub fn cycle_type(sigma: &Permutation) -> Partition {
    sigma.cycle_type()
}
