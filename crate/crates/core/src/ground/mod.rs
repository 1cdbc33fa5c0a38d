//! Ground sets, subsets, permutations, inversion sequences and the
//! elementary statistics on them.

mod enumerate;
mod inversion;
mod permutation;
mod subset;

pub use enumerate::{
    derangement_sequences, inversion_sequences, par_fold_inversion_sequences,
    par_fold_permutations, permutations, InversionSequences, Permutations,
};
pub use inversion::InversionSequence;
pub use permutation::Permutation;
pub use subset::{GroundSet, Subset, MAX_LABEL};

pub(crate) use inversion::{ascents, first_zero, is_derangement};
