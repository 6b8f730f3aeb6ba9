//! Combinatorics of the Weyl group `S_{2n}`: permutations, reduced words,
//! roots, double cosets and the Siegel coset representatives.

mod cosets;
mod perm;
mod roots;

pub use cosets::{
    acts_positively, coset_min_rep, double_coset_count, double_coset_reps, double_coset_reps_within,
    levi_check_exhaustive, levi_intersection_check, parabolic_identity_exhaustive, parabolic_intersection_identity,
    shalika_coset_condition, siegel_block_census, t_meet_inverse_image, BlockCensusRow, CosetCondition,
    ExhaustiveTally, EXHAUSTIVE_BOUND,
};
pub use perm::{all_perms, Perm, MAX_SIZE};
pub use roots::{parabolic_root_set, root_cone, Root, SimpleSet};

pub fn perm_length(w: &Perm) -> usize {
    w.length()
}

pub fn reduced_word(w: &Perm) -> Vec<usize> {
    w.reduced_word()
}
