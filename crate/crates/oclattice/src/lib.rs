//! Congruence lattices of quotient G-sets attached to finitely presented
//! overcommutative semigroup varieties.
//!
//! The pipeline: a finite balanced presentation restricts, on each finite
//! content class of words, to an equivalence generated by one-step rewrites
//! ([`phi_lambda`]); the symmetric-group product fixing the content acts on
//! the quotient ([`quotient_gset`]); the stable equivalences of that action
//! form a finite lattice ([`congruence_lattice`]) that can be examined with
//! the identity-checking toolkit in [`lattices`].  The [`theoremcheck`]
//! module packages the decidable criterion for when all such lattices, over
//! all content classes, satisfy some nontrivial lattice identity.

pub mod deciders;
pub mod error;
pub mod gsets;
pub mod lattices;
pub mod rewrite;
pub mod theoremcheck;
pub mod words;

pub use error::{Error, Result};
pub use words::{
    enumerate_words, enumerate_words_capped, is_balanced, is_simple, parse_word, Content,
    EnumerationCaps, Letter, Partition, Word, WordClass,
};
pub use deciders::{contains_fixed, holds_in, FixedVariety};
pub use rewrite::{
    derivable, match_pattern, phi_lambda, phi_lambda_capped, phi_lambda_on, rewrite_neighbors,
    FiniteEquivalence, Identity, Match, Presentation,
};
pub use gsets::{
    congruence_lattice, congruence_lattice_capped, congruences, g_lambda, is_regular,
    principal_congruence, quotient_gset, quotient_gset_capped, symmetric_group, Congruence, GSet,
    Perm, PermGroup,
};
pub use lattices::{
    are_isomorphic, direct_product, embeds_into, is_distributive, is_modular, partition_lattice,
    satisfies_identity, subgroup_lattice_sym, FiniteLattice, LatticeExport, LatticeIdentity,
    LatticeTerm,
};
pub use theoremcheck::{
    bound_params, check_criterion, ends_avoid_heavy_letters, is_overcommutative, is_permutative,
    least_pk, lmr_split, marked_power_block_swap_holds, normalize_ends, power_block_swap_holds,
    verify_class_bound, BoundParams, ClassBoundCheck, CriterionReport, LmrSplit, Permutativity,
    PermutativityWitness, Verdict,
};
