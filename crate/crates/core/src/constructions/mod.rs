//! Constructions of perfect colorings and uniform collections.

mod bc;
mod collection;
mod hamming_code;
mod recursion;
mod rm;

pub use bc::{construct_bc_a, construct_boolean_bu, BcConstruction, BooleanConstruction};
pub use collection::{
    reduce_by_periods, translations_collection, EssentialStatus, Provenance, UniformCollection,
};
pub use hamming_code::{hamming_cosets, hamming_union_coloring, union_collection, HammingCosetPartition};
pub use recursion::{
    closed_form_length, closed_form_quotient, iterate_construction, recursive_step, Level,
    RecursionResult, RecursionSpec,
};
pub use rm::{rm_coloring, rm_quotient};
