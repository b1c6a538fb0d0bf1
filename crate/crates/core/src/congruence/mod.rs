//! Synthetic automorphic datasets, the dimension tables `d_{k,n}`, the
//! peeling algorithm recovering `ℬ(π_v)`, and the two-sided congruence check.

mod check;
mod dataset;
mod generate;
mod oracle;
mod peel;

pub use check::{
    formal_side, single_field_mutations, theorem_check, FormalSum, Outcome, TermDiff, Verdict,
    VERDICT_SCHEMA_VERSION,
};
pub use dataset::{members, AutomorphicDatum, Dataset, DATASET_SCHEMA_VERSION};
pub use generate::{generate_dataset, Shape};
pub use oracle::{DimensionOracle, DimensionProfileSymbol, HashOracle, UnitOracle};
pub use peel::{contributions, d_sequence, infer_all, infer_b, reduced_class, Contribution, ContributionSet, DTable};
