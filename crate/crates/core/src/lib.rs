//! Symbolic engine for the combinatorics of Harris-Taylor cohomology:
//! Zelevinsky multisegments and ladders, the `(r, i)` cohomology diagrams,
//! the resolution / filtration ledger, torsion bookkeeping, and the
//! congruence-separation engine built on the dimension sequences `d_{k,n}`.

pub mod congruence;
pub mod diagram;
pub mod error;
pub mod ledger;
pub mod torsion;
pub mod zelevinsky;

pub use error::{Error, Result};
