//! Permutation tableaux of types A, B and D, the involution that exchanges
//! `2 row + diag` with `2n + 1 - (2 row + diag)` while keeping the number
//! of superfluous 1s, and exhaustive checks of the generating polynomial
//! symmetries it implies.

pub mod cli;
pub mod diagram;
pub mod error;
pub mod involution;
pub mod polynomials;
pub mod pr_verify;
pub mod signed_perm;
pub mod tableau;

pub use diagram::{BoxAddr, Entry, LabelSets, PartialFilling, Region};
pub use error::{Error, Result};
pub use involution::{transform, transform_a, transform_d, Rule, Trace, TraceStep};
pub use signed_perm::SignedPermutation;
pub use tableau::{Family, PermutationTableau};
