//! Finite-model laboratory for filter-indexed product structures.
//!
//! Given finite factors and a filter `F` on the index set, the crate builds
//! the F-topology, F-filter and F-uniformity on the product and checks their
//! properties exhaustively on small instances.

pub mod error;
pub mod filters;
pub mod foundations;
pub mod fproduct;
pub mod instance;
pub mod topology;
pub mod uniformity;
pub mod verifier;

pub use error::{Error, Result};
pub use filters::{Filter, FilterBase};
pub use foundations::{ProductIndexing, SetFamily, SubsetMask, Universe};
pub use fproduct::{Factor, IndexCondition, ProductBox, ProductSpec};
pub use topology::Topology;
pub use uniformity::{Relation, Uniformity};
pub use instance::InstanceFile;
pub use verifier::{InstanceGrid, PropositionReport, Witness};
