//! Exact combinatorics of weighted zero-sum subsequences over finite abelian
//! groups: subset counts `N_{A,g}(S)`, weighted Davenport constants `D_A(G)`,
//! constructive zero-sum families, and structural classification of extremal
//! sequences, all at desk scale with arbitrary-precision counts.

pub(crate) mod bits;

pub mod counting;
pub mod davenport;
pub mod enumerate;
pub mod error;
pub mod extremal;
pub mod group;
pub mod sequence;
pub mod subset;
pub mod sums;
pub mod weights;

pub use counting::{Classification, CountCaps, CountResult, Engine};
pub use davenport::{DavenportResult, Provenance, Representation, WeightedZeroSumWitness};
pub use error::Error;
pub use extremal::{
    DecomposeOutcome, ExtremalDecomposition, ScanMode, ScanReport, StructureReport,
};
pub use group::{GroupElement, GroupSpec, ScaledGroup, DEFAULT_ORDER_CAP};
pub use sequence::{Sequence, SubseqIndex};
pub use subset::GroupSubset;
pub use weights::WeightSet;

pub type Result<T> = std::result::Result<T, Error>;
