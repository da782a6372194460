//! `polyaxis` enumerates, classifies, counts and renders *n-polygons*: Hamiltonian
//! cycles through `n` equally spaced points on a circle.
//!
//! The crate is organised bottom-up:
//!
//! * [`polygon`]: edge words, vertex cycles, chord sets, the dihedral action and
//!   canonical keys for the two equivalence relations.
//! * [`validity`]: partial-sum closure checks and the gcd/parity admissibility
//!   predicate for alternating words.
//! * [`families`]: the polygons with exactly `n/2` symmetry axes, their count and
//!   the closed forms for `n = 2^k`, `n = 2p` and `n = 2^k p`.
//! * [`census`]: exact big-integer class counts under rotation and under the full
//!   dihedral group.
//! * [`oracle`]: brute-force enumeration of every polygon for small `n`, used to
//!   cross-check everything above.
//! * [`report`]: census reports, tables and b-file sequences.
//! * [`svg`]: SVG drawings with optional symmetry-axis overlays.

pub mod census;
mod error;
pub mod families;
pub mod oracle;
pub mod polygon;
pub mod report;
pub mod svg;
pub mod validity;

pub use census::{count_equivalence_classes, count_similarity_classes, BigCount};
pub use error::{Error, Result};
pub use families::{count_m_symmetric, enumerate_representatives, PairFamily};
pub use oracle::{ClassRecord, Classification, SymmetryHistogram};
pub use polygon::{
    canonical_key, CanonicalKey, ChordSet, EdgeWord, Relation, Symmetry, SymmetryProfile,
    VertexCycle,
};
pub use report::{CensusReport, SequenceFile, TableFormat};
pub use svg::{render_svg, RenderOptions};
pub use validity::{AlternatingPair, CandidateWord};
