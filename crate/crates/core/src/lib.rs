//! Witness extraction from randomized decision oracles, with an algebraic
//! k-path oracle over GF(2^q).

pub mod extract;
pub mod gf2q;
pub mod graph;
pub mod kpath;

pub use extract::{
    extract_bisect, extract_hklr, extract_las_vegas, kpath_extract, single_phase_kpath_extract,
    two_phase_kpath_extract, Algorithm, ExtractError, ExtractionTrace, InclusionOracle, ItemId,
    ItemUniverse, KpathExtraction, Phases, Stage, WitnessChecker,
};
pub use gf2q::{BackendKind, FieldElement, FieldError, FieldSpec, MulBackend};
pub use graph::{Graph, GraphError, PathWitness, SpiderSpec, SpiderVariant, VertexId};
pub use kpath::{decide_kpath, decide_repeated, Answer, OracleContext, OracleError, OracleVerdict};
