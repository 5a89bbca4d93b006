//! Exact-arithmetic toolkit for Laplacian-integral graphs: graph
//! compositions, exact spectra, realizability filters for spectral targets
//! with one missing value or one doubled value, recursive witness
//! constructions, and isomorphism-free exhaustive search at small orders.

pub mod canon;
pub mod construct;
pub mod error;
pub mod expr;
pub mod graph;
pub mod search;
pub mod spectrum;
pub mod targets;

pub use canon::{canonical_form, canonical_graph, CanonicalForm};
pub use construct::{
    cone, construct, construct_sijm_m_eq_n, construct_sijm_m_eq_n_minus_1_i1,
    construct_sijm_m_eq_n_minus_1_i2, construct_sin, lift_join_union, Construction,
    ConstructionTrace, TraceStep,
};
pub use search::{
    check_conjectures, enumerate_connected, enumerate_connected_bitmask,
    laplacian_integral_census, reproduce_appendix_tables, CensusCache, CensusRecord,
    ConjectureCheck, ConjectureId, ConjectureVerdict, OrderVerdict, Searcher, TableReport,
    TableRowResult, CACHE_DIR_ENV, CACHE_FORMAT_VERSION,
};
pub use targets::{ObstructionTag, RealizabilityReport, SpecTarget, TheoremVerdict};
pub use error::{Error, Result};
pub use graph::{Family, Graph, MAX_ORDER};
pub use spectrum::{
    integer_spectrum, laplacian_char_poly, spanning_tree_count, spectrum_of_cartesian,
    spectrum_of_complement, spectrum_of_join, spectrum_of_union, CharPoly, Spectrum,
};

