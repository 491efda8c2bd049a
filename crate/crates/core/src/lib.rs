//! Injective dimensions of string algebras.
//!
//! A string algebra is read from a small text format, checked against the
//! string quiver axioms, and analysed through its string modules: the
//! cosyzygies of each indecomposable projective are followed as strings
//! with simple socle, which yields `inj.dim P(v)` and a witness chain of
//! relations. [`oracle`] recomputes the same numbers with explicit matrices.

pub mod algebra;
pub mod cosyzygy;
pub mod crosscheck;
pub mod elis;
pub mod error;
pub mod fixtures;
pub mod gen;
pub mod oracle;
pub mod paths;
pub mod string;

pub use algebra::{
    classify_vertex, classify_vertex_with, pair_at_vertex, parse_algebra, validate_string_quiver,
    vertex_profile, ArmBound, Arrow, ArrowId, Axiom, BoundQuiver, Parsed, Quiver, RelationId,
    RelationSet, StrictnessReading, StringAlgebra, ValidationReport, VertexClass, VertexId,
    VertexProfile, VertexType, Violation,
};
pub use cosyzygy::{
    cosyzygy_directed, d_injectivity_sets, envelope_steps, first_cosyzygy_projective,
    AnchoredRelation, EnvelopeData, SocleString,
};
pub use elis::{
    elis_outcome, elis_outcome_with, inj_dim_algebra, inj_dim_algebra_with, inj_dim_projective,
    inj_dim_projective_with, is_gorenstein, is_self_injective, ElisConfig, ElisOutcome, ElisState,
    InjDim, ProjectiveAnalysis, TraceStep,
};
pub use error::{Error, ParseError, Result};
pub use oracle::{Cosyzygy, Oracle, OracleDim, RepMap, Representation};
pub use string::{
    canonicalize, dim_vector, injective_string, is_injective_module, is_valid_string,
    projective_string, DimensionVector, Letter, StringClass, StringWord,
};
