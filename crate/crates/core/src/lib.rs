//! Rich subcontexts of finite formal contexts.
//!
//! For a context with at least one non-incident pair, some non-incident
//! object/attribute pair `(g, m)` can be deleted while keeping at least half
//! of the concepts. Equivalently, the edit `op^{g,m}` that makes `(g, m)` a
//! splitting pair does not lose concepts. This crate finds such pairs through
//! systems of mixed generators, and carries the brute-force oracles and
//! exhaustive campaigns used to check every step on small contexts.

pub mod concepts;
pub mod context;
pub mod cxt;
pub mod decomposition;
pub mod edit;
pub mod error;
pub mod mixgen;
pub mod samples;
pub mod verifier;

pub use concepts::{count_concepts, enumerate_concepts, Concept, ConceptSet};
pub use context::{AttributeSet, ContextId, FormalContext, ObjectSet};
pub use cxt::{read_cxt, write_cxt};
pub use decomposition::{
    check_stability, decompose, verify_theorem1, Decomposition, MixgenClass, Theorem1Report,
};
pub use edit::{
    contranominal_summand_size, contrast, find_rich_pair, is_rich_pair, noncontranominal_kernel,
    nop_sequence, nop_step, select_object_theorem2, ContranominalDecomposition, NopCase, NopTrace,
    RichPair, Theorem2Report,
};
pub use error::{Error, Result};
pub use mixgen::{build_complete_system, is_mixed_generator, MixgenSystem};
