//! Exact arithmetic for evolution algebras over ℚ and 𝔽_p: identity checks,
//! the annihilator chain, Wedderburn decomposition and the classification of
//! power-associative evolution algebras of dimension at most six.

pub mod algebra;
pub mod catalog;
pub mod classify;
pub mod decomposition;
pub mod error;
pub mod field;
pub mod format;
pub mod identities;
pub mod linalg;
pub mod random;

pub use algebra::{Element, EvolutionAlgebra};
pub use catalog::{canonical_algebra, emit_catalog, Atom, CatalogEntry, CatalogLabel, Kind};
pub use classify::{classify, verify_isomorphism, ClassificationResult, InvariantRecord};
pub use error::{Error, Result};
pub use field::{Field, FieldError, FieldKind, ParseError, Scalar};
pub use format::{parse_algebra_file, serialize_algebra_file};
pub use identities::{CheckReport, Condition, Witness};
pub use linalg::Subspace;
pub use random::{random_algebra, RandomAlgebra, RandomMode};
