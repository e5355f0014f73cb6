//! Certificate-producing search for `K_{2,ℓ}` minors.
//!
//! The crate provides an immutable graph type with flow-based connectivity
//! primitives ([`graph`], [`flow`]), an exact minor oracle with an independent
//! certificate checker ([`minor`]), generators for the extremal families
//! ([`families`]), the max-leaf Steiner tree engine around a high-degree
//! vertex ([`steiner`]), and the nested-cut engine with its top-level driver
//! ([`nested`]).

pub mod error;
pub mod families;
pub mod flow;
pub mod graph;
pub mod io;
pub mod iso;
pub mod minor;
pub mod nested;
pub mod steiner;

pub use error::{EngineError, FamilyError, GraphError};
pub use graph::{Graph, Layering, VertexSet};
pub use minor::{find_k2l_minor, verify_model, MinorModel, MinorSearch, OracleBudget};
