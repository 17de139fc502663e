//! Template-constrained multiposets, embeddings between them, the Ramsey
//! arrow relation, and an amalgamation construction for binary diagrams.

pub mod amalgam;
pub mod canon;
pub mod certificate;
pub mod class;
pub mod classprops;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod hom;
pub mod io;
pub mod multiposet;
pub mod ramsey;
pub mod relation;
pub mod sample;
pub mod template;

pub use class::{ClassSpec, StructureClass};
pub use error::{Error, Result};
pub use hom::Embedding;
pub use multiposet::Multiposet;
pub use relation::Relation;
pub use template::{validate_template, Template, TemplateInfo};
