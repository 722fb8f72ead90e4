//! struct-seek: structural statement extraction and sequence-based
//! similarity retrieval for Java source code.
//!
//! A lexical extractor reduces each Java method to an ordered sequence of
//! statement tokens (control opens, simple controls, block closes, and
//! type-qualified method calls). Three interchangeable models rank methods
//! against a statement-sequence query: the derived sequence retrieval model
//! (DSRM), an extended Sorensen-Dice index, and a tf-idf vector space model.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod extractor;
pub mod simcore;
pub mod token;

pub use error::Error;
pub use extractor::{MethodStructure, SourceUnit};
pub use simcore::{ModelScore, QuerySequence};
pub use token::StatementToken;
