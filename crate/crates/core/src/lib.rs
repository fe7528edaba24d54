pub mod cascade;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod pipeline;
pub mod predictor;
pub mod relation;
pub mod relfile;
pub mod senses;
pub mod span;
pub mod spans;

pub use error::{Error, Result};
pub use span::TokenSpan;
