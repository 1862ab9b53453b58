pub mod cli;
pub mod context_ops;
pub mod corpus;
pub mod error;
pub mod linalg;
pub mod logic;
pub mod realizability;
pub mod states;
pub mod uniqueness;

pub use error::{Error, Result};
