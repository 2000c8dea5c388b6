//! Toolkit for the ASP-Core-2 input language.

pub mod analysis;
pub mod error;
pub mod exec;
pub mod ground;
pub mod lexer;
pub mod pipeline;
pub mod rewrite;
pub mod solve;
pub mod syntax;

pub use error::{Error, ExitStatus};
