//! Parsers, corpus pipeline, evaluation harness and command line for the
//! distilled-code compiler. The language-independent algorithms live in
//! [`distil_core`].

pub mod corpus;
pub mod eval;
pub mod frontend;
pub mod pipeline;

pub use distil_core;
