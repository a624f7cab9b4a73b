//! Language-agnostic core of the distilled-code compiler.
//!
//! Everything in this crate is pure and allocation-only (`no_std` + `alloc`):
//! syntax trees arrive already parsed (see the `distil` crate for the
//! tree-sitter adapters), and every stochastic operation takes an explicit
//! seed.
//!
//! The pipeline for one function is
//! [`distill::prune`] → [`distill::unify`] → [`distill::fuzz_names`] →
//! [`distill::reassemble`], producing a [`distilled::DistilledCode`].
//! [`decompile::decompile`] renders distilled code back into scaffold
//! source for any of the four supported languages.
#![no_std]

extern crate alloc;

pub mod decompile;
pub mod distill;
pub mod distilled;
pub mod ir;
pub mod lang;
pub mod literal;
pub mod metrics;
pub mod noise;
pub mod registry;
pub mod segment;
pub mod strip;
pub mod syntax;
pub mod token;
pub mod vocab;

pub use distilled::{DistilledCode, DistilledToken};
pub use lang::LanguageId;
pub use registry::MorphemeRegistry;
pub use syntax::{SyntaxNode, SyntaxTree};
pub use token::{Token, TokenKind};
