//! Translation and retrieval metrics.

mod bleu;
mod retrieval;

pub use bleu::{bleu, corpus_bleu, BleuError};
pub use retrieval::{cosine_similarity, rank, retrieval_metrics, RetrievalError, RetrievalScores};
