use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RetrievalError {
    #[error("query {0} has no relevant candidate")]
    NoRelevantCandidate(usize),
    #[error("similarity and relevance shapes differ at query {0}")]
    ShapeMismatch(usize),
    #[error("no queries")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RetrievalScores {
    pub precision_at_k: f64,
    pub map: f64,
    pub mrr: f64,
}

/// Candidate indices by descending score; ties keep index order.
pub fn rank(scores: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    idx
}

/// P@k, MAP and MRR averaged over queries. P@k divides by `k` even when
/// fewer than `k` candidates exist.
pub fn retrieval_metrics(similarity: &[Vec<f64>], relevance: &[Vec<bool>], k: usize) -> Result<RetrievalScores, RetrievalError> {
    if similarity.is_empty() {
        return Err(RetrievalError::Empty);
    }
    if similarity.len() != relevance.len() {
        return Err(RetrievalError::ShapeMismatch(similarity.len().min(relevance.len())));
    }
    let (mut p_sum, mut ap_sum, mut rr_sum) = (0.0, 0.0, 0.0);
    for (q, (sims, rel)) in similarity.iter().zip(relevance).enumerate() {
        if sims.len() != rel.len() {
            return Err(RetrievalError::ShapeMismatch(q));
        }
        let total = rel.iter().filter(|&&r| r).count();
        if total == 0 {
            return Err(RetrievalError::NoRelevantCandidate(q));
        }
        let order = rank(sims);
        let mut hits = 0usize;
        let mut ap = 0.0;
        let mut rr = 0.0;
        let mut top_k = 0usize;
        for (pos, &c) in order.iter().enumerate() {
            if rel[c] {
                hits += 1;
                ap += hits as f64 / (pos + 1) as f64;
                if rr == 0.0 {
                    rr = 1.0 / (pos + 1) as f64;
                }
                if pos < k {
                    top_k += 1;
                }
            }
        }
        p_sum += if k == 0 { 0.0 } else { top_k as f64 / k as f64 };
        ap_sum += ap / total as f64;
        rr_sum += rr;
    }
    let n = similarity.len() as f64;
    Ok(RetrievalScores {
        precision_at_k: p_sum / n,
        map: ap_sum / n,
        mrr: rr_sum / n,
    })
}

/// Cosine similarity of two embedding vectors; 0 when either is zero.
pub fn cosine_similarity(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = libm::sqrt(a.iter().map(|x| x * x).sum());
    let nb = libm::sqrt(b.iter().map(|x| x * x).sum());
    if na == 0.0 || nb == 0.0 {
        0.0
    } else {
        dot / (na * nb)
    }
}
