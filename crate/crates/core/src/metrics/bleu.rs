use alloc::collections::BTreeMap;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BleuError {
    #[error("reference {0} is empty")]
    EmptyReference(usize),
    #[error("max_n must be at least 1")]
    ZeroOrder,
    #[error("{hypotheses} hypotheses for {references} references")]
    LengthMismatch { hypotheses: usize, references: usize },
}

fn ngrams<T: AsRef<str>>(toks: &[T], n: usize) -> BTreeMap<Vec<&str>, usize> {
    let mut m = BTreeMap::new();
    if toks.len() >= n {
        for w in toks.windows(n) {
            *m.entry(w.iter().map(AsRef::as_ref).collect()).or_insert(0) += 1;
        }
    }
    m
}

/// Sentence BLEU on a 0..=100 scale: [`corpus_bleu`] over one pair.
pub fn bleu<T: AsRef<str>>(hypothesis: &[T], reference: &[T], max_n: usize) -> Result<f64, BleuError> {
    corpus_bleu(&[hypothesis], &[reference], max_n)
}

/// Corpus BLEU: clipped n-gram counts summed over all pairs, uniform weights
/// for orders `1..=max_n`, and a brevity penalty on total lengths. No
/// smoothing, so a corpus with no matching n-gram of some order scores 0.
pub fn corpus_bleu<H, R, T>(hypotheses: &[H], references: &[R], max_n: usize) -> Result<f64, BleuError>
where
    H: AsRef<[T]>,
    R: AsRef<[T]>,
    T: AsRef<str>,
{
    if max_n == 0 {
        return Err(BleuError::ZeroOrder);
    }
    if hypotheses.len() != references.len() {
        return Err(BleuError::LengthMismatch {
            hypotheses: hypotheses.len(),
            references: references.len(),
        });
    }
    let mut matched = alloc::vec![0usize; max_n];
    let mut total = alloc::vec![0usize; max_n];
    let (mut hyp_len, mut ref_len) = (0usize, 0usize);
    for (i, (h, r)) in hypotheses.iter().zip(references).enumerate() {
        let (h, r) = (h.as_ref(), r.as_ref());
        if r.is_empty() {
            return Err(BleuError::EmptyReference(i));
        }
        hyp_len += h.len();
        ref_len += r.len();
        for n in 1..=max_n {
            let rc = ngrams(r, n);
            for (g, c) in ngrams(h, n) {
                matched[n - 1] += c.min(rc.get(&g).copied().unwrap_or(0));
                total[n - 1] += c;
            }
        }
    }
    if hyp_len == 0 || matched.contains(&0) {
        return Ok(0.0);
    }
    let log_p: f64 = matched
        .iter()
        .zip(&total)
        .map(|(&m, &t)| libm::log(m as f64 / t as f64))
        .sum::<f64>()
        / max_n as f64;
    let bp = if hyp_len > ref_len {
        1.0
    } else {
        libm::exp(1.0 - ref_len as f64 / hyp_len as f64)
    };
    Ok(100.0 * bp * libm::exp(log_p))
}
