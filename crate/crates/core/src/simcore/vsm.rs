//! Vector space model with tf-idf weighting.

use std::collections::{BTreeMap, HashMap};

use crate::token::StatementToken;

/// Corpus-level term statistics: document count, per-term document frequency,
/// and the vocabulary of distinct statement tokens.
#[derive(Debug, Clone, PartialEq)]
pub struct TfIdfModel {
    document_count: usize,
    document_frequency: HashMap<StatementToken, usize>,
}

impl TfIdfModel {
    /// Builds the model from one token sequence per document.
    pub fn from_documents<'d>(docs: impl IntoIterator<Item = &'d [StatementToken]>) -> Self {
        let mut document_count = 0;
        let mut document_frequency: HashMap<StatementToken, usize> = HashMap::new();
        for doc in docs {
            document_count += 1;
            let mut seen: Vec<&StatementToken> = Vec::new();
            for tok in doc {
                if !seen.contains(&tok) {
                    seen.push(tok);
                    *document_frequency.entry(tok.clone()).or_insert(0) += 1;
                }
            }
        }
        TfIdfModel {
            document_count,
            document_frequency,
        }
    }

    pub fn document_count(&self) -> usize {
        self.document_count
    }

    pub fn vocabulary_size(&self) -> usize {
        self.document_frequency.len()
    }

    pub fn document_frequency(&self, term: &StatementToken) -> Option<usize> {
        self.document_frequency.get(term).copied()
    }

    pub fn contains(&self, term: &StatementToken) -> bool {
        self.document_frequency.contains_key(term)
    }
}

/// log2(M / df) for a vocabulary term; `None` signals an unknown term, which
/// callers weight as 0.
pub fn idf(term: &StatementToken, model: &TfIdfModel) -> Option<f64> {
    let df = model.document_frequency(term)?;
    Some((model.document_count as f64 / df as f64).log2())
}

/// tf * idf; unknown terms weigh 0.
pub fn weight(tf: usize, term: &StatementToken, model: &TfIdfModel) -> f64 {
    match idf(term, model) {
        Some(idf) => tf as f64 * idf,
        None => 0.0,
    }
}

/// Cosine of the angle between two weighted term vectors; 0 when either norm
/// is 0. Vectors are ordered maps so the summation order, and therefore the
/// exact floating-point result, never depends on hashing.
pub fn cosine(d: &BTreeMap<StatementToken, f64>, q: &BTreeMap<StatementToken, f64>) -> f64 {
    let mut dot = 0.0;
    let mut norm_d = 0.0;
    for (term, wd) in d {
        norm_d += wd * wd;
        if let Some(wq) = q.get(term) {
            dot += wd * wq;
        }
    }
    let norm_q: f64 = q.values().map(|wq| wq * wq).sum();
    if norm_d == 0.0 || norm_q == 0.0 {
        return 0.0;
    }
    dot / (norm_d.sqrt() * norm_q.sqrt())
}

/// tf-idf weighted vector for raw term counts; unknown terms are dropped.
pub fn weigh_counts(
    counts: &BTreeMap<StatementToken, usize>,
    model: &TfIdfModel,
) -> BTreeMap<StatementToken, f64> {
    counts
        .iter()
        .filter(|(term, _)| model.contains(term))
        .map(|(term, &tf)| (term.clone(), weight(tf, term, model)))
        .collect()
}

/// Cosine similarity of the tf-idf weighted document and query vectors. Query
/// term frequencies are the raw counts, weighted with the corpus idf.
pub fn sim_vsm(
    doc_counts: &BTreeMap<StatementToken, usize>,
    query_counts: &BTreeMap<StatementToken, usize>,
    model: &TfIdfModel,
) -> f64 {
    cosine(
        &weigh_counts(doc_counts, model),
        &weigh_counts(query_counts, model),
    )
}

/// Raw occurrence counts of every token in a sequence.
pub fn term_counts(doc: &[StatementToken]) -> BTreeMap<StatementToken, usize> {
    let mut counts = BTreeMap::new();
    for tok in doc {
        *counts.entry(tok.clone()).or_insert(0usize) += 1;
    }
    counts
}
