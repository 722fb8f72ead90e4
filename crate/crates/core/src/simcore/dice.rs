//! Extended Sorensen-Dice similarity over statement multisets.
//!
//! The query's distinct terms play the role of the N sets. Evaluated on
//! occurrence counts the full denominator telescopes to the plain sum of the
//! per-term counts, so the model reduces to a closed form over
//! [`query_term_counts`]; the combination-enumerating oracle that validates
//! the closed form lives in the test suite.

use std::collections::HashMap;

use crate::simcore::dsrm::{ModelScore, QuerySequence};
use crate::token::StatementToken;

/// Occurrence counts in `doc` for each requested term; absent terms map to 0.
pub fn query_term_counts<'t>(
    doc: &[StatementToken],
    terms: impl IntoIterator<Item = &'t StatementToken>,
) -> HashMap<&'t StatementToken, usize> {
    let mut counts: HashMap<&StatementToken, usize> = terms.into_iter().map(|t| (t, 0)).collect();
    for tok in doc {
        if let Some(c) = counts.get_mut(tok) {
            *c += 1;
        }
    }
    counts
}

/// Distinct terms of a query in first-occurrence order.
pub fn distinct_terms(q: &QuerySequence) -> Vec<&StatementToken> {
    let mut seen = Vec::new();
    for term in q.terms() {
        if !seen.contains(&term) {
            seen.push(term);
        }
    }
    seen
}

/// Extended Sorensen-Dice score of a document against a query.
///
/// Operates on the query's distinct terms: with n' distinct terms and
/// per-term document counts c_d, the exact count is n' times the minimum
/// count and the partial count is the residual sum of counts.
pub fn sim_dice(doc: &[StatementToken], q: &QuerySequence) -> ModelScore {
    let distinct = distinct_terms(q);
    let counts = query_term_counts(doc, distinct.iter().copied());
    let n_distinct = distinct.len();
    let min = distinct.iter().map(|t| counts[*t]).min().unwrap_or(0);
    let sum: usize = distinct.iter().map(|t| counts[*t]).sum();
    let exact = n_distinct * min;
    ModelScore::from_counts(exact, sum - exact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::token::{ControlKind, StatementToken as T};

    fn fig4_sequence() -> Vec<T> {
        vec![
            T::call("findValue"),
            T::control(ControlKind::If),
            T::control(ControlKind::For),
            T::call("StringUtil.isNotBlank"),
            T::control(ControlKind::If),
            T::SimpleControl(crate::token::SimpleKind::Break),
            T::BlockClose,
            T::BlockClose,
            T::BlockClose,
            T::call("addParameter"),
            T::call("addParameter"),
            T::BlockClose,
        ]
    }

    fn query_if_add_close() -> QuerySequence {
        QuerySequence::new(vec![
            T::control(ControlKind::If),
            T::call("addParameter"),
            T::BlockClose,
        ])
        .unwrap()
    }

    #[test]
    fn counts_on_the_reference_sequence() {
        let q = query_if_add_close();
        let terms = distinct_terms(&q);
        let counts = query_term_counts(&fig4_sequence(), terms.iter().copied());
        assert_eq!(counts[&T::control(ControlKind::If)], 2);
        assert_eq!(counts[&T::call("addParameter")], 2);
        assert_eq!(counts[&T::BlockClose], 4);
    }

    #[test]
    fn counts_of_empty_document_are_zero() {
        let q = query_if_add_close();
        let terms = distinct_terms(&q);
        let counts = query_term_counts(&[], terms.iter().copied());
        assert!(counts.values().all(|&c| c == 0));
    }

    #[test]
    fn counts_ignore_terms_outside_the_request() {
        let doc = vec![T::call("A"), T::call("A"), T::call("B")];
        let term = T::call("A");
        let counts = query_term_counts(&doc, [&term]);
        assert_eq!(counts.len(), 1);
        assert_eq!(counts[&term], 2);
    }

    #[test]
    fn dice_reference_sequence_scores_three_quarters() {
        let score = sim_dice(&fig4_sequence(), &query_if_add_close());
        assert_eq!((score.exact_count, score.partial_count), (6, 2));
        assert!((score.similarity - 0.750).abs() < 1e-12);
    }

    #[test]
    fn dice_counts_four_four_five() {
        // Counts {if:4, addParameter:4, }:5} give 12 / 13.
        let mut doc = Vec::new();
        for _ in 0..4 {
            doc.push(T::control(ControlKind::If));
            doc.push(T::call("addParameter"));
        }
        for _ in 0..5 {
            doc.push(T::BlockClose);
        }
        let score = sim_dice(&doc, &query_if_add_close());
        assert_eq!((score.exact_count, score.partial_count), (12, 1));
        assert!((score.similarity - 12.0 / 13.0).abs() < 1e-12);
    }

    #[test]
    fn dice_with_a_missing_term_is_zero() {
        // Counts {if:0, addParameter:1, }:1} give 0 with partial 2.
        let doc = vec![T::call("addParameter"), T::BlockClose];
        let score = sim_dice(&doc, &query_if_add_close());
        assert_eq!((score.exact_count, score.partial_count), (0, 2));
        assert_eq!(score.similarity, 0.0);
    }

    #[test]
    fn dice_deduplicates_query_terms() {
        let doc = vec![T::control(ControlKind::If), T::BlockClose, T::BlockClose];
        let duplicated = QuerySequence::new(vec![
            T::control(ControlKind::If),
            T::BlockClose,
            T::BlockClose,
        ])
        .unwrap();
        let pair = QuerySequence::new(vec![T::control(ControlKind::If), T::BlockClose]).unwrap();
        let a = sim_dice(&doc, &duplicated);
        let b = sim_dice(&doc, &pair);
        assert_eq!(a, b);
        assert!(a.similarity > 0.0);
    }
}
