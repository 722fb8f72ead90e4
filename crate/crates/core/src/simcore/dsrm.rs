//! Derived sequence retrieval model.
//!
//! A query of n statements is expanded into derived patterns in which r of
//! the positions are negated. Each pattern is matched left to right against
//! the document as a contiguous window; matched positive slots are consumed
//! and can never match again. Full matches (r = 0) feed the numerator,
//! weighted residual matches the denominator remainder.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::token::StatementToken;

/// An ordered retrieval query of at least one statement token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuerySequence {
    terms: Vec<StatementToken>,
}

impl QuerySequence {
    pub fn new(terms: Vec<StatementToken>) -> Result<Self, Error> {
        if terms.is_empty() {
            return Err(Error::EmptyQuery);
        }
        Ok(QuerySequence { terms })
    }

    pub fn terms(&self) -> &[StatementToken] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A copy of the query with a set of negated positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedPattern<'q> {
    terms: &'q [StatementToken],
    /// Negation flags, one per position.
    negated: Vec<bool>,
    r: usize,
}

impl<'q> DerivedPattern<'q> {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of negated positions.
    pub fn arity(&self) -> usize {
        self.r
    }

    pub fn is_negated(&self, position: usize) -> bool {
        self.negated[position]
    }

    /// 1-based negated positions, ascending.
    pub fn negated_positions(&self) -> Vec<usize> {
        self.negated
            .iter()
            .enumerate()
            .filter(|(_, n)| **n)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

/// The document sequence being consumed during one similarity evaluation.
/// A consumed slot never reverts.
#[derive(Debug, Clone)]
pub struct WorkSequence<'d> {
    slots: Vec<Option<&'d StatementToken>>,
}

impl<'d> WorkSequence<'d> {
    pub fn new(doc: &'d [StatementToken]) -> Self {
        WorkSequence {
            slots: doc.iter().map(Some).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn is_consumed(&self, index: usize) -> bool {
        self.slots[index].is_none()
    }

    pub fn consumed_count(&self) -> usize {
        self.slots.iter().filter(|s| s.is_none()).count()
    }
}

/// Enumerates the derived patterns of `q` with exactly `r` negated positions.
///
/// Exactly C(n, r) patterns are produced. Subsets negating later positions
/// come first: for a two-term query and r = 1 the order is "negate position
/// 2" then "negate position 1".
pub fn sqc_comb(q: &QuerySequence, r: usize) -> Result<Vec<DerivedPattern<'_>>, Error> {
    let n = q.len();
    if r >= n {
        return Err(Error::ArityOutOfRange { r, n });
    }
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    combinations(n, r, &mut Vec::new(), &mut subsets);
    subsets.reverse();
    Ok(subsets
        .into_iter()
        .map(|subset| {
            let mut negated = vec![false; n];
            for pos in subset {
                negated[pos] = true;
            }
            DerivedPattern {
                terms: q.terms(),
                negated,
                r,
            }
        })
        .collect())
}

/// 0-based r-subsets of 0..n in ascending lexicographic order.
fn combinations(n: usize, r: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == r {
        out.push(prefix.clone());
        return;
    }
    let start = prefix.last().map_or(0, |&p| p + 1);
    for i in start..n {
        prefix.push(i);
        combinations(n, r, prefix, out);
        prefix.pop();
    }
}

/// One left-to-right matching pass of a derived pattern over the work
/// sequence, consuming matched positive slots.
///
/// A window matches when every non-negated position equals the pattern term
/// (a consumed slot never equals anything) and every negated position differs
/// from it (a consumed slot satisfies the negation). Each match adds n - r to
/// the count; scanning resumes at the next window start.
pub fn count_pass(work: &mut WorkSequence<'_>, pattern: &DerivedPattern<'_>) -> usize {
    let m = work.len();
    let n = pattern.len();
    if n == 0 || m < n {
        return 0;
    }
    let weight = n - pattern.arity();
    let mut count = 0;
    for j in 0..=(m - n) {
        let window_matches = (0..n).all(|k| match work.slots[j + k] {
            Some(tok) => {
                if pattern.is_negated(k) {
                    *tok != pattern.terms[k]
                } else {
                    *tok == pattern.terms[k]
                }
            }
            // Consumed: fails a positive position, satisfies a negated one.
            None => pattern.is_negated(k),
        });
        if window_matches {
            count += weight;
            for k in 0..n {
                if !pattern.is_negated(k) {
                    work.slots[j + k] = None;
                }
            }
        }
    }
    count
}

/// Similarity value with its exact- and partial-match counts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelScore {
    pub similarity: f64,
    pub exact_count: usize,
    pub partial_count: usize,
}

impl ModelScore {
    /// exact / (exact + partial), or 0 when both counts are 0.
    pub fn from_counts(exact_count: usize, partial_count: usize) -> Self {
        let total = exact_count + partial_count;
        let similarity = if total == 0 {
            0.0
        } else {
            exact_count as f64 / total as f64
        };
        ModelScore {
            similarity,
            exact_count,
            partial_count,
        }
    }

    pub const ZERO: ModelScore = ModelScore {
        similarity: 0.0,
        exact_count: 0,
        partial_count: 0,
    };
}

/// Sequence similarity between a document and a query.
///
/// A document shorter than the query offers no window of pattern length and
/// scores zero; this keeps retrieval a strict subset of the Dice model's.
/// Otherwise the exact count comes from the full pattern and the partial
/// count from every derived pattern with 1..n-1 negations, run in canonical
/// order against the same continuously consumed work sequence.
pub fn sim_dsrm(doc: &[StatementToken], q: &QuerySequence) -> ModelScore {
    let n = q.len();
    if doc.len() < n {
        return ModelScore::ZERO;
    }
    let mut work = WorkSequence::new(doc);

    let full = &sqc_comb(q, 0).expect("r = 0 is always in range")[0];
    let exact_count = count_pass(&mut work, full);

    let mut partial_count = 0;
    for r in 1..n {
        for pattern in &sqc_comb(q, r).expect("r < n by loop bound") {
            partial_count += count_pass(&mut work, pattern);
        }
    }
    ModelScore::from_counts(exact_count, partial_count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::token::{ControlKind, StatementToken as T};

    fn a1() -> T {
        T::call("A1")
    }
    fn a2() -> T {
        T::call("A2")
    }
    fn q(terms: Vec<T>) -> QuerySequence {
        QuerySequence::new(terms).unwrap()
    }

    #[test]
    fn sqc_comb_two_terms_negates_later_position_first() {
        let query = q(vec![a1(), a2()]);
        let patterns = sqc_comb(&query, 1).unwrap();
        assert_eq!(patterns.len(), 2);
        assert_eq!(patterns[0].negated_positions(), vec![2]);
        assert_eq!(patterns[1].negated_positions(), vec![1]);
    }

    #[test]
    fn sqc_comb_zero_arity_is_identity_pattern() {
        let query = q(vec![a1(), a2()]);
        let patterns = sqc_comb(&query, 0).unwrap();
        assert_eq!(patterns.len(), 1);
        assert_eq!(patterns[0].negated_positions(), Vec::<usize>::new());
    }

    #[test]
    fn sqc_comb_three_choose_two_canonical_order() {
        let query = q(vec![a1(), a2(), T::BlockClose]);
        let patterns = sqc_comb(&query, 2).unwrap();
        let orders: Vec<Vec<usize>> = patterns.iter().map(|p| p.negated_positions()).collect();
        assert_eq!(orders, vec![vec![2, 3], vec![1, 3], vec![1, 2]]);
    }

    #[test]
    fn sqc_comb_rejects_out_of_range_arity() {
        let query = q(vec![a1(), a2()]);
        assert!(matches!(
            sqc_comb(&query, 2),
            Err(Error::ArityOutOfRange { r: 2, n: 2 })
        ));
    }

    #[test]
    fn count_pass_full_match_consumes_interior() {
        // Worked example: [A1, A1, A2, A2] against [A1 -> A2].
        let doc = vec![a1(), a1(), a2(), a2()];
        let query = q(vec![a1(), a2()]);
        let mut work = WorkSequence::new(&doc);
        let full = &sqc_comb(&query, 0).unwrap()[0];
        assert_eq!(count_pass(&mut work, full), 2);
        let consumed: Vec<bool> = (0..4).map(|i| work.is_consumed(i)).collect();
        assert_eq!(consumed, vec![false, true, true, false]);
    }

    #[test]
    fn count_pass_negated_tail_matches_once() {
        // Continues the worked example: [A1, n/a, n/a, A2] against [A1 -> not A2].
        let doc = vec![a1(), a1(), a2(), a2()];
        let query = q(vec![a1(), a2()]);
        let mut work = WorkSequence::new(&doc);
        let full = &sqc_comb(&query, 0).unwrap()[0];
        count_pass(&mut work, full);
        let partials = sqc_comb(&query, 1).unwrap();
        assert_eq!(count_pass(&mut work, &partials[0]), 1);
        let consumed: Vec<bool> = (0..4).map(|i| work.is_consumed(i)).collect();
        assert_eq!(consumed, vec![true, true, true, false]);
    }

    #[test]
    fn count_pass_without_positive_occurrences_is_zero() {
        let doc = vec![T::BlockClose, T::BlockClose, T::control(ControlKind::If)];
        let query = q(vec![a1(), a2()]);
        let mut work = WorkSequence::new(&doc);
        // Every pattern with r < n keeps at least one positive position.
        for r in 0..2 {
            for pattern in &sqc_comb(&query, r).unwrap() {
                assert_eq!(count_pass(&mut work, pattern), 0, "pattern {pattern:?}");
            }
        }
    }

    #[test]
    fn sim_dsrm_worked_example_is_half() {
        let doc = vec![a1(), a1(), a2(), a2()];
        let score = sim_dsrm(&doc, &q(vec![a1(), a2()]));
        assert_eq!(score.exact_count, 2);
        assert_eq!(score.partial_count, 2);
        assert_eq!(score.similarity, 0.5);
    }

    #[test]
    fn sim_dsrm_self_similarity_is_one() {
        let doc = vec![
            T::control(ControlKind::If),
            a1(),
            T::BlockClose,
            T::BlockClose,
        ];
        let score = sim_dsrm(&doc, &q(doc.clone()));
        assert_eq!(score.similarity, 1.0);
        assert_eq!(score.partial_count, 0);
    }

    #[test]
    fn sim_dsrm_empty_document_is_zero() {
        let score = sim_dsrm(&[], &q(vec![a1()]));
        assert_eq!(score, ModelScore::ZERO);
    }

    #[test]
    fn sim_dsrm_short_document_scores_zero() {
        // No window of query length exists, so nothing can match; a positive
        // score here would break the subset relation against the Dice model.
        let doc = vec![a1()];
        let score = sim_dsrm(&doc, &q(vec![a1(), a2()]));
        assert_eq!(score, ModelScore::ZERO);
    }

    #[test]
    fn consumption_only_grows_within_an_evaluation() {
        let doc = vec![a1(), a2(), a1(), a2(), a1()];
        let query = q(vec![a1(), a2()]);
        let mut work = WorkSequence::new(&doc);
        let mut consumed_so_far = 0;
        for r in 0..query.len() {
            for pattern in &sqc_comb(&query, r).unwrap() {
                count_pass(&mut work, pattern);
                let now = work.consumed_count();
                assert!(now >= consumed_so_far);
                consumed_so_far = now;
            }
        }
        assert!(consumed_so_far <= work.len());
    }

    #[test]
    fn pattern_pass_total_is_two_to_the_n_minus_one() {
        for n in 1..=5usize {
            let query = q((0..n).map(|i| T::call(format!("S{i}"))).collect());
            let total: usize = (0..n).map(|r| sqc_comb(&query, r).unwrap().len()).sum();
            assert_eq!(total, (1 << n) - 1);
        }
    }
}
