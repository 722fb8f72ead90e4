//! Property tests for the model and persistence invariants.

mod common;

use std::collections::HashMap;
use std::path::Path;

use proptest::prelude::*;

use struct_seek::corpus::{self, CorpusStore};
use struct_seek::extractor::MethodStructure;
use struct_seek::simcore::{self, QuerySequence};
use struct_seek::token::{parse_term, ControlKind, SimpleKind, StatementToken};

fn token_strategy() -> impl Strategy<Value = StatementToken> {
    prop_oneof![
        Just(StatementToken::BlockClose),
        prop_oneof![
            Just(ControlKind::If),
            Just(ControlKind::Else),
            Just(ControlKind::ElseIf),
            Just(ControlKind::Switch),
            Just(ControlKind::While),
            Just(ControlKind::Do),
            Just(ControlKind::For),
            Just(ControlKind::Try),
            Just(ControlKind::Catch),
            Just(ControlKind::Finally),
            Just(ControlKind::Synchronized),
        ]
        .prop_map(StatementToken::ControlOpen),
        prop_oneof![
            Just(SimpleKind::Break),
            Just(SimpleKind::Continue),
            Just(SimpleKind::Return),
            Just(SimpleKind::Throw),
        ]
        .prop_map(StatementToken::SimpleControl),
        "[a-z][a-zA-Z0-9_$]{0,10}(\\.[a-zA-Z][a-zA-Z0-9_$]{0,8})?"
            .prop_filter("avoid keyword-shaped call names", |s| {
                !matches!(s.as_str(), "break" | "continue" | "return" | "throw")
            })
            .prop_map(StatementToken::MethodCall),
    ]
}

/// Small shared alphabet so sequences actually collide.
fn pool_token() -> impl Strategy<Value = StatementToken> {
    prop_oneof![
        Just(StatementToken::BlockClose),
        Just(StatementToken::ControlOpen(ControlKind::If)),
        Just(StatementToken::ControlOpen(ControlKind::For)),
        Just(StatementToken::SimpleControl(SimpleKind::Break)),
        Just(StatementToken::MethodCall("addParameter".into())),
        Just(StatementToken::MethodCall("findValue".into())),
    ]
}

fn doc_strategy() -> impl Strategy<Value = Vec<StatementToken>> {
    proptest::collection::vec(pool_token(), 0..24)
}

fn query_strategy() -> impl Strategy<Value = QuerySequence> {
    proptest::collection::vec(pool_token(), 1..5)
        .prop_map(|terms| QuerySequence::new(terms).unwrap())
}

proptest! {
    #[test]
    fn similarities_stay_in_unit_interval(doc in doc_strategy(), q in query_strategy()) {
        let dsrm = simcore::sim_dsrm(&doc, &q);
        prop_assert!((0.0..=1.0).contains(&dsrm.similarity));
        let dice = simcore::sim_dice(&doc, &q);
        prop_assert!((0.0..=1.0).contains(&dice.similarity));

        let model = simcore::TfIdfModel::from_documents([doc.as_slice(), q.terms()]);
        let vsm = simcore::sim_vsm(
            &simcore::term_counts(&doc),
            &simcore::term_counts(q.terms()),
            &model,
        );
        prop_assert!((0.0..=1.0).contains(&(vsm + 1e-12)));
        prop_assert!(vsm <= 1.0 + 1e-12);
    }

    #[test]
    fn pattern_family_sizes(q in query_strategy()) {
        let n = q.len();
        let mut total = 0usize;
        for r in 0..n {
            let patterns = simcore::sqc_comb(&q, r).unwrap();
            prop_assert_eq!(patterns.len(), binomial(n, r));
            total += patterns.len();
        }
        prop_assert_eq!(total, (1usize << n) - 1);
    }

    #[test]
    fn consumption_is_conserved(doc in doc_strategy(), q in query_strategy()) {
        let score = simcore::sim_dsrm(&doc, &q);
        // Every counted unit consumes one slot of the work sequence.
        prop_assert!(score.exact_count + score.partial_count <= doc.len().max(q.len()));
    }

    #[test]
    fn exact_count_divisible_by_pattern_length(doc in doc_strategy(), q in query_strategy()) {
        let score = simcore::sim_dsrm(&doc, &q);
        prop_assert_eq!(score.exact_count % q.len(), 0);
    }

    #[test]
    fn self_similarity_is_one(terms in proptest::collection::vec(pool_token(), 1..12)) {
        let q = QuerySequence::new(terms.clone()).unwrap();
        let score = simcore::sim_dsrm(&terms, &q);
        prop_assert_eq!(score.similarity, 1.0);
        prop_assert_eq!(score.partial_count, 0);
    }

    #[test]
    fn subset_chain_holds(doc in doc_strategy(), q in query_strategy()) {
        let dsrm = simcore::sim_dsrm(&doc, &q);
        let dice = simcore::sim_dice(&doc, &q);
        if dsrm.similarity > 0.0 {
            prop_assert!(dice.similarity > 0.0);
        }
        if dice.similarity > 0.0 {
            let shares = simcore::distinct_terms(&q).iter().any(|t| doc.contains(t));
            prop_assert!(shares);
        }
    }

    #[test]
    fn dice_closed_form_matches_oracle(doc in doc_strategy(), q in query_strategy()) {
        let score = simcore::sim_dice(&doc, &q);
        let distinct = simcore::distinct_terms(&q);
        let counts_map = simcore::query_term_counts(&doc, distinct.iter().copied());
        let counts: Vec<usize> = distinct.iter().map(|t| counts_map[*t]).collect();
        let (sim, exact, partial) = common::oracle_dice(&counts);
        prop_assert_eq!((score.similarity, score.exact_count, score.partial_count), (sim, exact, partial));
        let total: usize = counts.iter().sum();
        prop_assert_eq!(score.exact_count + score.partial_count, total);
    }

    #[test]
    fn dsrm_matches_transcribed_oracle(
        doc in proptest::collection::vec(0u8..4, 0..10),
        query in proptest::collection::vec(0u8..4, 1..5),
    ) {
        let to_tokens = |syms: &[u8]| -> Vec<StatementToken> {
            syms.iter().map(|s| StatementToken::MethodCall(format!("s{s}"))).collect()
        };
        let q = QuerySequence::new(to_tokens(&query)).unwrap();
        let score = simcore::sim_dsrm(&to_tokens(&doc), &q);
        let (sim, exact, partial) = common::oracle_dsrm(&doc, &query);
        prop_assert_eq!((score.similarity, score.exact_count, score.partial_count), (sim, exact, partial));
    }

    #[test]
    fn cosine_is_symmetric(
        a in proptest::collection::hash_map("[a-d]", 0.0f64..8.0, 0..5),
        b in proptest::collection::hash_map("[a-d]", 0.0f64..8.0, 0..5),
    ) {
        let to_vec = |m: HashMap<String, f64>| -> std::collections::BTreeMap<StatementToken, f64> {
            m.into_iter().map(|(k, v)| (StatementToken::MethodCall(k), v)).collect()
        };
        let va = to_vec(a);
        let vb = to_vec(b);
        let ab = simcore::cosine(&va, &vb);
        let ba = simcore::cosine(&vb, &va);
        prop_assert!((ab - ba).abs() < 1e-12);
    }

    #[test]
    fn canonical_text_round_trips(tok in token_strategy()) {
        let reparsed = parse_term(&tok.canonical_text()).unwrap();
        prop_assert_eq!(reparsed, tok);
    }

    #[test]
    fn store_round_trips_and_resaves_byte_identically(
        methods in proptest::collection::vec(
            (
                "[A-Z][a-z]{0,6}",
                1u32..500,
                proptest::collection::vec(pool_token(), 0..12),
            ),
            0..12,
        ),
    ) {
        let methods: Vec<MethodStructure> = methods
            .into_iter()
            .enumerate()
            .map(|(i, (class, ls, stmts))| MethodStructure {
                method_id: format!("{class}::void m{i}()"),
                file: format!("{class}.java"),
                line_start: ls,
                line_end: ls + stmts.len() as u32,
                statements: stmts,
                code_lines: 3,
            })
            .collect();
        let store = CorpusStore::new(methods, "/root", "2015-06-01T00:00:00Z");
        let text = corpus::to_string(&store);
        let loaded = corpus::from_str(&text, Path::new("p.jsonl")).unwrap();
        prop_assert_eq!(&loaded, &store);
        prop_assert_eq!(corpus::to_string(&loaded), text);
    }
}

fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut result = 1usize;
    for i in 0..r {
        result = result * (n - i) / (i + 1);
    }
    result
}

/// A 1,000-method synthetic store survives save/load/save byte-identically.
#[test]
fn thousand_method_store_round_trip() {
    use rand::prelude::*;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    let pool = [
        StatementToken::BlockClose,
        StatementToken::ControlOpen(ControlKind::If),
        StatementToken::MethodCall("findValue".into()),
        StatementToken::MethodCall("Logger.debug".into()),
        StatementToken::SimpleControl(SimpleKind::Return),
    ];
    let methods: Vec<MethodStructure> = (0..1000)
        .map(|i| {
            let len = rng.gen_range(1..=25);
            let statements: Vec<StatementToken> = (0..len)
                .map(|_| pool.choose(&mut rng).unwrap().clone())
                .collect();
            MethodStructure {
                method_id: format!("C{}::void m{}()", i % 37, i),
                file: format!("src/C{}.java", i % 37),
                line_start: (i as u32 % 37) * 50 + 1,
                line_end: (i as u32 % 37) * 50 + len as u32,
                statements,
                code_lines: len as u32,
            }
        })
        .collect();
    let store = CorpusStore::new(methods, "/synthetic", "2015-06-01T00:00:00Z");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("structures.jsonl");
    corpus::save(&store, &path).unwrap();
    let first_bytes = std::fs::read(&path).unwrap();
    let loaded = corpus::load(&path).unwrap();
    assert_eq!(loaded, store);
    let resaved = dir.path().join("resaved.jsonl");
    corpus::save(&loaded, &resaved).unwrap();
    let second_bytes = std::fs::read(&resaved).unwrap();
    assert_eq!(first_bytes, second_bytes);
}

/// Every token the extractor emits over a generated corpus parses back to an
/// equal token through the query-term grammar.
#[test]
fn extracted_tokens_round_trip_through_the_term_grammar() {
    let (units, _) = common::generated_corpus(0xf00d, 40);
    for unit in &units {
        let extraction = struct_seek::extractor::extract_methods(unit);
        for m in &extraction.methods {
            for tok in &m.statements {
                let text = tok.canonical_text();
                let reparsed = parse_term(&text)
                    .unwrap_or_else(|e| panic!("token {text:?} failed to reparse: {e}"));
                assert_eq!(&reparsed, tok, "{} in {}", text, m.method_id);
            }
        }
    }
}

/// Ranking over the immutable store is a pure function: repeated parallel
/// scoring yields identical row order.
#[test]
fn rank_is_permutation_stable() {
    let (units, _) = common::generated_corpus(0xbeef, 20);
    let extraction = struct_seek::extractor::extract_units(&units);
    let store = CorpusStore::new(extraction.methods, "gen", "t");
    let q = QuerySequence::new(vec![
        StatementToken::ControlOpen(ControlKind::If),
        StatementToken::MethodCall("Logger.debug".into()),
        StatementToken::BlockClose,
    ])
    .unwrap();
    let tfidf = corpus::build_tfidf(&store).unwrap();
    for model in struct_seek::corpus::Model::ALL {
        let tfidf_ref = (model == struct_seek::corpus::Model::Vsm).then_some(&tfidf);
        let first = corpus::rank(&store, model, &q, usize::MAX, 0.0, tfidf_ref);
        for _ in 0..3 {
            let again = corpus::rank(&store, model, &q, usize::MAX, 0.0, tfidf_ref);
            assert_eq!(first, again, "model {model}");
        }
    }
}
