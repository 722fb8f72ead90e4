//! Corpus persistence and retrieval: the structures store, the tf-idf model
//! built from it, ranked retrieval under any of the three models, and the
//! retrieval-count comparison report.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::extractor::MethodStructure;
use crate::simcore::{self, ModelScore, QuerySequence, TfIdfModel};
use crate::token::{parse_term, StatementToken};

pub const FORMAT_VERSION: &str = "struct-seek/1";

/// The persisted set of method structures; the retrieval corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusStore {
    methods: Vec<MethodStructure>,
    pub source_root: String,
    pub created_at: String,
}

impl CorpusStore {
    /// Builds a store: orders methods by (file, line_start) and uniquifies
    /// colliding method ids with `#2`, `#3`, ... suffixes in file order.
    pub fn new(
        mut methods: Vec<MethodStructure>,
        source_root: impl Into<String>,
        created_at: impl Into<String>,
    ) -> Self {
        methods.sort_by(|a, b| (&a.file, a.line_start).cmp(&(&b.file, b.line_start)));
        let mut seen: HashMap<String, usize> = HashMap::new();
        for method in &mut methods {
            let n = seen.entry(method.method_id.clone()).or_insert(0);
            *n += 1;
            if *n > 1 {
                method.method_id = format!("{}#{}", method.method_id, n);
            }
        }
        CorpusStore {
            methods,
            source_root: source_root.into(),
            created_at: created_at.into(),
        }
    }

    pub fn methods(&self) -> &[MethodStructure] {
        &self.methods
    }

    pub fn len(&self) -> usize {
        self.methods.len()
    }

    pub fn is_empty(&self) -> bool {
        self.methods.is_empty()
    }

    /// Distinct statement tokens across the whole store.
    pub fn distinct_terms(&self) -> usize {
        let mut terms: std::collections::HashSet<&StatementToken> =
            std::collections::HashSet::new();
        for m in &self.methods {
            terms.extend(m.statements.iter());
        }
        terms.len()
    }
}

#[derive(Serialize, Deserialize)]
struct HeaderRecord {
    format: String,
    root: String,
    created: String,
}

#[derive(Serialize, Deserialize)]
struct MethodRecord {
    id: String,
    file: String,
    ls: u32,
    le: u32,
    cl: u32,
    stmts: Vec<String>,
}

/// Serializes the store in the line-delimited structures format.
pub fn to_string(store: &CorpusStore) -> String {
    let header = HeaderRecord {
        format: FORMAT_VERSION.to_string(),
        root: store.source_root.clone(),
        created: store.created_at.clone(),
    };
    let mut out = serde_json::to_string(&header).expect("header serializes");
    out.push('\n');
    for m in &store.methods {
        let record = MethodRecord {
            id: m.method_id.clone(),
            file: m.file.clone(),
            ls: m.line_start,
            le: m.line_end,
            cl: m.code_lines,
            stmts: m.statements.iter().map(|t| t.canonical_text()).collect(),
        };
        out.push_str(&serde_json::to_string(&record).expect("record serializes"));
        out.push('\n');
    }
    out
}

pub fn save(store: &CorpusStore, path: &Path) -> Result<(), Error> {
    let mut file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(to_string(store).as_bytes())
        .map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// Parses the structures format; the first line must carry the expected
/// format version.
pub fn from_str(text: &str, path: &Path) -> Result<CorpusStore, Error> {
    let mut lines = text.lines().enumerate();
    let Some((_, header_line)) = lines.next() else {
        return Err(Error::MalformedRecord {
            path: path.to_path_buf(),
            line: 1,
            message: "missing header record".to_string(),
        });
    };
    let header: HeaderRecord =
        serde_json::from_str(header_line).map_err(|e| Error::MalformedRecord {
            path: path.to_path_buf(),
            line: 1,
            message: e.to_string(),
        })?;
    if header.format != FORMAT_VERSION {
        return Err(Error::VersionMismatch {
            found: header.format,
            expected: FORMAT_VERSION.to_string(),
        });
    }
    let mut methods = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let line_no = idx + 1;
        let record: MethodRecord =
            serde_json::from_str(line).map_err(|e| Error::MalformedRecord {
                path: path.to_path_buf(),
                line: line_no,
                message: e.to_string(),
            })?;
        let mut statements = Vec::with_capacity(record.stmts.len());
        for stmt in &record.stmts {
            let token = parse_term(stmt).map_err(|e| Error::MalformedRecord {
                path: path.to_path_buf(),
                line: line_no,
                message: e.to_string(),
            })?;
            statements.push(token);
        }
        methods.push(MethodStructure {
            method_id: record.id,
            file: record.file,
            line_start: record.ls,
            line_end: record.le,
            statements,
            code_lines: record.cl,
        });
    }
    Ok(CorpusStore {
        methods,
        source_root: header.root,
        created_at: header.created,
    })
}

pub fn load(path: &Path) -> Result<CorpusStore, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    from_str(&text, path)
}

/// Document count, document frequencies, and vocabulary of the store.
pub fn build_tfidf(store: &CorpusStore) -> Result<TfIdfModel, Error> {
    if store.is_empty() {
        return Err(Error::EmptyStore);
    }
    Ok(TfIdfModel::from_documents(
        store.methods.iter().map(|m| m.statements.as_slice()),
    ))
}

/// The retrieval model selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Dsrm,
    Dice,
    Vsm,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::Dsrm, Model::Dice, Model::Vsm];

    pub fn name(self) -> &'static str {
        match self {
            Model::Dsrm => "dsrm",
            Model::Dice => "dice",
            Model::Vsm => "vsm",
        }
    }

    /// Matching passes implied by an n-term query: every derived pattern for
    /// the sequence models, one vectorized pass for the VSM.
    pub fn pass_count(self, query_len: usize) -> u64 {
        match self {
            Model::Dsrm | Model::Dice => (1u64 << query_len) - 1,
            Model::Vsm => 1,
        }
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dsrm" => Ok(Model::Dsrm),
            "dice" => Ok(Model::Dice),
            "vsm" => Ok(Model::Vsm),
            other => Err(Error::UnknownModel(other.to_string())),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One row of a ranked retrieval: exact/partial counts are absent for the
/// vector space model.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedResult {
    pub rank: usize,
    pub method_id: String,
    pub similarity: f64,
    pub exact: Option<usize>,
    pub partial: Option<usize>,
    pub code_lines: u32,
}

fn score_all(
    store: &CorpusStore,
    model: Model,
    q: &QuerySequence,
    tfidf: Option<&TfIdfModel>,
) -> Vec<(usize, f64, Option<usize>, Option<usize>)> {
    match model {
        Model::Dsrm | Model::Dice => store
            .methods
            .par_iter()
            .enumerate()
            .map(|(i, m)| {
                let score: ModelScore = match model {
                    Model::Dsrm => simcore::sim_dsrm(&m.statements, q),
                    _ => simcore::sim_dice(&m.statements, q),
                };
                (
                    i,
                    score.similarity,
                    Some(score.exact_count),
                    Some(score.partial_count),
                )
            })
            .collect(),
        Model::Vsm => {
            let tfidf = tfidf.expect("tf-idf model required for vsm scoring");
            let query_counts = simcore::term_counts(q.terms());
            let distinct = simcore::distinct_terms(q);
            store
                .methods
                .par_iter()
                .enumerate()
                .filter_map(|(i, m)| {
                    // Retrieved set: shares at least one term with the query,
                    // even when the cosine is 0.
                    let counts =
                        simcore::query_term_counts(&m.statements, distinct.iter().copied());
                    if counts.values().all(|&c| c == 0) {
                        return None;
                    }
                    let doc_counts = simcore::term_counts(&m.statements);
                    let sim = simcore::sim_vsm(&doc_counts, &query_counts, tfidf);
                    Some((i, sim, None, None))
                })
                .collect()
        }
    }
}

/// Scores every method under the chosen model, sorts by similarity descending
/// with ties broken by method id, filters by `min_sim` (inclusive), and
/// truncates to `top_k`.
pub fn rank(
    store: &CorpusStore,
    model: Model,
    q: &QuerySequence,
    top_k: usize,
    min_sim: f64,
    tfidf: Option<&TfIdfModel>,
) -> Vec<RankedResult> {
    let mut scored = score_all(store, model, q, tfidf);
    scored.sort_by(|a, b| {
        b.1.total_cmp(&a.1).then_with(|| {
            store.methods[a.0]
                .method_id
                .cmp(&store.methods[b.0].method_id)
        })
    });
    scored
        .into_iter()
        .filter(|(_, sim, _, _)| *sim >= min_sim)
        .take(top_k)
        .enumerate()
        .map(|(i, (idx, sim, exact, partial))| {
            let m = &store.methods[idx];
            RankedResult {
                rank: i + 1,
                method_id: m.method_id.clone(),
                similarity: sim,
                exact,
                partial,
                code_lines: m.code_lines,
            }
        })
        .collect()
}

/// Cosine similarity of every method against the query, by store order.
fn all_cosines(store: &CorpusStore, q: &QuerySequence, tfidf: &TfIdfModel) -> Vec<f64> {
    let query_counts = simcore::term_counts(q.terms());
    store
        .methods
        .par_iter()
        .map(|m| simcore::sim_vsm(&simcore::term_counts(&m.statements), &query_counts, tfidf))
        .collect()
}

/// The boundary method's cosine: the minimum cosine among methods whose DSRM
/// similarity is greater than 0; absent when no method is DSRM-positive.
pub fn boundary_cosine(store: &CorpusStore, tfidf: &TfIdfModel, q: &QuerySequence) -> Option<f64> {
    let cosines = all_cosines(store, q, tfidf);
    store
        .methods
        .par_iter()
        .enumerate()
        .filter(|(_, m)| simcore::sim_dsrm(&m.statements, q).similarity > 0.0)
        .map(|(i, _)| cosines[i])
        .min_by(|a, b| a.total_cmp(b))
}

/// Retrieved-method counts per model plus the improvement percentages.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub n_dsrm: usize,
    pub n_dice: usize,
    pub n_vsm: usize,
    /// (n_dice - n_dsrm) / n_dice, as a percentage; absent when n_dice = 0.
    pub improvement_vs_dice: Option<f64>,
    pub improvement_vs_vsm: Option<f64>,
    pub boundary_cosine: Option<f64>,
}

/// Percentage of improvement: (reference - dsrm) / reference.
pub fn improvement_percent(reference: usize, dsrm: usize) -> Option<f64> {
    if reference == 0 {
        return None;
    }
    Some((reference as f64 - dsrm as f64) / reference as f64 * 100.0)
}

/// Counts DSRM-, Dice-, and VSM-retrieved methods for one query. The VSM
/// count takes every term-sharing method at or above the boundary cosine;
/// with no boundary it falls back to the strictly positive cosines.
pub fn compare(
    store: &CorpusStore,
    tfidf: &TfIdfModel,
    q: &QuerySequence,
) -> Result<ComparisonReport, Error> {
    if store.is_empty() {
        return Err(Error::EmptyStore);
    }
    let n_dsrm = store
        .methods
        .par_iter()
        .filter(|m| simcore::sim_dsrm(&m.statements, q).similarity > 0.0)
        .count();
    let n_dice = store
        .methods
        .par_iter()
        .filter(|m| simcore::sim_dice(&m.statements, q).similarity > 0.0)
        .count();

    let distinct = simcore::distinct_terms(q);
    let cosines = all_cosines(store, q, tfidf);
    let sharers: Vec<usize> = store
        .methods
        .iter()
        .enumerate()
        .filter(|(_, m)| {
            simcore::query_term_counts(&m.statements, distinct.iter().copied())
                .values()
                .any(|&c| c > 0)
        })
        .map(|(i, _)| i)
        .collect();
    let boundary = boundary_cosine(store, tfidf, q);
    let n_vsm = match boundary {
        Some(b) => sharers.iter().filter(|&&i| cosines[i] >= b).count(),
        None => sharers.iter().filter(|&&i| cosines[i] > 0.0).count(),
    };

    Ok(ComparisonReport {
        n_dsrm,
        n_dice,
        n_vsm,
        improvement_vs_dice: improvement_percent(n_dice, n_dsrm),
        improvement_vs_vsm: improvement_percent(n_vsm, n_dsrm),
        boundary_cosine: boundary,
    })
}
