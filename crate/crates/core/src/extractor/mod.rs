//! Lexical extraction of per-method statement sequences from Java source.
//!
//! Masking runs first (comments and literal interiors can never produce
//! tokens), then a structural scan partitions each file into methods and
//! emits the ordered statement tokens of each body.

use std::fmt;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;

mod env;
mod lexer;
mod mask;
mod parser;

pub use env::{resolve_receiver, TypeEnvironment};
pub use mask::{strip_noise, MaskWarning, MaskedSource};

/// One source file: path text and unmodified contents.
#[derive(Debug, Clone)]
pub struct SourceUnit {
    pub path: String,
    pub text: String,
}

impl SourceUnit {
    pub fn new(path: impl Into<String>, text: impl Into<String>) -> Self {
        SourceUnit {
            path: path.into(),
            text: text.into(),
        }
    }
}

/// A method's identity and its ordered statement-token sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodStructure {
    /// `Class::signature`, or `Class:Anon$k:signature` for methods of the
    /// k-th anonymous class body in the file.
    pub method_id: String,
    pub file: String,
    pub line_start: u32,
    pub line_end: u32,
    pub statements: Vec<crate::token::StatementToken>,
    /// Non-blank source lines in the method span.
    pub code_lines: u32,
}

/// One extraction event, reported as `WARN <path>:<line>: <message>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub path: String,
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WARN {}:{}: {}", self.path, self.line, self.message)
    }
}

/// Extraction result for one or more source units.
#[derive(Debug, Default)]
pub struct Extraction {
    pub methods: Vec<MethodStructure>,
    pub diagnostics: Vec<Diagnostic>,
    /// Named class/interface/enum declarations seen.
    pub class_count: usize,
}

/// Extracts every method body of one source unit, in (line) order.
pub fn extract_methods(unit: &SourceUnit) -> Extraction {
    let masked = strip_noise(&unit.text);
    let nonblank: Vec<bool> = unit
        .text
        .lines()
        .map(|l| l.chars().any(|c| !c.is_whitespace()))
        .collect();
    let mut diagnostics: Vec<Diagnostic> = masked
        .warnings
        .iter()
        .map(|w| Diagnostic {
            path: unit.path.clone(),
            line: w.line,
            message: w.message.clone(),
        })
        .collect();
    let parsed = parser::parse_file(&unit.path, &masked.text, &nonblank);
    diagnostics.extend(parsed.diagnostics);
    Extraction {
        methods: parsed.methods,
        diagnostics,
        class_count: parsed.class_count,
    }
}

/// Extracts a batch of units in parallel; the merged output is ordered by
/// (path, line_start), identical to a sequential pass.
pub fn extract_units(units: &[SourceUnit]) -> Extraction {
    let mut parts: Vec<Extraction> = units.par_iter().map(extract_methods).collect();
    let mut merged = Extraction::default();
    for part in &mut parts {
        merged.methods.append(&mut part.methods);
        merged.diagnostics.append(&mut part.diagnostics);
        merged.class_count += part.class_count;
    }
    merged
        .methods
        .sort_by(|a, b| (&a.file, a.line_start).cmp(&(&b.file, b.line_start)));
    merged
}

/// Corpus-level file metrics.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FileMetrics {
    pub files: usize,
    pub classes: usize,
    pub methods: usize,
    pub lines_of_code: usize,
    pub comment_lines: usize,
    pub total_lines: usize,
}

/// Partitions each file's lines into code / comment / blank (a line that is
/// both code and comment counts as code) and counts files, named classes,
/// and extracted methods.
pub fn compute_metrics(units: &[SourceUnit]) -> FileMetrics {
    let mut metrics = FileMetrics {
        files: units.len(),
        ..FileMetrics::default()
    };
    for unit in units {
        let masked = strip_noise(&unit.text);
        let mut comment_flags = vec![false; unit.text.lines().count()];
        for &line in &masked.comment_lines {
            if line < comment_flags.len() {
                comment_flags[line] = true;
            }
        }
        for (i, line) in masked.text.lines().enumerate() {
            let code = line.chars().any(|c| !c.is_whitespace());
            if code {
                metrics.lines_of_code += 1;
            } else if comment_flags.get(i).copied().unwrap_or(false) {
                metrics.comment_lines += 1;
            }
            metrics.total_lines += 1;
        }
        let extraction = extract_methods(unit);
        metrics.classes += extraction.class_count;
        metrics.methods += extraction.methods.len();
    }
    metrics
}

/// Walks a directory tree collecting files with one of the given extensions
/// (no leading dot). Unreadable files become diagnostics; an unreadable root
/// is an error.
pub fn collect_units(
    root: &Path,
    extensions: &[String],
) -> Result<(Vec<SourceUnit>, Vec<Diagnostic>), Error> {
    if !root.exists() {
        return Err(Error::io(
            root,
            std::io::Error::new(std::io::ErrorKind::NotFound, "no such directory"),
        ));
    }
    let mut units = Vec::new();
    let mut diagnostics = Vec::new();
    let walker = walkdir::WalkDir::new(root).sort_by_file_name();
    for entry in walker {
        let entry = match entry {
            Ok(e) => e,
            Err(e) => {
                let path = e
                    .path()
                    .map(|p| p.display().to_string())
                    .unwrap_or_default();
                diagnostics.push(Diagnostic {
                    path,
                    line: 0,
                    message: format!("unreadable: {e}"),
                });
                continue;
            }
        };
        if !entry.file_type().is_file() {
            continue;
        }
        let ext = entry
            .path()
            .extension()
            .and_then(|e| e.to_str())
            .unwrap_or("");
        if !extensions.iter().any(|want| want == ext) {
            continue;
        }
        match fs::read_to_string(entry.path()) {
            Ok(text) => units.push(SourceUnit::new(entry.path().display().to_string(), text)),
            Err(e) => diagnostics.push(Diagnostic {
                path: entry.path().display().to_string(),
                line: 0,
                message: format!("unreadable: {e}"),
            }),
        }
    }
    units.sort_by(|a, b| a.path.cmp(&b.path));
    Ok((units, diagnostics))
}
