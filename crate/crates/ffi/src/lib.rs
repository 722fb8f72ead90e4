//! C ABI for the struct-seek retrieval library.
//!
//! The API hands out opaque handles (`SskStore`, `SskResults`) that must be
//! released with their matching `_free` function. Every fallible call
//! returns an `SskStatus`; on failure a description is available from
//! `ssk_last_error_message` until the next failing call on the same thread.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::path::Path;
use std::ptr;
use std::sync::OnceLock;

use struct_seek::cli::parse_query;
use struct_seek::corpus::{self, CorpusStore, Model, RankedResult};
use struct_seek::error::Error;
use struct_seek::extractor;
use struct_seek::simcore::TfIdfModel;

/// Call outcome. `Ok` is zero; everything else is an error.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SskStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    IoError = 3,
    FormatError = 4,
    QuerySyntaxError = 5,
    UnknownModel = 6,
    IndexOutOfRange = 7,
    EmptyStore = 8,
}

/// Retrieval model selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SskModel {
    Dsrm = 0,
    Dice = 1,
    Vsm = 2,
}

impl From<SskModel> for Model {
    fn from(m: SskModel) -> Model {
        match m {
            SskModel::Dsrm => Model::Dsrm,
            SskModel::Dice => Model::Dice,
            SskModel::Vsm => Model::Vsm,
        }
    }
}

/// One ranked row. `has_counts` is false for the vector space model, whose
/// rows carry no exact/partial match counts.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SskRow {
    pub rank: u64,
    pub similarity: f64,
    pub has_counts: bool,
    pub exact: u64,
    pub partial: u64,
    pub code_lines: u32,
}

/// Retrieved-method counts and improvement percentages for one query.
/// Each optional value pairs with a `has_` flag.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SskComparison {
    pub n_dsrm: u64,
    pub n_dice: u64,
    pub n_vsm: u64,
    pub has_improvement_vs_dice: bool,
    pub improvement_vs_dice: f64,
    pub has_improvement_vs_vsm: bool,
    pub improvement_vs_vsm: f64,
    pub has_boundary_cosine: bool,
    pub boundary_cosine: f64,
}

/// Opaque corpus handle.
pub struct SskStore {
    store: CorpusStore,
    tfidf: OnceLock<TfIdfModel>,
}

impl SskStore {
    fn tfidf(&self) -> Result<&TfIdfModel, Error> {
        if self.store.is_empty() {
            return Err(Error::EmptyStore);
        }
        if let Some(model) = self.tfidf.get() {
            return Ok(model);
        }
        let built = corpus::build_tfidf(&self.store)?;
        Ok(self.tfidf.get_or_init(|| built))
    }
}

/// Opaque result-set handle.
pub struct SskResults {
    rows: Vec<(CString, RankedResult)>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let sanitized: String = message.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> SskStatus {
    match err {
        Error::Io { .. } => SskStatus::IoError,
        Error::MalformedRecord { .. } | Error::VersionMismatch { .. } => SskStatus::FormatError,
        Error::QuerySyntax(_) | Error::EmptyQuery => SskStatus::QuerySyntaxError,
        Error::UnknownModel(_) => SskStatus::UnknownModel,
        Error::ArityOutOfRange { .. } => SskStatus::IndexOutOfRange,
        Error::EmptyStore => SskStatus::EmptyStore,
    }
}

fn fail(err: &Error) -> SskStatus {
    set_last_error(&err.to_string());
    status_of(err)
}

unsafe fn cstr_arg<'a>(s: *const c_char) -> Result<&'a str, SskStatus> {
    if s.is_null() {
        set_last_error("null string argument");
        return Err(SskStatus::NullArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_last_error("argument is not valid UTF-8");
        SskStatus::InvalidUtf8
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ssk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Description of the last error on this thread. The pointer stays valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ssk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Extracts every `.java` file under `src_dir` into a new in-memory store.
///
/// # Safety
/// `src_dir` must be a valid NUL-terminated path and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ssk_store_extract(
    src_dir: *const c_char,
    out: *mut *mut SskStore,
) -> SskStatus {
    if out.is_null() {
        set_last_error("null output pointer");
        return SskStatus::NullArgument;
    }
    let src = match cstr_arg(src_dir) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let (units, _diags) = match extractor::collect_units(Path::new(src), &["java".to_string()]) {
        Ok(v) => v,
        Err(e) => return fail(&e),
    };
    let extraction = extractor::extract_units(&units);
    let store = CorpusStore::new(
        extraction.methods,
        src,
        chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
    );
    *out = Box::into_raw(Box::new(SskStore {
        store,
        tfidf: OnceLock::new(),
    }));
    SskStatus::Ok
}

/// Loads a structures file.
///
/// # Safety
/// `path` must be a valid NUL-terminated path and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ssk_store_load(path: *const c_char, out: *mut *mut SskStore) -> SskStatus {
    if out.is_null() {
        set_last_error("null output pointer");
        return SskStatus::NullArgument;
    }
    let path = match cstr_arg(path) {
        Ok(s) => s,
        Err(status) => return status,
    };
    match corpus::load(Path::new(path)) {
        Ok(store) => {
            *out = Box::into_raw(Box::new(SskStore {
                store,
                tfidf: OnceLock::new(),
            }));
            SskStatus::Ok
        }
        Err(e) => fail(&e),
    }
}

/// Writes the store to a structures file.
///
/// # Safety
/// `store` must be a live handle from this library; `path` a valid string.
#[no_mangle]
pub unsafe extern "C" fn ssk_store_save(store: *const SskStore, path: *const c_char) -> SskStatus {
    let Some(handle) = store.as_ref() else {
        set_last_error("null store handle");
        return SskStatus::NullArgument;
    };
    let path = match cstr_arg(path) {
        Ok(s) => s,
        Err(status) => return status,
    };
    match corpus::save(&handle.store, Path::new(path)) {
        Ok(()) => SskStatus::Ok,
        Err(e) => fail(&e),
    }
}

/// Number of methods in the store; 0 for a null handle.
///
/// # Safety
/// `store` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ssk_store_method_count(store: *const SskStore) -> usize {
    store.as_ref().map_or(0, |h| h.store.len())
}

/// Releases a store handle. Null is ignored.
///
/// # Safety
/// `store` must be null or an unreleased handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ssk_store_free(store: *mut SskStore) {
    if !store.is_null() {
        drop(Box::from_raw(store));
    }
}

/// Ranks the store against a query ("if{ -> addParameter -> }" syntax) and
/// returns a result-set handle.
///
/// # Safety
/// `store` must be a live handle, `query` a valid string, `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn ssk_rank(
    store: *const SskStore,
    model: SskModel,
    query: *const c_char,
    top_k: usize,
    min_sim: f64,
    out: *mut *mut SskResults,
) -> SskStatus {
    if out.is_null() {
        set_last_error("null output pointer");
        return SskStatus::NullArgument;
    }
    let Some(handle) = store.as_ref() else {
        set_last_error("null store handle");
        return SskStatus::NullArgument;
    };
    let query = match cstr_arg(query) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let parsed = match parse_query(query) {
        Ok(q) => q,
        Err(e) => return fail(&e),
    };
    let tfidf = if model == SskModel::Vsm {
        match handle.tfidf() {
            Ok(t) => Some(t),
            Err(e) => return fail(&e),
        }
    } else {
        None
    };
    let rows = corpus::rank(&handle.store, model.into(), &parsed, top_k, min_sim, tfidf);
    let rows = rows
        .into_iter()
        .map(|r| {
            let id = CString::new(r.method_id.replace('\0', " ")).unwrap_or_default();
            (id, r)
        })
        .collect();
    *out = Box::into_raw(Box::new(SskResults { rows }));
    SskStatus::Ok
}

/// Number of rows in a result set; 0 for a null handle.
///
/// # Safety
/// `results` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ssk_results_len(results: *const SskResults) -> usize {
    results.as_ref().map_or(0, |r| r.rows.len())
}

/// Copies the numeric fields of one row.
///
/// # Safety
/// `results` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ssk_results_row(
    results: *const SskResults,
    index: usize,
    out: *mut SskRow,
) -> SskStatus {
    let Some(set) = results.as_ref() else {
        set_last_error("null results handle");
        return SskStatus::NullArgument;
    };
    if out.is_null() {
        set_last_error("null output pointer");
        return SskStatus::NullArgument;
    }
    let Some((_, r)) = set.rows.get(index) else {
        set_last_error("row index out of range");
        return SskStatus::IndexOutOfRange;
    };
    *out = SskRow {
        rank: r.rank as u64,
        similarity: r.similarity,
        has_counts: r.exact.is_some(),
        exact: r.exact.unwrap_or(0) as u64,
        partial: r.partial.unwrap_or(0) as u64,
        code_lines: r.code_lines,
    };
    SskStatus::Ok
}

/// Method id of one row. Borrowed: valid until the result set is freed.
/// Null when the handle is null or the index is out of range.
///
/// # Safety
/// `results` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ssk_results_method_id(
    results: *const SskResults,
    index: usize,
) -> *const c_char {
    match results.as_ref().and_then(|set| set.rows.get(index)) {
        Some((id, _)) => id.as_ptr(),
        None => ptr::null(),
    }
}

/// Releases a result-set handle. Null is ignored.
///
/// # Safety
/// `results` must be null or an unreleased handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ssk_results_free(results: *mut SskResults) {
    if !results.is_null() {
        drop(Box::from_raw(results));
    }
}

/// Retrieved-method counts and improvements for one query.
///
/// # Safety
/// `store` must be a live handle, `query` a valid string, `out` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn ssk_compare(
    store: *const SskStore,
    query: *const c_char,
    out: *mut SskComparison,
) -> SskStatus {
    let Some(handle) = store.as_ref() else {
        set_last_error("null store handle");
        return SskStatus::NullArgument;
    };
    if out.is_null() {
        set_last_error("null output pointer");
        return SskStatus::NullArgument;
    }
    let query = match cstr_arg(query) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let parsed = match parse_query(query) {
        Ok(q) => q,
        Err(e) => return fail(&e),
    };
    let tfidf = match handle.tfidf() {
        Ok(t) => t,
        Err(e) => return fail(&e),
    };
    match corpus::compare(&handle.store, tfidf, &parsed) {
        Ok(report) => {
            *out = SskComparison {
                n_dsrm: report.n_dsrm as u64,
                n_dice: report.n_dice as u64,
                n_vsm: report.n_vsm as u64,
                has_improvement_vs_dice: report.improvement_vs_dice.is_some(),
                improvement_vs_dice: report.improvement_vs_dice.unwrap_or(0.0),
                has_improvement_vs_vsm: report.improvement_vs_vsm.is_some(),
                improvement_vs_vsm: report.improvement_vs_vsm.unwrap_or(0.0),
                has_boundary_cosine: report.boundary_cosine.is_some(),
                boundary_cosine: report.boundary_cosine.unwrap_or(0.0),
            };
            SskStatus::Ok
        }
        Err(e) => fail(&e),
    }
}
