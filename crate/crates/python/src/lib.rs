//! Python bindings. Structures are passed as JSON file text and results come
//! back as plain Python objects.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use serde_json::{json, Value};

use ::pairspec::classify_pair;
use ::pairspec::congruence::{enumerate_congruences, CongruenceError, DEFAULT_MAX_CONGRUENCES};
use ::pairspec::constructions::{catalog, DEFAULT_CARRIER_CAP};
use ::pairspec::io::{
    labelled_check_report, labelled_congruence, labelled_spectrum, load_structure,
    serialize_pair_file, Loaded, PairFile,
};
use ::pairspec::spectrum::spectrum_report_for;
use ::pairspec::verify::{run_all, run_check, summary, Subject, VerifyError, CHECK_IDS};

create_exception!(pairspec, CapExceeded, PyException);
create_exception!(pairspec, UnknownCheck, PyException);

#[derive(Debug, PartialEq)]
enum Error {
    Invalid(String),
    Cap(String),
    UnknownCheck(String),
}

impl From<Error> for PyErr {
    fn from(e: Error) -> Self {
        match e {
            Error::Invalid(m) => PyValueError::new_err(m),
            Error::Cap(m) => CapExceeded::new_err(m),
            Error::UnknownCheck(m) => UnknownCheck::new_err(m),
        }
    }
}

fn load(text: &str) -> Result<Loaded, Error> {
    load_structure(text, DEFAULT_CARRIER_CAP).map_err(|e| Error::Invalid(e.to_string()))
}

fn cap_error(cap: usize, found: usize) -> Error {
    Error::Cap(format!("more than {cap} congruences (reached {found})"))
}

fn classify_value(text: &str) -> Result<Value, Error> {
    let l = load(text)?;
    let mut v = serde_json::to_value(classify_pair(&l.pair)).expect("classification serializes");
    v["name"] = json!(l.pair.name());
    Ok(v)
}

fn congruences_value(text: &str, cap: usize) -> Result<Value, Error> {
    let l = load(text)?;
    let lattice = enumerate_congruences(&l.pair, cap).map_err(|e| match e {
        CongruenceError::CapExceeded { cap, found } => cap_error(cap, found),
        e => Error::Invalid(e.to_string()),
    })?;
    Ok(json!(lattice
        .congruences()
        .iter()
        .map(|c| labelled_congruence(&l.pair, c))
        .collect::<Vec<_>>()))
}

fn spectrum_value(text: &str, cap: usize) -> Result<Value, Error> {
    let l = load(text)?;
    let lattice = enumerate_congruences(&l.pair, cap).map_err(|e| match e {
        CongruenceError::CapExceeded { cap, found } => cap_error(cap, found),
        e => Error::Invalid(e.to_string()),
    })?;
    Ok(labelled_spectrum(
        &l.pair,
        &spectrum_report_for(&l.pair, &lattice, cap),
    ))
}

fn verify_value(text: &str, check: Option<&str>, cap: usize) -> Result<Value, Error> {
    let l = load(text)?;
    let mut s = Subject::new(l.pair.clone()).with_cap(cap);
    if let Some(h) = l.hyper {
        s = s.with_hyper(h);
    }
    let results = match check {
        Some(id) => vec![run_check(&s, id)],
        None => run_all(&s),
    };
    let mut reports = Vec::new();
    for r in results {
        match r {
            Ok(r) => reports.push(r),
            Err(VerifyError::UnknownCheckId(id)) => return Err(Error::UnknownCheck(id)),
            Err(VerifyError::CapExceeded { cap, found }) => return Err(cap_error(cap, found)),
        }
    }
    let (passed, failed, skipped) = summary(&reports);
    Ok(json!({
        "reports": reports.iter().map(|r| labelled_check_report(&l.pair, r)).collect::<Vec<_>>(),
        "summary": { "passed": passed, "failed": failed, "skipped": skipped },
    }))
}

/// Hands a JSON value to Python's `json` module.
fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (v.to_string(),))?.unbind())
}

fn cap_or_default(max: Option<usize>) -> usize {
    max.unwrap_or(DEFAULT_MAX_CONGRUENCES)
}

/// Validates a structure file; returns its name and size.
#[pyfunction]
fn validate(text: &str) -> PyResult<(String, usize)> {
    let l = load(text)?;
    Ok((l.pair.name().to_string(), l.pair.size()))
}

#[pyfunction]
fn classify(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    to_py(py, &classify_value(text)?)
}

/// Every congruence as a list of label blocks.
#[pyfunction]
#[pyo3(signature = (text, max=None))]
fn congruences(py: Python<'_>, text: &str, max: Option<usize>) -> PyResult<Py<PyAny>> {
    to_py(py, &congruences_value(text, cap_or_default(max))?)
}

#[pyfunction]
#[pyo3(signature = (text, max=None))]
fn spectrum(py: Python<'_>, text: &str, max: Option<usize>) -> PyResult<Py<PyAny>> {
    to_py(py, &spectrum_value(text, cap_or_default(max))?)
}

/// Runs one check, or all of them when `check` is omitted.
#[pyfunction]
#[pyo3(signature = (text, check=None, max=None))]
fn verify(
    py: Python<'_>,
    text: &str,
    check: Option<&str>,
    max: Option<usize>,
) -> PyResult<Py<PyAny>> {
    to_py(py, &verify_value(text, check, cap_or_default(max))?)
}

#[pyfunction]
fn check_ids() -> Vec<&'static str> {
    CHECK_IDS.to_vec()
}

/// Built-in pairs as `(name, file text)`.
#[pyfunction]
fn catalog_files() -> Vec<(String, String)> {
    catalog()
        .iter()
        .map(|p| {
            (
                p.name().to_string(),
                serialize_pair_file(&PairFile::from_pair(p, None)),
            )
        })
        .collect()
}

#[pymodule]
#[pyo3(name = "pairspec")]
pub fn pairspec_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(congruences, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(check_ids, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_files, m)?)?;
    m.add("CapExceeded", m.py().get_type::<CapExceeded>())?;
    m.add("UnknownCheck", m.py().get_type::<UnknownCheck>())?;
    Ok(())
}
