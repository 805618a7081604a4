//! Python bindings: each call takes a bundled example name or a session file
//! path and returns a `Report` with the text table and the JSON report.

use std::path::Path;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use leibhom::commands::{run_command, sweep, to_pretty_json, Command, Output, Verify};
use leibhom::session::{corpus, corpus_session, parse_session, Session};

#[pyclass(get_all, frozen, skip_from_py_object)]
#[derive(Debug, Clone)]
pub struct Report {
    pub passed: bool,
    pub text: String,
    pub json: String,
}

impl From<Output> for Report {
    fn from(o: Output) -> Report {
        Report {
            passed: o.passed,
            text: o.text,
            json: to_pretty_json(&o.json),
        }
    }
}

#[pymethods]
impl Report {
    fn __repr__(&self) -> String {
        format!(
            "Report(passed={})",
            if self.passed { "True" } else { "False" }
        )
    }
}

pub fn load(session: &str) -> Result<Session, String> {
    if let Some(s) = corpus_session(session) {
        return Ok(s);
    }
    parse_session(Path::new(session)).map_err(|e| e.to_string())
}

pub fn run(session: &str, cmd: &Command, max_degree: Option<usize>) -> Result<Report, String> {
    let s = load(session)?;
    run_command(&s, cmd, max_degree)
        .map(Report::from)
        .map_err(|e| e.to_string())
}

/// Builds a verifier from its command-line name and `key=value` style arguments.
pub fn verifier(name: &str, args: &[(&str, &str)]) -> Result<Verify, String> {
    let get = |key: &str| -> Result<String, String> {
        args.iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| v.to_string())
            .ok_or(format!("{name} needs {key}"))
    };
    Ok(match name {
        "thm-ext-sym" => Verify::ThmExtSym {
            n1: get("n1")?,
            n2: get("n2")?,
        },
        "thm-ext-asym" => Verify::ThmExtAsym {
            n1: get("n1")?,
            n2: get("n2")?,
        },
        "thm-tor" => Verify::ThmTor {
            m: get("m")?,
            n: get("n")?,
        },
        "lext-acyclic" => Verify::LextAcyclic { n: get("n")? },
        "rext-acyclic" => Verify::RextAcyclic { n: get("n")? },
        "splittings" => Verify::Splittings { n: get("n")? },
        "duality" => Verify::Duality {
            module: get("module")?,
        },
        "corollary" => Verify::Corollary { n: get("n")? },
        "degree-zero" => Verify::DegreeZero {
            module: get("module")?,
        },
        "class-relations" => Verify::ClassRelations { n: get("n")? },
        "adjunctions" => Verify::Adjunctions {
            module: get("module")?,
            n: get("n")?,
        },
        other => return Err(format!("unknown verifier {other}")),
    })
}

fn py_err(e: String) -> PyErr {
    PyValueError::new_err(e)
}

/// Names of the bundled example sessions.
#[pyfunction]
fn examples() -> Vec<&'static str> {
    corpus().into_iter().map(|(n, _)| n).collect()
}

#[pyfunction]
#[pyo3(signature = (session = "e_algebra"))]
fn lie_quotient(session: &str) -> PyResult<Report> {
    run(session, &Command::LieQuotient, None).map_err(py_err)
}

/// Leibniz homology, or cohomology when `cohomology` is true.
#[pyfunction]
#[pyo3(signature = (module, cohomology = false, max_degree = None, session = "e_algebra"))]
fn hl(
    module: &str,
    cohomology: bool,
    max_degree: Option<usize>,
    session: &str,
) -> PyResult<Report> {
    run(
        session,
        &Command::Hl {
            cohomology,
            module: module.into(),
        },
        max_degree,
    )
    .map_err(py_err)
}

/// Runs a verifier, e.g. `verify("thm-ext-sym", n1="k", n2="k")`.
#[pyfunction]
#[pyo3(signature = (name, max_degree = None, session = "e_algebra", **kwargs))]
fn verify(
    name: &str,
    max_degree: Option<usize>,
    session: &str,
    kwargs: Option<&Bound<'_, pyo3::types::PyDict>>,
) -> PyResult<Report> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    if let Some(kw) = kwargs {
        for (k, v) in kw.iter() {
            pairs.push((k.extract()?, v.extract()?));
        }
    }
    let args: Vec<(&str, &str)> = pairs
        .iter()
        .map(|(k, v)| (k.as_str(), v.as_str()))
        .collect();
    let v = verifier(name, &args).map_err(py_err)?;
    run(session, &Command::Verify(v), max_degree).map_err(py_err)
}

/// Every verifier over every bundled example.
#[pyfunction]
#[pyo3(name = "sweep", signature = (max_degree = 3))]
fn py_sweep(max_degree: usize) -> Report {
    let r = sweep(max_degree);
    Report {
        passed: r.passed,
        text: r.render(),
        json: r.to_json(),
    }
}

#[pymodule]
fn leibhom_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(examples, m)?)?;
    m.add_function(wrap_pyfunction!(lie_quotient, m)?)?;
    m.add_function(wrap_pyfunction!(hl, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(py_sweep, m)?)?;
    Ok(())
}
