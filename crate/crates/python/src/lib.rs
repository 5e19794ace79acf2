//! Python bindings: catalog queries, invariants and JSON verification reports.

use minorbit::cli::{self, Command, Format, RunConfig};
use minorbit::matmodel::MODEL_IDS;
use minorbit::realform::{derive_invariants, Catalog};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Ids of the shipped catalog.
#[pyfunction]
fn catalog_ids() -> Vec<String> {
    Catalog::shipped().ids().into_iter().map(str::to_string).collect()
}

/// Ids with an explicit matrix model.
#[pyfunction]
fn model_ids() -> Vec<&'static str> {
    MODEL_IDS.to_vec()
}

/// Derived invariants of a catalog entry.
#[pyfunction]
fn invariants<'py>(py: Python<'py>, form: &str) -> PyResult<Bound<'py, PyDict>> {
    let catalog = Catalog::shipped();
    let desc = catalog.get(form).map_err(value_error)?;
    let inv = derive_invariants(desc).map_err(value_error)?;
    let d = PyDict::new(py);
    d.set_item("d", inv.d)?;
    d.set_item("m", inv.m.to_vec())?;
    d.set_item("dim_g", inv.dim_g)?;
    d.set_item("dim_Z", inv.dim_z)?;
    d.set_item("dim_X", inv.dim_x)?;
    d.set_item("omin_split", inv.omin_split)?;
    d.set_item("h_vee", inv.h_vee)?;
    d.set_item("hermitian", desc.hermitian)?;
    Ok(d)
}

/// Runs a command and returns its JSON report.
#[pyfunction]
#[pyo3(signature = (command, form=None, checks=None, samples=100, tol=None, seed=42))]
fn run(
    py: Python<'_>,
    command: &str,
    form: Option<String>,
    checks: Option<Vec<String>>,
    samples: u64,
    tol: Option<f64>,
    seed: u64,
) -> PyResult<String> {
    let command = match command {
        "catalog" => Command::Catalog,
        "invariants" => Command::Invariants,
        "table" => Command::Table,
        "model-check" => Command::ModelCheck,
        "verify" => Command::Verify,
        other => return Err(value_error(format!("unknown command {other:?}"))),
    };
    if samples == 0 {
        return Err(value_error("samples must be positive"));
    }
    let config = RunConfig {
        command,
        form_id: form,
        check_names: checks.unwrap_or_default(),
        samples,
        tol,
        seed,
        catalog_path: None,
        format: Format::Json,
    };
    let doc = py.allow_threads(|| cli::run(&config, false)).map_err(value_error)?;
    Ok(cli::render(&doc, Format::Json))
}

#[pymodule]
fn pyminorbit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", cli::VERSION)?;
    m.add_function(wrap_pyfunction!(catalog_ids, m)?)?;
    m.add_function(wrap_pyfunction!(model_ids, m)?)?;
    m.add_function(wrap_pyfunction!(invariants, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
