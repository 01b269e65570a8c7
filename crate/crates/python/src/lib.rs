//! Python bindings. Structured results come back as plain dicts and lists,
//! decoded from the same JSON the command-line tool emits.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::Value;

use inertia_lab::elliptic::{self, EllipticCurve};
use inertia_lab::gl2::{self, Gl2Context};
use inertia_lab::group::AbelianType;
use inertia_lab::local;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn curve(a: [i64; 5]) -> PyResult<EllipticCurve> {
    EllipticCurve::from_integers(a).map_err(err)
}

/// Runs the command-line tool on `args` and returns `(exit_code, output)`.
#[pyfunction]
fn cli(args: Vec<String>) -> (i32, String) {
    let argv = std::iter::once("inertia-lab".to_string()).chain(args);
    let (code, out, _) = inertia_lab::cli::main_with_args(argv);
    (code, out)
}

/// Realizability of abelian `G` with inertia `I` at `p`; both given by cyclic factors.
#[pyfunction]
fn realize_abelian<'py>(py: Python<'py>, p: u64, g: Vec<u64>, i: Vec<u64>) -> PyResult<Bound<'py, PyAny>> {
    let g = AbelianType::from_cyclic_factors(&g).map_err(err)?;
    let i = AbelianType::from_cyclic_factors(&i).map_err(err)?;
    let v = local::abelian_realizable(&g, &i, p).map_err(err)?;
    to_py(py, serde_json::to_value(v).map_err(err)?)
}

/// Inertia candidates in `GL2(F_p)` up to conjugacy.
#[pyfunction]
fn gl2_candidates<'py>(py: Python<'py>, p: u64) -> PyResult<Bound<'py, PyAny>> {
    let ctx = Gl2Context::new(p).map_err(err)?;
    to_py(py, serde_json::to_value(gl2::inertia_candidates(&ctx)).map_err(err)?)
}

/// The exact `j`-invariant as a string `n/d`.
#[pyfunction]
fn j_invariant(a: [i64; 5]) -> PyResult<String> {
    Ok(elliptic::rational_string(curve(a)?.j_invariant()))
}

#[pyfunction]
fn canonical_lift<'py>(py: Python<'py>, a: [i64; 5], p: u64) -> PyResult<Bound<'py, PyAny>> {
    let r = elliptic::canonical_lift_j(&curve(a)?, p).map_err(err)?;
    to_py(py, serde_json::to_value(r).map_err(err)?)
}

#[pyfunction]
fn gross_diagonalizable(a: [i64; 5], p: u64) -> PyResult<bool> {
    elliptic::gross_diagonalizable(&curve(a)?, p).map_err(err)
}

/// Builds a curve with the requested reduction at `p > 13`; returns its certificate.
#[pyfunction]
#[pyo3(signature = (p, reduction, diagonal = true))]
fn construct_curve<'py>(py: Python<'py>, p: u64, reduction: &str, diagonal: bool) -> PyResult<Bound<'py, PyAny>> {
    let (_, cert) = match reduction {
        "supersingular" => elliptic::construct_supersingular(p),
        "ordinary" => elliptic::construct_ordinary(p, diagonal),
        other => return Err(err(format!("unknown reduction {other:?}"))),
    }
    .map_err(err)?;
    cert.validate().map_err(err)?;
    to_py(py, serde_json::to_value(cert).map_err(err)?)
}

#[pyfunction]
fn verify_example_6_2<'py>(py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
    let r = local::verify_example_6_2().map_err(err)?;
    to_py(py, serde_json::to_value(r).map_err(err)?)
}

#[pymodule]
#[pyo3(name = "inertia_lab")]
fn inertia_lab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(cli, m)?)?;
    m.add_function(wrap_pyfunction!(realize_abelian, m)?)?;
    m.add_function(wrap_pyfunction!(gl2_candidates, m)?)?;
    m.add_function(wrap_pyfunction!(j_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_lift, m)?)?;
    m.add_function(wrap_pyfunction!(gross_diagonalizable, m)?)?;
    m.add_function(wrap_pyfunction!(construct_curve, m)?)?;
    m.add_function(wrap_pyfunction!(verify_example_6_2, m)?)?;
    Ok(())
}
