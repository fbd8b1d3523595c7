//! Python bindings: Ramsey search, colouring checks, constructions and the
//! command-line entry point.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use nhramsey::absorb::{toy_triangle_absorber, verify_absorber};
use nhramsey::budget::Budget;
use nhramsey::cli::parse_pattern;
use nhramsey::constructions::{build_hk, lower_bound_colouring, prop1_colouring};
use nhramsey::graph::{Colour, TwoColouring};
use nhramsey::ledger::param_ledger;
use nhramsey::ramsey::{colouring_avoids, ramsey_search, RamseyQuery, RamseyStatus, Target};

create_exception!(nhramsey_py, NhramseyError, PyException);

fn err(e: nhramsey::error::Error) -> PyErr {
    NhramseyError::new_err(e.to_string())
}

fn budget(nodes: Option<u64>) -> Budget {
    nodes.map(Budget::new).unwrap_or_default()
}

/// Two-colour Ramsey number of `red_copies` disjoint red copies against
/// `blue_copies` disjoint blue copies. Patterns use the CLI shorthand
/// (`K3`, `P4`, `C5`, `S3`, `Hk4`).
#[pyfunction]
#[pyo3(signature = (red, blue=None, red_copies=1, blue_copies=1, nodes=None))]
fn ramsey<'py>(
    py: Python<'py>,
    red: &str,
    blue: Option<&str>,
    red_copies: usize,
    blue_copies: usize,
    nodes: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let r = Target::packing(parse_pattern(red).map_err(err)?, red_copies);
    let b = Target::packing(parse_pattern(blue.unwrap_or(red)).map_err(err)?, blue_copies);
    let q = RamseyQuery::new(r, b);
    let bud = budget(nodes);
    let res = py.detach(|| ramsey_search(&q, &bud)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("value", res.value)?;
    d.set_item("lo", res.lo)?;
    d.set_item("hi", res.hi)?;
    d.set_item("exact", res.status == RamseyStatus::Exact)?;
    d.set_item("witness", res.lower_witness.as_ref().map(|w| w.to_text()))?;
    d.set_item("nodes", res.nodes())?;
    Ok(d)
}

/// `(red_avoids, blue_avoids)` for `copies` disjoint copies of `pattern` in a
/// colouring given in text form.
#[pyfunction]
#[pyo3(signature = (colouring, pattern, copies=1))]
fn avoids(py: Python<'_>, colouring: &str, pattern: &str, copies: usize) -> PyResult<(bool, bool)> {
    let col = TwoColouring::parse(colouring).map_err(err)?;
    let t = Target::packing(parse_pattern(pattern).map_err(err)?, copies);
    let b = Budget::default();
    py.detach(|| {
        let red = colouring_avoids(&col, &t, Colour::Red, &b)?.avoids;
        let blue = colouring_avoids(&col, &t, Colour::Blue, &b)?.avoids;
        Ok((red, blue))
    })
    .map_err(err)
}

/// Text form of the lower-bound colouring for `n` copies of `pattern`.
#[pyfunction]
fn lower_bound(pattern: &str, n: usize) -> PyResult<String> {
    let h = parse_pattern(pattern).map_err(err)?;
    Ok(lower_bound_colouring(&h, n).map_err(err)?.0.to_text())
}

/// Text form of the colouring with a blue clique attached for `H_{3ℓ+4}`.
#[pyfunction]
fn prop1(ell: usize, n: usize) -> PyResult<String> {
    Ok(prop1_colouring(ell, n).map_err(err)?.0.to_text())
}

/// `(k, max_degree, alpha)` of `H_k` with `k = 3ℓ + 4`.
#[pyfunction]
fn hk_parameters(ell: usize) -> PyResult<(usize, usize, usize)> {
    let h = build_hk(ell).map_err(err)?;
    Ok((h.k, h.max_degree, h.alpha))
}

/// `(certified, subsets_checked)` for the built-in triangle absorber.
#[pyfunction]
#[pyo3(signature = (radius=2))]
fn toy_absorber(py: Python<'_>, radius: usize) -> PyResult<(bool, u64)> {
    let (g, a, u) = toy_triangle_absorber();
    let h = nhramsey::pattern::PatternGraph::complete(3);
    let v = py
        .detach(|| verify_absorber(&g, a, u, radius, &h, &Budget::default()))
        .map_err(err)?;
    Ok(match v {
        nhramsey::absorb::AbsorberVerdict::Certified(c) => (true, c.subsets_checked),
        nhramsey::absorb::AbsorberVerdict::Failed { subsets_checked, .. } => (false, subsets_checked),
    })
}

/// Parameter ledger as a dict of exact decimal or fraction strings.
#[pyfunction]
fn params(py: Python<'_>, delta: u64, k: u64) -> PyResult<Bound<'_, PyDict>> {
    let l = param_ledger(delta, k).map_err(err)?;
    let v = serde_json::to_value(&l).map_err(|e| NhramseyError::new_err(e.to_string()))?;
    let d = PyDict::new(py);
    if let serde_json::Value::Object(map) = v {
        for (key, val) in map {
            if let serde_json::Value::String(s) = val {
                d.set_item(key, s)?;
            }
        }
    }
    Ok(d)
}

/// Runs the command line with `args` (without the program name); returns
/// `(exit_code, output)`.
#[pyfunction]
fn run_cli(py: Python<'_>, args: Vec<String>) -> (i32, String) {
    let full: Vec<String> = std::iter::once("nhramsey".to_string()).chain(args).collect();
    py.detach(|| nhramsey::cli::run(full))
}

#[pymodule]
fn nhramsey_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("NhramseyError", m.py().get_type::<NhramseyError>())?;
    m.add_function(wrap_pyfunction!(ramsey, m)?)?;
    m.add_function(wrap_pyfunction!(avoids, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(prop1, m)?)?;
    m.add_function(wrap_pyfunction!(hk_parameters, m)?)?;
    m.add_function(wrap_pyfunction!(toy_absorber, m)?)?;
    m.add_function(wrap_pyfunction!(params, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
