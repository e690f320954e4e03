//! Python module `cck`: surfaces, expansions and the mutation oracle.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

use cck_core::arcs::{crossing_band, enumerate_paths, Arc};
use cck_core::expansion::{chi_table, expand_principal, f_polynomial, g_vector};
use cck_core::harness::fixtures;
use cck_core::harness::io::{parse_surface, SurfaceFile};
use cck_core::harness::oracle::{oracle_expand, OracleConfig};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A triangulated surface parsed from the `cck/1` surface format.
#[pyclass(name = "Surface", module = "cck")]
struct PySurface {
    file: SurfaceFile,
}

impl PySurface {
    fn arc(&self, spec: Option<&str>) -> PyResult<Arc> {
        let arc = match spec {
            Some(s) => s.parse::<Arc>().map_err(value_error)?,
            None => self.file.arc.clone().ok_or_else(|| value_error("no arc given and the surface has no arc line"))?,
        };
        Ok(self.file.resolve_arc(&arc))
    }
}

#[pymethods]
impl PySurface {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Self { file: parse_surface(text).map_err(value_error)? })
    }

    /// Bundled octagon fixture.
    #[staticmethod]
    fn octagon() -> Self {
        Self { file: fixtures::octagon() }
    }

    /// Bundled annulus fixture.
    #[staticmethod]
    fn annulus() -> Self {
        Self { file: fixtures::annulus() }
    }

    #[getter]
    fn rank(&self) -> usize {
        self.file.triangulation.rank()
    }

    /// Exchange block of the triangulation.
    fn exchange_matrix(&self) -> Vec<Vec<i64>> {
        self.file.triangulation.exchange_block()
    }

    #[pyo3(signature = (arc=None))]
    fn expand(&self, arc: Option<&str>) -> PyResult<String> {
        Ok(expand_principal(&self.file.triangulation, &self.arc(arc)?).map_err(value_error)?.to_string())
    }

    #[pyo3(signature = (arc=None))]
    fn f_polynomial(&self, arc: Option<&str>) -> PyResult<String> {
        Ok(f_polynomial(&self.file.triangulation, &self.arc(arc)?).map_err(value_error)?.to_string())
    }

    /// `(g, I+, I-)`.
    #[pyo3(signature = (arc=None))]
    fn g_vector(&self, arc: Option<&str>) -> PyResult<(Vec<i64>, Vec<usize>, Vec<usize>)> {
        let g = g_vector(&self.file.triangulation, &self.arc(arc)?).map_err(value_error)?;
        Ok((g.entries, g.plus, g.minus))
    }

    /// Path counts keyed by γ-oriented multiplicity tuples.
    #[pyo3(signature = (arc=None))]
    fn chi_table<'py>(&self, py: Python<'py>, arc: Option<&str>) -> PyResult<Bound<'py, PyDict>> {
        let table = chi_table(&self.file.triangulation, &self.arc(arc)?).map_err(value_error)?;
        let out = PyDict::new(py);
        for (e, n) in table.entries {
            out.set_item(PyTuple::new(py, e)?, n)?;
        }
        Ok(out)
    }

    /// Edge-id sequences of all complete paths, in canonical order.
    #[pyo3(signature = (arc=None))]
    fn paths(&self, arc: Option<&str>) -> PyResult<Vec<Vec<usize>>> {
        let band = crossing_band(&self.file.triangulation, &self.arc(arc)?).map_err(value_error)?;
        Ok(enumerate_paths(&band).iter().map(|p| p.edges()).collect())
    }

    /// `(value, flip sequence)` from the mutation oracle.
    #[pyo3(signature = (arc=None))]
    fn oracle(&self, arc: Option<&str>) -> PyResult<(String, Vec<usize>)> {
        let r = oracle_expand(&self.file.triangulation, &self.arc(arc)?, &OracleConfig::default()).map_err(value_error)?;
        Ok((r.value.to_string(), r.flip_sequence))
    }

    fn __repr__(&self) -> String {
        format!("Surface(rank={})", self.file.triangulation.rank())
    }
}

/// Fixture checks as `(name, passed, expected, got)`.
#[pyfunction]
fn selftest() -> PyResult<Vec<(String, bool, String, String)>> {
    let checks = fixtures::selftest().map_err(value_error)?;
    Ok(checks.into_iter().map(|c| (c.name.to_string(), c.passed(), c.expected, c.got)).collect())
}

#[pymodule]
fn cck(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySurface>()?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
