//! Python bindings. Matrices cross the boundary as lists of rows of
//! integers; GF(q) entries use the canonical encodings `0..q-1`.

use std::path::PathBuf;

use lcdcodes_core::build::{self as core_build, BuildResult, DesignInput};
use lcdcodes_core::code::{CodeReport, LinearCode, ReportOptions};
use lcdcodes_core::construct;
use lcdcodes_core::decode::{DecodeMode, DecodeOutcome, DecoderContext};
use lcdcodes_core::distance::{DistanceAlgorithm, EnumerationPolicy};
use lcdcodes_core::tables::{self, HarnessOptions, TableId};
use lcdcodes_core::{FieldCtx, FqMatrix, IntMatrix};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn py_err(e: lcdcodes_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_fq(q: u32, rows: Vec<Vec<i64>>) -> PyResult<FqMatrix> {
    let field = FieldCtx::new(q).map_err(py_err)?;
    let rows: Vec<Vec<u8>> = rows
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|v| match u8::try_from(v) {
                    Ok(x) if (x as u32) < q => Ok(x),
                    _ => Err(PyValueError::new_err(format!("entry {v} is not in GF({q})"))),
                })
                .collect()
        })
        .collect::<PyResult<_>>()?;
    FqMatrix::from_rows(&field, &rows).map_err(py_err)
}

fn fq_rows(m: &FqMatrix) -> Vec<Vec<u8>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn int_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Paley type I Hadamard matrix of order π + 1.
#[pyfunction]
fn paley(pi: u32) -> PyResult<Vec<Vec<i64>>> {
    Ok(int_rows(construct::paley_type_one(pi).map_err(py_err)?.matrix()))
}

/// Symmetric conference matrix of order π + 1.
#[pyfunction]
fn conference(pi: u32) -> PyResult<Vec<Vec<i64>>> {
    Ok(int_rows(construct::paley_conference(pi).map_err(py_err)?.matrix()))
}

/// Weight of a valid weighing matrix; raises on invalid input.
#[pyfunction]
fn validate_weighing(rows: Vec<Vec<i64>>) -> PyResult<i64> {
    let m = IntMatrix::from_rows(&rows).map_err(py_err)?;
    Ok(construct::validate_weighing(&m, None).map_err(py_err)?.weight())
}

#[pyclass(name = "Code", frozen)]
struct PyCode {
    generator: FqMatrix,
    code: LinearCode,
}

#[pymethods]
impl PyCode {
    #[new]
    fn new(q: u32, rows: Vec<Vec<i64>>) -> PyResult<Self> {
        let generator = to_fq(q, rows)?;
        let code = LinearCode::from_generator(&generator).map_err(py_err)?;
        Ok(PyCode { generator, code })
    }

    #[getter]
    fn n(&self) -> usize {
        self.code.length()
    }

    #[getter]
    fn k(&self) -> usize {
        self.code.dimension()
    }

    #[getter]
    fn q(&self) -> u32 {
        self.code.field().order()
    }

    fn basis(&self) -> Vec<Vec<u8>> {
        fq_rows(self.code.basis())
    }

    fn dual(&self) -> PyCode {
        let code = self.code.dual();
        PyCode {
            generator: code.basis().clone(),
            code,
        }
    }

    #[pyo3(signature = (hermitian = false))]
    fn hull_dimension(&self, hermitian: bool) -> PyResult<usize> {
        self.code.hull_dimension(hermitian).map_err(py_err)
    }

    fn is_lcd(&self) -> bool {
        self.code.is_lcd()
    }

    fn is_self_dual(&self) -> bool {
        self.code.is_self_dual()
    }

    fn contains(&self, word: Vec<u8>) -> PyResult<bool> {
        self.code.contains(&word).map_err(py_err)
    }

    /// `(lower, upper, exact)`.
    #[pyo3(signature = (cap = None))]
    fn min_distance(&self, cap: Option<u64>) -> PyResult<(usize, usize, bool)> {
        let policy = cap.map_or_else(EnumerationPolicy::default, EnumerationPolicy::with_cap);
        let d = self.code.min_distance(&policy, DistanceAlgorithm::Auto).map_err(py_err)?;
        Ok((d.lower, d.upper, d.exact().is_some()))
    }

    #[pyo3(signature = (cap = None))]
    fn weight_distribution(&self, cap: Option<u64>) -> PyResult<Vec<u64>> {
        let cap = cap.unwrap_or(lcdcodes_core::distance::DEFAULT_ENUM_CAP);
        self.code.weight_distribution(cap).map_err(py_err)
    }

    /// The one-line report, e.g. `8 4 4[EXACT] 3 0 lcd=yes fsd=yes[EXACT]`.
    #[pyo3(signature = (hermitian = false))]
    fn report(&self, hermitian: bool) -> PyResult<String> {
        let opts = ReportOptions {
            hermitian,
            ..Default::default()
        };
        Ok(CodeReport::new(&self.generator, &opts).map_err(py_err)?.to_string())
    }

    fn __repr__(&self) -> String {
        format!("Code([{}, {}]_{})", self.n(), self.k(), self.q())
    }
}

#[pyclass(name = "BuildResult", frozen)]
struct PyBuild {
    inner: BuildResult,
}

#[pymethods]
impl PyBuild {
    #[getter]
    fn generator(&self) -> Vec<Vec<u8>> {
        fq_rows(&self.inner.generator)
    }

    #[getter]
    fn dual_generator(&self) -> Option<Vec<Vec<u8>>> {
        self.inner.dual_generator.as_ref().map(fq_rows)
    }

    #[getter]
    fn predicted(&self) -> String {
        self.inner.predicted.to_string()
    }

    #[getter]
    fn trace(&self) -> String {
        self.inner.trace_line()
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.field().order()
    }

    fn code(&self) -> PyResult<PyCode> {
        PyCode::new(
            self.q(),
            self.generator().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect(),
        )
    }

    fn __repr__(&self) -> String {
        format!("BuildResult({})", self.inner.trace_line())
    }
}

/// `[H + αI | I]` with `H` the Paley type I matrix `P₁(π)`.
#[pyfunction]
fn build_skew_hadamard(pi: u32, alpha: u8, q: u32) -> PyResult<PyBuild> {
    let h = construct::paley_type_one(pi).map_err(py_err)?;
    let inner = core_build::build_skew_hadamard(&h, &DesignInput::Identity, alpha, q).map_err(py_err)?;
    Ok(PyBuild { inner })
}

/// `[W | I]` for an integer weighing matrix.
#[pyfunction]
fn build_plain(rows: Vec<Vec<i64>>, q: u32) -> PyResult<PyBuild> {
    let w = construct::validate_weighing(&IntMatrix::from_rows(&rows).map_err(py_err)?, None).map_err(py_err)?;
    let inner = core_build::build_plain(&w, &DesignInput::Identity, q).map_err(py_err)?;
    Ok(PyBuild { inner })
}

#[pyclass(name = "Decoder", frozen)]
struct PyDecoder {
    ctx: DecoderContext,
}

#[pymethods]
impl PyDecoder {
    #[new]
    fn new(q: u32, g: Vec<Vec<i64>>, gbar: Vec<Vec<i64>>, d: usize) -> PyResult<Self> {
        let ctx = DecoderContext::new(&to_fq(q, g)?, &to_fq(q, gbar)?, d).map_err(py_err)?;
        Ok(PyDecoder { ctx })
    }

    #[getter]
    fn radius(&self) -> usize {
        self.ctx.radius()
    }

    /// `(codeword, dual_part)` of the unique split `w = c + e`.
    fn project(&self, word: Vec<u8>) -> PyResult<(Vec<u8>, Vec<u8>)> {
        let p = self.ctx.project(&word).map_err(py_err)?;
        Ok((p.codeword, p.dual_part))
    }

    /// The decoded codeword, or `None` beyond the radius.
    #[pyo3(signature = (word, complete = false))]
    fn decode(&self, word: Vec<u8>, complete: bool) -> PyResult<Option<Vec<u8>>> {
        let mode = if complete { DecodeMode::Complete } else { DecodeMode::Strict };
        Ok(match self.ctx.decode_with(&word, mode).map_err(py_err)? {
            DecodeOutcome::Decoded(c) => Some(c),
            DecodeOutcome::BeyondRadius { .. } => None,
        })
    }
}

/// Report lines for a published table.
#[pyfunction]
#[pyo3(signature = (table, data_dir = None))]
fn reproduce(table: u8, data_dir: Option<PathBuf>) -> PyResult<Vec<String>> {
    let id = TableId::new(table).map_err(py_err)?;
    let rows = tables::reproduce(id, data_dir.as_deref(), &HarnessOptions::default());
    Ok(rows.iter().map(|r| r.to_string()).collect())
}

#[pymodule]
#[pyo3(name = "lcdcodes")]
fn lcdcodes_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCode>()?;
    m.add_class::<PyBuild>()?;
    m.add_class::<PyDecoder>()?;
    m.add_function(wrap_pyfunction!(paley, m)?)?;
    m.add_function(wrap_pyfunction!(conference, m)?)?;
    m.add_function(wrap_pyfunction!(validate_weighing, m)?)?;
    m.add_function(wrap_pyfunction!(build_skew_hadamard, m)?)?;
    m.add_function(wrap_pyfunction!(build_plain, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce, m)?)?;
    Ok(())
}
