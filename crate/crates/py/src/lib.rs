use std::path::PathBuf;

use bergdim::cli::{self, CurveFile, OpenSetFile, Report, VerifyFile};
use bergdim::dichotomy::{self, ExactPolicy};
use bergdim::error::Error;
use bergdim::puiseux::CurveModel;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(bergdim_py, BergdimError, PyException);

/// Carries the CLI exit code as the second argument.
fn to_py(e: Error) -> PyErr {
    BergdimError::new_err((e.to_string(), e.exit_code()))
}

fn policy(name: &str) -> PyResult<ExactPolicy> {
    match name {
        "auto" => Ok(ExactPolicy::Auto),
        "exact" => Ok(ExactPolicy::Require),
        "bounds_only" => Ok(ExactPolicy::BoundsOnly),
        other => Err(PyValueError::new_err(format!("unknown policy {other:?}"))),
    }
}

fn json(value: &dichotomy::DichotomyReport) -> String {
    serde_json::to_string(value).expect("report types serialize")
}

#[pyclass(module = "bergdim_py", frozen)]
struct OpenSet {
    file: OpenSetFile,
}

#[pymethods]
impl OpenSet {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(OpenSet {
            file: OpenSetFile::from_json(text).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        Ok(OpenSet {
            file: OpenSetFile::load(&path).map_err(to_py)?,
        })
    }
}

#[pyclass(module = "bergdim_py", frozen)]
struct Curve {
    file: CurveFile,
    model: CurveModel,
}

impl Curve {
    fn new(file: CurveFile) -> PyResult<Self> {
        let model = file.build().map_err(to_py)?;
        Ok(Curve { file, model })
    }
}

#[pymethods]
impl Curve {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Curve::new(CurveFile::from_json(text).map_err(to_py)?)
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        Curve::new(CurveFile::load(&path).map_err(to_py)?)
    }

    #[getter]
    fn genus(&self) -> i64 {
        self.model.genus
    }

    #[getter]
    fn degree(&self) -> Option<u32> {
        self.model.degree
    }

    #[getter]
    fn components(&self) -> u32 {
        self.model.components
    }

    #[getter]
    fn singular_points(&self) -> Vec<(String, u32, u32)> {
        self.model
            .singular_points()
            .map(|r| (r.id.clone(), r.m, r.delta))
            .collect()
    }

    /// Full analysis report as a JSON string.
    fn analyze(&self) -> PyResult<String> {
        Ok(cli::analyze(&self.file).map_err(to_py)?.to_json())
    }

    /// The dichotomy verdict with bounds, as a JSON string.
    #[pyo3(signature = (openset, policy = "auto"))]
    fn decide(&self, openset: &OpenSet, policy: &str) -> PyResult<String> {
        let spec = openset.file.spec(self.file.ambient).map_err(to_py)?;
        let r = dichotomy::decide(&self.model, &spec, self::policy(policy)?).map_err(to_py)?;
        Ok(json(&r))
    }

    fn l2_delta(&self, openset: &OpenSet) -> PyResult<u64> {
        let spec = openset.file.spec(self.file.ambient).map_err(to_py)?;
        Ok(dichotomy::l2_delta(&self.model, &spec)
            .map_err(to_py)?
            .l2_delta)
    }

    fn __repr__(&self) -> String {
        format!(
            "Curve(degree={:?}, genus={}, singular_points={})",
            self.model.degree,
            self.model.genus,
            self.model.singular_points().count()
        )
    }
}

fn report(r: bergdim::error::Result<Report>) -> PyResult<String> {
    Ok(r.map_err(to_py)?.to_json())
}

#[pyfunction]
fn analyze(curve_json: &str) -> PyResult<String> {
    report(CurveFile::from_json(curve_json).and_then(|f| cli::analyze(&f)))
}

#[pyfunction]
#[pyo3(signature = (curve_json, openset_json, policy = "auto"))]
fn decide(curve_json: &str, openset_json: &str, policy: &str) -> PyResult<String> {
    let policy = self::policy(policy)?;
    report(
        CurveFile::from_json(curve_json)
            .and_then(|f| Ok((f, OpenSetFile::from_json(openset_json)?)))
            .and_then(|(f, o)| cli::decide_files(&f, &o, policy)),
    )
}

#[pyfunction]
fn l2delta(curve_json: &str, openset_json: &str) -> PyResult<String> {
    report(
        CurveFile::from_json(curve_json)
            .and_then(|f| Ok((f, OpenSetFile::from_json(openset_json)?)))
            .and_then(|(f, o)| cli::l2delta_files(&f, &o)),
    )
}

/// Runs the numeric checks. Relative curve paths resolve against `base`.
#[pyfunction]
#[pyo3(signature = (config_json = None, base = None))]
fn verify(config_json: Option<&str>, base: Option<PathBuf>) -> PyResult<String> {
    let cfg = match config_json {
        Some(text) => VerifyFile::from_json(text).map_err(to_py)?,
        None => VerifyFile::default(),
    };
    report(cli::verify(&cfg, base.as_deref()))
}

#[pymodule]
fn bergdim_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BergdimError", m.py().get_type::<BergdimError>())?;
    m.add_class::<Curve>()?;
    m.add_class::<OpenSet>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(l2delta, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
