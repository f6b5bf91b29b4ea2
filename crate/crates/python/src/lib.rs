//! Python bindings: exact values come back as `int` / `fractions.Fraction`,
//! floating values as `float` (or decimal strings at full precision), and
//! structured reports as plain dicts.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use rsk_painleve::asymptotics as asy;
use rsk_painleve::combinatorics::{self as comb, IkMethod, Partition, Word};
use rsk_painleve::hp::Precision;
use rsk_painleve::measures::{self as meas, StripFunctionalParams, WordMeasureParams};
use rsk_painleve::painleve::{self as pl, OdeResidualSpec, SampledFunction};
use rsk_painleve::tau::{self, DerivativeRoute, HInterval, KInterval, WeightSpec};
use rsk_painleve::Error;
use rug::{Float, Integer, Rational};

fn err(e: Error) -> PyErr {
    match e {
        Error::ParameterOrder(_)
        | Error::InvalidParameter(_)
        | Error::InvalidPartition { .. }
        | Error::LetterOutOfRange { .. }
        | Error::OrderTooSmall { .. }
        | Error::EmptyGrid
        | Error::DivergentIntegral(_)
        | Error::BruteForceBoundExceeded { .. } => PyValueError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn py_int<'py>(py: Python<'py>, z: &Integer) -> PyResult<Bound<'py, PyAny>> {
    py.import("builtins")?.getattr("int")?.call1((z.to_string(),))
}

fn py_fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((py_int(py, r.numer())?, py_int(py, r.denom())?))
}

fn py_json<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.getattr("loads")?.call1((text,))
}

fn from_json<T: serde::de::DeserializeOwned>(py: Python<'_>, v: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = match v.extract::<String>() {
        Ok(s) => s,
        Err(_) => py.import("json")?.getattr("dumps")?.call1((v,))?.extract()?,
    };
    serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn partition(parts: Vec<i64>) -> PyResult<Partition> {
    Partition::new(&parts).map_err(err)
}

fn word(letters: Vec<u32>, p: u32) -> PyResult<Word> {
    Word::new(letters, p).map_err(err)
}

/// Shape of the RSK insertion tableau of a word over 1..=p.
#[pyfunction]
fn rsk_shape(letters: Vec<u32>, p: u32) -> PyResult<Vec<u32>> {
    Ok(comb::rsk_shape(&word(letters, p)?).parts().to_vec())
}

/// Maximal total length of k disjoint weakly increasing subsequences.
#[pyfunction]
fn i_k(letters: Vec<u32>, p: u32, k: usize) -> PyResult<usize> {
    comb::i_k(&word(letters, p)?, k, IkMethod::default()).map_err(err)
}

/// Length of the longest strictly decreasing subsequence.
#[pyfunction]
fn d1(letters: Vec<u32>, p: u32) -> PyResult<usize> {
    Ok(comb::d1(&word(letters, p)?))
}

#[pyfunction]
fn count_standard<'py>(py: Python<'py>, parts: Vec<i64>) -> PyResult<Bound<'py, PyAny>> {
    py_int(py, &comb::count_standard(&partition(parts)?))
}

#[pyfunction]
fn schur_at_ones<'py>(py: Python<'py>, parts: Vec<i64>, q: u32) -> PyResult<Bound<'py, PyAny>> {
    py_int(py, &comb::schur_at_ones(&partition(parts)?, q))
}

/// Probability of the shape under RSK of a uniform word of length ell over p letters.
#[pyfunction]
fn word_measure<'py>(py: Python<'py>, parts: Vec<i64>, p: u32, ell: u64) -> PyResult<Bound<'py, PyAny>> {
    let v = meas::word_measure(&partition(parts)?, WordMeasureParams::new(p, ell).map_err(err)?).map_err(err)?;
    py_fraction(py, &v)
}

/// Exact expectation of the strip functional over words of length ell.
#[pyfunction]
fn strip_expectation<'py>(py: Python<'py>, ell: u64, n: u32, p: u32, q: u32) -> PyResult<Bound<'py, PyAny>> {
    py_fraction(py, &meas::strip_expectation(ell, StripFunctionalParams::new(n, p, q).map_err(err)?))
}

#[pyfunction]
fn chi2_moment<'py>(py: Python<'py>, m: u32, k: u32) -> PyResult<Bound<'py, PyAny>> {
    py_fraction(py, &meas::chi2_moment(m, k).map_err(err)?)
}

/// P(lambda_p >= N) for words of length Np + k over p letters.
#[pyfunction]
fn word_event_probability<'py>(py: Python<'py>, p: u32, big_n: u32, k: u32) -> PyResult<Bound<'py, PyAny>> {
    py_fraction(py, &asy::word_event_probability(p, big_n, k).map_err(err)?)
}

/// Hankel-determinant tau function of a weight (given as a dict or JSON string).
#[pyclass(name = "TauEvaluator")]
struct PyTau {
    inner: tau::TauEvaluator,
}

#[pymethods]
impl PyTau {
    #[new]
    #[pyo3(signature = (weight, n, digits = 60))]
    fn new(py: Python<'_>, weight: &Bound<'_, PyAny>, n: usize, digits: u32) -> PyResult<Self> {
        let weight: WeightSpec = from_json(py, weight)?;
        Ok(PyTau { inner: tau::TauEvaluator::new(weight, n, Precision::digits(digits)).map_err(err)? })
    }

    fn tau(&self, x: f64) -> PyResult<f64> {
        Ok(self.inner.tau(&self.inner.float(x)).map_err(err)?.to_f64())
    }

    /// tau(x) as a decimal string with the evaluator's digits.
    fn tau_decimal(&self, x: f64) -> PyResult<String> {
        let v = self.inner.tau(&self.inner.float(x)).map_err(err)?;
        Ok(v.to_string_radix(10, Some(self.inner.precision().digits as usize)))
    }

    /// [g, g', g'', g'''] with g = d/dx log tau.
    fn log_derivatives(&self, x: f64) -> PyResult<Vec<f64>> {
        let v = self.inner.log_derivatives_exact(&self.inner.float(x)).map_err(err)?;
        Ok(v.iter().map(Float::to_f64).collect())
    }

    #[pyo3(signature = (x, order = 0))]
    fn g(&self, x: f64, order: usize) -> PyResult<f64> {
        Ok(self.inner.log_deriv_g(&self.inner.float(x), order, DerivativeRoute::Exact).map_err(err)?.to_f64())
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("TauEvaluator({:?})", self.inner.descriptor())
    }
}

#[pyfunction]
#[pyo3(signature = (p, q, s, digits = 60))]
fn hermitian_ratio(p: usize, q: usize, s: f64, digits: u32) -> PyResult<f64> {
    Ok(tau::hermitian_ratio(p, q, s, Precision::digits(digits)).map_err(err)?.to_f64())
}

fn h_interval(name: &str) -> PyResult<HInterval> {
    from_json_str(name)
}

fn k_interval(name: &str) -> PyResult<KInterval> {
    from_json_str(name)
}

fn from_json_str<T: serde::de::DeserializeOwned>(name: &str) -> PyResult<T> {
    serde_json::from_value(serde_json::Value::String(name.into())).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// h(s) = d/ds log of the Gaussian-type integral over the given interval.
#[pyfunction]
#[pyo3(signature = (n, a, interval, s, digits = 60))]
fn painleve_h(n: usize, a: f64, interval: &str, s: f64, digits: u32) -> PyResult<Vec<f64>> {
    let prec = Precision::digits(digits);
    let h = tau::PainleveH::new(n, a, h_interval(interval)?, prec).map_err(err)?;
    Ok(h.derivatives(&Float::with_val(prec.bits(), s)).map_err(err)?.iter().map(Float::to_f64).collect())
}

/// k(s) = s d/ds log of the Laguerre-type integral over the given interval.
#[pyfunction]
#[pyo3(signature = (n, a, b, interval, s, digits = 60))]
fn painleve_k(n: usize, a: f64, b: f64, interval: &str, s: f64, digits: u32) -> PyResult<Vec<f64>> {
    let prec = Precision::digits(digits);
    let k = tau::PainleveK::new(n, a, b, k_interval(interval)?, prec).map_err(err)?;
    Ok(k.derivatives(&Float::with_val(prec.bits(), s)).map_err(err)?.iter().map(Float::to_f64).collect())
}

/// Residual of an equation (dict with an "equation" tag) at sampled jets
/// [f, f', f'', ...], one list per grid point.
#[pyfunction]
#[pyo3(signature = (spec, grid, jets, digits = 60))]
fn residual<'py>(
    py: Python<'py>,
    spec: &Bound<'py, PyAny>,
    grid: Vec<f64>,
    jets: Vec<Vec<f64>>,
    digits: u32,
) -> PyResult<Bound<'py, PyAny>> {
    let spec: OdeResidualSpec = from_json(py, spec)?;
    if grid.len() != jets.len() {
        return Err(PyValueError::new_err("grid and jets differ in length"));
    }
    let bits = Precision::digits(digits).bits();
    let nodes: Vec<Float> = grid.iter().map(|&x| Float::with_val(bits, x)).collect();
    let lookup = |x: &Float| -> rsk_painleve::Result<Vec<Float>> {
        let i = nodes.iter().position(|g| g == x).expect("jet requested at a grid node");
        Ok(jets[i].iter().map(|&v| Float::with_val(bits, v)).collect())
    };
    let sampled = SampledFunction::from_jets(nodes.clone(), lookup, "python").map_err(err)?;
    py_json(py, &pl::residual(&spec, &sampled).map_err(err)?)
}

/// Exact power series of u for the strip functional, with its residual.
#[pyfunction]
fn pv_series_u<'py>(py: Python<'py>, p: u32, q: u32, n: u32, order: usize) -> PyResult<Bound<'py, PyAny>> {
    py_json(py, &pl::pv_series_u(p, q, n, order).map_err(err)?)
}

#[pyfunction]
fn chi_square_moment_study<'py>(py: Python<'py>, p: u32, q: u32, k: u32, ns: Vec<u32>) -> PyResult<Bound<'py, PyAny>> {
    py_json(py, &asy::chi_square_moment_study(p, q, k, &ns).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (p, k, ns, word_bound = 14))]
fn word_event_study<'py>(py: Python<'py>, p: u32, k: u32, ns: Vec<u32>, word_bound: usize) -> PyResult<Bound<'py, PyAny>> {
    py_json(py, &asy::word_event_study(p, k, &ns, word_bound).map_err(err)?)
}

/// Poissonized strip expectation against its Hermitian limit at target intensities.
#[pyfunction]
#[pyo3(signature = (p, q, s, xs, digits = 60))]
fn poissonized_limit_study<'py>(py: Python<'py>, p: u32, q: u32, s: f64, xs: Vec<f64>, digits: u32) -> PyResult<Bound<'py, PyAny>> {
    let grid = asy::IntensityGrid::Targets(xs);
    py_json(py, &asy::poissonized_limit_study(p, q, s, &grid, Precision::digits(digits)).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (p, q, ns, s_grid, digits = 60))]
fn scaling_limit_check<'py>(
    py: Python<'py>,
    p: u32,
    q: u32,
    ns: Vec<u32>,
    s_grid: Vec<f64>,
    digits: u32,
) -> PyResult<Bound<'py, PyAny>> {
    py_json(py, &asy::scaling_limit_check(p, q, &ns, &s_grid, Precision::digits(digits)).map_err(err)?)
}

#[pymodule]
fn rskp(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTau>()?;
    m.add_function(wrap_pyfunction!(rsk_shape, m)?)?;
    m.add_function(wrap_pyfunction!(i_k, m)?)?;
    m.add_function(wrap_pyfunction!(d1, m)?)?;
    m.add_function(wrap_pyfunction!(count_standard, m)?)?;
    m.add_function(wrap_pyfunction!(schur_at_ones, m)?)?;
    m.add_function(wrap_pyfunction!(word_measure, m)?)?;
    m.add_function(wrap_pyfunction!(strip_expectation, m)?)?;
    m.add_function(wrap_pyfunction!(chi2_moment, m)?)?;
    m.add_function(wrap_pyfunction!(word_event_probability, m)?)?;
    m.add_function(wrap_pyfunction!(hermitian_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(painleve_h, m)?)?;
    m.add_function(wrap_pyfunction!(painleve_k, m)?)?;
    m.add_function(wrap_pyfunction!(residual, m)?)?;
    m.add_function(wrap_pyfunction!(pv_series_u, m)?)?;
    m.add_function(wrap_pyfunction!(chi_square_moment_study, m)?)?;
    m.add_function(wrap_pyfunction!(word_event_study, m)?)?;
    m.add_function(wrap_pyfunction!(poissonized_limit_study, m)?)?;
    m.add_function(wrap_pyfunction!(scaling_limit_check, m)?)?;
    Ok(())
}
