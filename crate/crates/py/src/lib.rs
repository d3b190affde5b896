use num_bigint::BigInt;
use pyo3::exceptions::{PyArithmeticError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use schubert_core::identities::{self, IdentityVerdict};
use schubert_core::sweeper::{self, CRange, ConstraintMode, Interval, JRange, ReportFormat, SweepSpec};
use schubert_core::{ihsolver, qfactor, Error, StratumPair};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Poly(p) => PyArithmeticError::new_err(p.to_string()),
        Error::InternalInconsistency(m) => PyRuntimeError::new_err(m),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// Integer polynomial in `t`, coefficients in ascending degree.
#[pyclass(name = "Polynomial", module = "schubert_ih", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyPolynomial(schubert_core::Polynomial);

#[pymethods]
impl PyPolynomial {
    #[new]
    #[pyo3(signature = (coeffs = Vec::new()))]
    fn new(coeffs: Vec<BigInt>) -> Self {
        Self(schubert_core::Polynomial::from_coeffs(coeffs))
    }

    #[getter]
    fn coeffs(&self) -> Vec<BigInt> {
        self.0.coeffs().to_vec()
    }

    /// `None` for the zero polynomial.
    #[getter]
    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    fn eval_at_one(&self) -> BigInt {
        self.0.eval_at_one()
    }

    fn is_palindromic(&self, center: usize) -> bool {
        self.0.is_palindromic(center)
    }

    fn shift(&self, e: usize) -> Self {
        Self(self.0.shift(e))
    }

    fn exact_div(&self, divisor: &PyPolynomial) -> PyResult<Self> {
        self.0.exact_div(&divisor.0).map(Self).map_err(|e| to_py(e.into()))
    }

    fn __add__(&self, other: &PyPolynomial) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &PyPolynomial) -> Self {
        Self(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &PyPolynomial) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({:?})", self.0.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>())
            .replace('"', "")
    }
}

#[pyfunction]
fn h(alpha: i64) -> PyPolynomial {
    PyPolynomial(qfactor::h(alpha))
}

#[pyfunction]
fn big_p(alpha: i64) -> PyPolynomial {
    PyPolynomial(qfactor::big_p(alpha))
}

/// Poincaré polynomial of `G_k(C^l)`.
#[pyfunction]
fn gauss(k: i64, l: i64) -> PyPolynomial {
    PyPolynomial(qfactor::gauss(k, l))
}

/// The tuple `(i, j, k, l)` of a special Schubert variety.
#[pyclass(name = "SchubertParams", module = "schubert_ih", eq, frozen, skip_from_py_object)]
#[derive(Clone, Copy, PartialEq)]
pub struct PyParams(schubert_core::SchubertParams);

#[pymethods]
impl PyParams {
    #[new]
    fn new(i: i64, j: i64, k: i64, l: i64) -> Self {
        Self(schubert_core::SchubertParams::new(i, j, k, l))
    }

    #[getter]
    fn i(&self) -> i64 {
        self.0.i
    }

    #[getter]
    fn j(&self) -> i64 {
        self.0.j
    }

    #[getter]
    fn k(&self) -> i64 {
        self.0.k
    }

    #[getter]
    fn l(&self) -> i64 {
        self.0.l
    }

    #[getter]
    fn r(&self) -> i64 {
        self.0.r()
    }

    #[getter]
    fn c(&self) -> i64 {
        self.0.c()
    }

    /// One of GEOMETRIC, SYMBOLIC_ONLY, TRIVIAL_EDGE, INVALID.
    fn classify(&self) -> &'static str {
        self.0.classify().as_str()
    }

    fn dim_stratum(&self, p: i64) -> PyResult<i64> {
        self.0.dim_stratum(p).map_err(to_py)
    }

    fn resolution_poincare(&self, p: i64) -> PyResult<PyPolynomial> {
        self.0.resolution_poincare(p).map(PyPolynomial).map_err(to_py)
    }

    fn ih_closed_form(&self, p: i64) -> PyResult<PyPolynomial> {
        self.0.ih_closed_form(p).map(PyPolynomial).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        let s = self.0;
        format!("SchubertParams(i={}, j={}, k={}, l={})", s.i, s.j, s.k, s.l)
    }
}

#[pyclass(name = "Verdict", module = "schubert_ih", frozen)]
pub struct PyVerdict(IdentityVerdict);

#[pymethods]
impl PyVerdict {
    /// LOCAL, GLOBAL, APPENDIX_KI2 or APPENDIX_KC2.
    #[getter]
    fn kind(&self) -> &'static str {
        self.0.kind.as_str()
    }

    #[getter]
    fn holds(&self) -> bool {
        self.0.holds
    }

    #[getter]
    fn lhs(&self) -> PyPolynomial {
        PyPolynomial(self.0.lhs.clone())
    }

    #[getter]
    fn rhs(&self) -> PyPolynomial {
        PyPolynomial(self.0.rhs.clone())
    }

    #[getter]
    fn pair(&self) -> Option<(i64, i64)> {
        self.0.pair.map(|x| (x.p(), x.q()))
    }

    fn __bool__(&self) -> bool {
        self.0.holds
    }

    fn __repr__(&self) -> String {
        format!("Verdict(kind={}, holds={})", self.0.kind.as_str(), self.0.holds)
    }
}

fn verdict(r: schubert_core::Result<IdentityVerdict>) -> PyResult<PyVerdict> {
    r.map(PyVerdict).map_err(to_py)
}

#[pyfunction]
fn check_local(params: &PyParams, p: i64, q: i64) -> PyResult<PyVerdict> {
    let pair = StratumPair::new(p, q).map_err(to_py)?;
    verdict(identities::check_local(&params.0, pair))
}

#[pyfunction]
fn check_global(params: &PyParams) -> PyResult<PyVerdict> {
    verdict(identities::check_global(&params.0))
}

#[pyfunction]
fn appendix_f(i: i64, j: i64, c: i64) -> PyResult<PyVerdict> {
    verdict(identities::appendix_f(i, j, c))
}

#[pyfunction]
fn appendix_ff(i: i64, j: i64, r: i64) -> PyResult<PyVerdict> {
    verdict(identities::appendix_ff(i, j, r))
}

/// `[I_1, ..., I_{r+1}]` by back-substitution.
#[pyfunction]
fn solve_backsub(params: &PyParams) -> PyResult<Vec<PyPolynomial>> {
    let table = ihsolver::solve_backsub(&params.0).map_err(to_py)?;
    Ok(table.entries.into_iter().map(PyPolynomial).collect())
}

/// `[I_1, ..., I_{r+1}]` by the truncated Neumann series.
#[pyfunction]
fn solve_neumann(params: &PyParams) -> PyResult<Vec<PyPolynomial>> {
    let table = ihsolver::solve_neumann(&params.0).map_err(to_py)?;
    Ok(table.entries.into_iter().map(PyPolynomial).collect())
}

fn interval(v: Option<(i64, i64)>) -> Option<Interval> {
    v.map(|(lo, hi)| Interval::new(lo, hi))
}

/// Runs a sweep and returns the report as a JSON or CSV string.
#[pyfunction]
#[pyo3(signature = (
    identity, i, r = None, j = None, j_max = None, c = None, c_equals_r = false,
    constraint = "include-symbolic", jobs = 1, format = "json"
))]
#[allow(clippy::too_many_arguments)]
fn run_sweep(
    py: Python<'_>,
    identity: &str,
    i: (i64, i64),
    r: Option<(i64, i64)>,
    j: Option<(i64, i64)>,
    j_max: Option<i64>,
    c: Option<(i64, i64)>,
    c_equals_r: bool,
    constraint: &str,
    jobs: usize,
    format: &str,
) -> PyResult<String> {
    let bad = |what: &str, v: &str| PyValueError::new_err(format!("unknown {what} {v:?}"));
    let missing = |what: &str| PyValueError::new_err(format!("{what} is required for {identity}"));
    let i = Interval::new(i.0, i.1);
    let (r, c) = (interval(r), interval(c));
    let mut spec = match identity {
        "global" | "local" => {
            let r = r.ok_or_else(|| missing("r"))?;
            let base = if identity == "global" {
                SweepSpec::global(i, r, 0)
            } else {
                SweepSpec::local(i, r, 0)
            };
            base.with_c(match (c, c_equals_r) {
                (Some(iv), _) => CRange::Interval(iv),
                (None, true) => CRange::EqualsR,
                (None, false) => CRange::Band,
            })
        }
        "appendix-ki2" => SweepSpec::appendix_ki2(c.ok_or_else(|| missing("c"))?, i, Interval::point(0)),
        "appendix-kc2" => SweepSpec::appendix_kc2(r.ok_or_else(|| missing("r"))?, i, Interval::point(0)),
        other => return Err(bad("identity", other)),
    };
    spec.j = match (interval(j), j_max) {
        (Some(iv), _) => JRange::Interval(iv),
        (None, Some(max)) => JRange::Floor { max },
        (None, None) => return Err(missing("j or j_max")),
    };
    spec.constraint = match constraint {
        "geometric-only" => ConstraintMode::GeometricOnly,
        "include-symbolic" => ConstraintMode::IncludeSymbolic,
        "defined" => ConstraintMode::Defined,
        other => return Err(bad("constraint", other)),
    };
    let format = match format {
        "json" => ReportFormat::Json,
        "csv" => ReportFormat::Csv,
        other => return Err(bad("format", other)),
    };
    spec.parallelism = jobs;
    let report = py.detach(|| sweeper::run_sweep(&spec)).map_err(to_py)?;
    let mut out = Vec::new();
    sweeper::write_report(&report, format, &mut out, false).map_err(to_py)?;
    String::from_utf8(out).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pymodule]
fn schubert_ih(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyParams>()?;
    m.add_class::<PyVerdict>()?;
    m.add_function(wrap_pyfunction!(h, m)?)?;
    m.add_function(wrap_pyfunction!(big_p, m)?)?;
    m.add_function(wrap_pyfunction!(gauss, m)?)?;
    m.add_function(wrap_pyfunction!(check_local, m)?)?;
    m.add_function(wrap_pyfunction!(check_global, m)?)?;
    m.add_function(wrap_pyfunction!(appendix_f, m)?)?;
    m.add_function(wrap_pyfunction!(appendix_ff, m)?)?;
    m.add_function(wrap_pyfunction!(solve_backsub, m)?)?;
    m.add_function(wrap_pyfunction!(solve_neumann, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep, m)?)?;
    Ok(())
}
