//! Python bindings: field elements, matrix modules and the main constructions.

use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use qsaa_core::cyclo::CycloNum;
use qsaa_core::io::{module_from_str, module_to_json};
use qsaa_core::parse::{parse_cyclo, parse_cyclo_list, parse_element};
use qsaa_core::pbw::{Generator, Presentation};
use qsaa_core::pi_degree::{pideg_qsaa, pideg_smash, skew_normal_form, SkewIntMatrix};
use qsaa_core::rep::{MatrixModule, Simplicity};
use qsaa_core::simple_mods::{self, SimpleParams, SimpleType};
use qsaa_core::smash::{self, BModuleParams};
use qsaa_core::verma::{self, VermaParams};
use qsaa_core::Error;

create_exception!(qsaa, QsaaError, PyValueError, "Invalid input or parameters.");
create_exception!(qsaa, MathError, PyArithmeticError, "A mathematical precondition failed.");

fn err(e: Error) -> PyErr {
    match e {
        Error::InvariantViolation(_)
        | Error::Torsion(_)
        | Error::NotSimple(_)
        | Error::RelationFailure(_)
        | Error::DivisionByZero => MathError::new_err(e.to_string()),
        _ => QsaaError::new_err(e.to_string()),
    }
}

/// Element of the cyclotomic field of order `l`.
#[pyclass(name = "Cyclo", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyCyclo(CycloNum);

#[pymethods]
impl PyCyclo {
    /// Parses a literal such as `"1/2*q^2 - 3"`.
    #[new]
    fn new(l: u32, text: &str) -> PyResult<Self> {
        parse_cyclo(l, text).map(PyCyclo).map_err(err)
    }

    #[staticmethod]
    fn root(l: u32) -> PyResult<Self> {
        if l < 3 {
            return Err(err(Error::InvalidOrder(l as i64)));
        }
        Ok(PyCyclo(CycloNum::zeta(l)))
    }

    #[getter]
    fn order(&self) -> u32 {
        self.0.order()
    }

    /// Rational coefficients in the power basis, constant term first.
    fn coeffs(&self) -> Vec<String> {
        self.0.coeffs().iter().map(qsaa_core::cyclo::rational_to_string).collect()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn inv(&self) -> PyResult<Self> {
        self.0.inv().map(PyCyclo).map_err(err)
    }

    fn __pow__(&self, k: i64, _modulo: Option<i64>) -> PyResult<Self> {
        self.0.pow(k).map(PyCyclo).map_err(err)
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.0.checked_add(&other.0).map(PyCyclo).map_err(err)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.0.checked_sub(&other.0).map(PyCyclo).map_err(err)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.checked_mul(&other.0).map(PyCyclo).map_err(err)
    }

    fn __truediv__(&self, other: &Self) -> PyResult<Self> {
        self.0.checked_div(&other.0).map(PyCyclo).map_err(err)
    }

    fn __neg__(&self) -> Self {
        PyCyclo(-&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Cyclo({}, '{}')", self.0.order(), self.0)
    }
}

/// Finite-dimensional module given by action matrices.
#[pyclass(name = "Module", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyMatrixModule(MatrixModule);

#[pymethods]
impl PyMatrixModule {
    /// Reads the JSON module format; relations are checked unless `check` is false.
    #[staticmethod]
    #[pyo3(signature = (text, check = true))]
    fn from_json(text: &str, check: bool) -> PyResult<Self> {
        module_from_str(text, check).map(PyMatrixModule).map_err(err)
    }

    fn to_json(&self) -> String {
        module_to_json(&self.0).to_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn order(&self) -> u32 {
        self.0.order()
    }

    #[getter]
    fn presentation(&self) -> &'static str {
        self.0.presentation().name()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.0.labels().to_vec()
    }

    /// Matrix of a generator as rows of literal strings.
    fn matrix(&self, generator: &str) -> PyResult<Vec<Vec<String>>> {
        let g: Generator = generator.parse().map_err(err)?;
        let m = self.0.matrix(g).map_err(err)?;
        Ok((0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect())
    }

    /// Descriptions of every failing defining relation.
    fn relation_failures(&self) -> Vec<String> {
        self.0
            .verify_relations()
            .into_iter()
            .map(|v| format!("{} at ({}, {}): residual {}", v.relation, v.row, v.col, v.residual))
            .collect()
    }

    /// `"simple"`, `"not-simple"` or `"undetermined"`.
    fn simplicity(&self) -> &'static str {
        self.0.is_simple().label()
    }

    fn is_simple(&self) -> bool {
        self.0.is_simple() == Simplicity::Simple
    }

    fn closure_dim(&self) -> usize {
        self.0.algebra_closure_dim()
    }

    fn hom_dim(&self, other: &Self) -> PyResult<usize> {
        self.0.hom_space(&other.0).map(|h| h.len()).map_err(err)
    }

    /// Matrix by which an algebra element, written as text, acts.
    fn act(&self, expr: &str) -> PyResult<Vec<Vec<String>>> {
        let x = parse_element(self.0.order(), self.0.presentation(), expr).map_err(err)?;
        let m = self.0.act(&x).map_err(err)?;
        Ok((0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect())
    }

    fn __repr__(&self) -> String {
        format!("Module(l={}, {}, dim={})", self.0.order(), self.0.presentation().name(), self.0.dim())
    }
}

fn simple_params(kind: &str, l: u32, mu: &str) -> PyResult<SimpleParams> {
    let kind: SimpleType = kind.parse().map_err(err)?;
    SimpleParams::new(kind, parse_cyclo_list(l, mu).map_err(err)?).map_err(err)
}

/// One of the simple modules `m1`, `m2`, `m3`; `mu` is a comma-separated list.
#[pyfunction]
fn build(kind: &str, l: u32, mu: &str) -> PyResult<PyMatrixModule> {
    let p = simple_params(kind, l, mu)?;
    simple_mods::build(l, &p).map(PyMatrixModule).map_err(err)
}

/// Shift exponents `(r1, r2)` of an isomorphism, or `None`.
#[pyfunction]
fn iso(kind: &str, l: u32, mu: &str, gamma: &str) -> PyResult<Option<(u32, u32)>> {
    let a = simple_params(kind, l, mu)?;
    let b = simple_params(kind, l, gamma)?;
    Ok(simple_mods::iso(l, &a, &b).map_err(err)?.map(|w| (w.r1, w.r2)))
}

/// The coarser decision rule without the extra even-order invariants.
#[pyfunction]
fn iso_coarse(kind: &str, l: u32, mu: &str, gamma: &str) -> PyResult<Option<(u32, u32)>> {
    let a = simple_params(kind, l, mu)?;
    let b = simple_params(kind, l, gamma)?;
    Ok(simple_mods::iso_coarse(l, &a, &b).map_err(err)?.map(|w| (w.r1, w.r2)))
}

#[pyfunction]
#[pyo3(signature = (module, hints = None))]
fn classify<'py>(py: Python<'py>, module: &PyMatrixModule, hints: Option<&str>) -> PyResult<Bound<'py, PyDict>> {
    let l = module.0.order();
    let hints = match hints {
        Some(h) => parse_cyclo_list(l, h).map_err(err)?,
        None => Vec::new(),
    };
    let c = simple_mods::classify(&module.0, &hints).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("type", c.kind.name())?;
    d.set_item("params", c.params.mu().iter().map(ToString::to_string).collect::<Vec<_>>())?;
    d.set_item("e_shift", c.e_shift)?;
    d.set_item("explicit", c.explicit)?;
    Ok(d)
}

/// PI degree of `"qsaa"`, `"A"` or `"B"`.
#[pyfunction]
fn pideg(algebra: &str, l: u32) -> PyResult<i64> {
    match algebra {
        "qsaa" => pideg_qsaa(l).map_err(err),
        "A" | "B" => pideg_smash(l).map_err(err),
        other => Err(QsaaError::new_err(format!("unknown algebra '{other}'"))),
    }
}

/// Block factors and kernel dimension of a skew-symmetric integer matrix.
#[pyfunction]
fn skew_factors(matrix: Vec<Vec<i64>>) -> PyResult<(Vec<i64>, usize)> {
    let nf = skew_normal_form(&SkewIntMatrix::new(matrix).map_err(err)?);
    Ok((nf.factors, nf.kernel_dim))
}

fn verma_params(l: u32, lambda1: &str, lambda2: &str) -> PyResult<VermaParams> {
    VermaParams::new(parse_cyclo(l, lambda1).map_err(err)?, parse_cyclo(l, lambda2).map_err(err)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (l, p, lambda1 = "1", lambda2 = "1"))]
fn verma_quotient(l: u32, p: u32, lambda1: &str, lambda2: &str) -> PyResult<PyMatrixModule> {
    verma::build_q(l, p, &verma_params(l, lambda1, lambda2)?).map(PyMatrixModule).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (l, p, lambda1 = "1", lambda2 = "1"))]
fn verma_verdicts<'py>(
    py: Python<'py>,
    l: u32,
    p: u32,
    lambda1: &str,
    lambda2: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let v = verma::verdicts(l, p, &verma_params(l, lambda1, lambda2)?).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("simple", v.simple)?;
    d.set_item("semisimple", v.semisimple)?;
    d.set_item("indecomposable", v.indecomposable)?;
    d.set_item("witness_dim", v.witness.map(|w| w.dim()))?;
    d.set_item("complements", v.complements)?;
    d.set_item("end_quotient_dim", v.end_quotient_dim)?;
    Ok(d)
}

/// Module over the subalgebra from `lambda1, lambda2, lambda3, xi, alpha`.
#[pyfunction]
fn build_n1(l: u32, params: &str) -> PyResult<PyMatrixModule> {
    let v = parse_cyclo_list(l, params).map_err(err)?;
    let [l1, l2, l3, xi, alpha]: [CycloNum; 5] = v
        .try_into()
        .map_err(|_| QsaaError::new_err("expected five parameters lambda1,lambda2,lambda3,xi,alpha"))?;
    let p = BModuleParams::new(l1, l2, l3, xi, alpha).map_err(err)?;
    smash::build_n1(l, &p).map(PyMatrixModule).map_err(err)
}

#[pyfunction]
fn lift(module: &PyMatrixModule) -> PyResult<PyMatrixModule> {
    smash::lift_to_a(&module.0).map(PyMatrixModule).map_err(err)
}

#[pyfunction]
fn restrict(module: &PyMatrixModule) -> PyResult<PyMatrixModule> {
    smash::restrict_to_b(&module.0).map(PyMatrixModule).map_err(err)
}

/// Normal form of an element of `"qsaa"`, `"A"` or `"B"`.
#[pyfunction]
fn normal_form(algebra: &str, l: u32, expr: &str) -> PyResult<String> {
    let pres: Presentation = algebra.parse().map_err(err)?;
    Ok(parse_element(l, pres, expr).map_err(err)?.to_string())
}

#[pymodule]
fn qsaa(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("QsaaError", m.py().get_type::<QsaaError>())?;
    m.add("MathError", m.py().get_type::<MathError>())?;
    m.add_class::<PyCyclo>()?;
    m.add_class::<PyMatrixModule>()?;
    m.add_function(wrap_pyfunction!(build, m)?)?;
    m.add_function(wrap_pyfunction!(iso, m)?)?;
    m.add_function(wrap_pyfunction!(iso_coarse, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(pideg, m)?)?;
    m.add_function(wrap_pyfunction!(skew_factors, m)?)?;
    m.add_function(wrap_pyfunction!(verma_quotient, m)?)?;
    m.add_function(wrap_pyfunction!(verma_verdicts, m)?)?;
    m.add_function(wrap_pyfunction!(build_n1, m)?)?;
    m.add_function(wrap_pyfunction!(lift, m)?)?;
    m.add_function(wrap_pyfunction!(restrict, m)?)?;
    m.add_function(wrap_pyfunction!(normal_form, m)?)?;
    Ok(())
}
