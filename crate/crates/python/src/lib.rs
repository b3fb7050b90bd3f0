use std::collections::BTreeMap;

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use quandle_core::cyclotomic::{crt_residues, factor_symmetric_poly, symmetric_poly};
use quandle_core::finite::analysis;
use quandle_core::finite::construct::{affine_quandle, free_2reductive_symmetric, Automorphism, DEFAULT_SIZE_LIMIT};
use quandle_core::finite::{FiniteBinaryTable, DEFAULT_CLOSURE_CAP};
use quandle_core::free::{FreeElement, FreeQuandle, GeneratorSet, Vector};
use quandle_core::poly::LaurentPoly;
use quandle_core::ring::RingSpec;
use quandle_core::term::{self, VarietySpec};
use quandle_core::Error;

create_exception!(quandle, QuandleError, PyValueError);

fn err(e: Error) -> PyErr {
    QuandleError::new_err(e.to_string())
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for Result<T, Error> {
    fn py(self) -> PyResult<T> {
        self.map_err(err)
    }
}

/// Laurent polynomial over the integers.
#[pyclass(name = "Poly", module = "quandle", skip_from_py_object, frozen, eq, hash)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPoly(LaurentPoly);

#[pymethods]
impl PyPoly {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Self(text.parse().py()?))
    }

    /// `{exponent: coefficient}` for the nonzero terms.
    fn coeffs(&self) -> BTreeMap<i64, num_bigint::BigInt> {
        self.0.terms().map(|(e, c)| (e, c.clone())).collect()
    }

    fn eval_at_one(&self) -> num_bigint::BigInt {
        self.0.eval_at_one()
    }

    fn __add__(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.0)
    }
}

/// Reduces `poly` in the ring given as `laurent`, `mod <f>` or `mod <f> char <n>`.
#[pyfunction]
fn reduce(poly: &PyPoly, ring: &str) -> PyResult<PyPoly> {
    let spec: RingSpec = ring.parse().py()?;
    Ok(PyPoly(spec.reduce_poly(&poly.0)))
}

#[pyclass(name = "FreeElement", module = "quandle", skip_from_py_object, frozen, eq)]
#[derive(Clone, PartialEq)]
struct PyFreeElement(FreeElement);

#[pymethods]
impl PyFreeElement {
    #[getter]
    fn gen(&self) -> String {
        self.0.gen().to_string()
    }

    #[getter]
    fn coeffs(&self) -> BTreeMap<String, String> {
        self.0.coeffs().coords().map(|(s, p)| (s.to_string(), p.to_string())).collect()
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("FreeElement{}", self.0)
    }
}

/// Free quandle of a variety over named generators (the first is the base).
#[pyclass(name = "FreeQuandle", module = "quandle", skip_from_py_object, frozen)]
struct PyFreeQuandle(FreeQuandle);

fn coords_from(map: BTreeMap<String, String>) -> PyResult<Vec<(String, LaurentPoly)>> {
    map.into_iter().map(|(s, p)| Ok((s, p.parse().py()?))).collect()
}

#[pymethods]
impl PyFreeQuandle {
    #[new]
    #[pyo3(signature = (gens, variety = "medial"))]
    fn new(gens: Vec<String>, variety: &str) -> PyResult<Self> {
        let v: VarietySpec = variety.parse().py()?;
        Ok(Self(v.context(GeneratorSet::new(gens).py()?).py()?))
    }

    #[getter]
    fn ring(&self) -> String {
        self.0.ring().to_string()
    }

    #[getter]
    fn gens(&self) -> Vec<String> {
        self.0.gens().names().to_vec()
    }

    fn generator(&self, sym: &str) -> PyResult<PyFreeElement> {
        Ok(PyFreeElement(self.0.generator(sym).py()?))
    }

    /// Element with coefficient polynomials `{symbol: "poly"}` and generator `gen`.
    fn element(&self, coeffs: BTreeMap<String, String>, gen: &str) -> PyResult<PyFreeElement> {
        Ok(PyFreeElement(self.0.element(coords_from(coeffs)?, gen).py()?))
    }

    fn star(&self, a: &PyFreeElement, b: &PyFreeElement) -> PyResult<PyFreeElement> {
        Ok(PyFreeElement(self.0.star(&a.0, &b.0).py()?))
    }

    fn backslash(&self, a: &PyFreeElement, b: &PyFreeElement) -> PyResult<PyFreeElement> {
        Ok(PyFreeElement(self.0.backslash(&a.0, &b.0).py()?))
    }

    fn embed(&self, a: &PyFreeElement) -> PyResult<BTreeMap<String, String>> {
        let v = self.0.embed_affine(&a.0).py()?;
        Ok(v.coords().map(|(s, p)| (s.to_string(), p.to_string())).collect())
    }

    fn unembed(&self, vector: BTreeMap<String, String>) -> PyResult<PyFreeElement> {
        let v = Vector::from_coords(self.0.ring(), coords_from(vector)?);
        Ok(PyFreeElement(self.0.unembed_affine(&v).py()?))
    }

    /// `[(symbol, polynomial)]` such that the element is the product of
    /// `(L_(0,s) L_(0,z)^-1)^f` applied to its generator.
    fn decompose(&self, a: &PyFreeElement) -> Vec<(String, String)> {
        self.0
            .decompose(&a.0)
            .into_iter()
            .map(|(s, f)| (s, f.value().to_string()))
            .collect()
    }

    fn joyce(&self, a: &PyFreeElement) -> PyResult<Vec<num_bigint::BigInt>> {
        self.0.joyce_isomorphism(&a.0).py()
    }

    fn from_json(&self, text: &str) -> PyResult<PyFreeElement> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| QuandleError::new_err(e.to_string()))?;
        Ok(PyFreeElement(self.0.element_from_json(&v).py()?))
    }
}

#[pyfunction]
#[pyo3(signature = (term, variety = "medial"))]
fn normalize(term: &str, variety: &str) -> PyResult<PyFreeElement> {
    let t = term::parse(term).py()?;
    let v: VarietySpec = variety.parse().py()?;
    Ok(PyFreeElement(term::normalize(&t, &v).py()?))
}

/// `(valid, lhs normal form, rhs normal form)`.
#[pyfunction]
#[pyo3(signature = (lhs, rhs, variety = "medial"))]
fn decide(lhs: &str, rhs: &str, variety: &str) -> PyResult<(bool, PyFreeElement, PyFreeElement)> {
    let v: VarietySpec = variety.parse().py()?;
    let verdict = term::decide_identity(&term::parse(lhs).py()?, &term::parse(rhs).py()?, &v).py()?;
    let (l, r) = verdict.normal_forms();
    Ok((verdict.is_valid(), PyFreeElement(l.clone()), PyFreeElement(r.clone())))
}

/// Cyclotomic factors of `1 + t + ... + t^(n-1)`, with the residues of
/// `element` when given.
#[pyfunction]
#[pyo3(signature = (n, element = None))]
fn crt(n: u64, element: Option<&PyPoly>) -> PyResult<(Vec<String>, Option<Vec<String>>)> {
    let factors = factor_symmetric_poly(n);
    let residues = match element {
        Some(p) => {
            let ring = RingSpec::quotient(&symmetric_poly(n)).py()?;
            Some(
                crt_residues(&ring.reduce(&p.0), &factors)
                    .py()?
                    .iter()
                    .map(|r| r.value().to_string())
                    .collect(),
            )
        }
        None => None,
    };
    Ok((factors.iter().map(|f| f.to_string()).collect(), residues))
}

/// Cayley table on `{0..n-1}`; row `x`, column `y` holds `x * y`.
#[pyclass(name = "Table", module = "quandle", skip_from_py_object, frozen, eq)]
#[derive(Clone, PartialEq)]
struct PyTable(FiniteBinaryTable);

#[pymethods]
impl PyTable {
    #[new]
    fn new(rows: Vec<Vec<u32>>) -> PyResult<Self> {
        Ok(Self(FiniteBinaryTable::from_rows(&rows).py()?))
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self(FiniteBinaryTable::parse(text).py()?))
    }

    #[staticmethod]
    fn affine(orders: Vec<u64>, u: i64) -> PyResult<Self> {
        Ok(Self(affine_quandle(&orders, &Automorphism::Scalar(u)).py()?))
    }

    #[staticmethod]
    fn affine_matrix(orders: Vec<u64>, matrix: Vec<Vec<i64>>) -> PyResult<Self> {
        Ok(Self(affine_quandle(&orders, &Automorphism::Matrix(matrix)).py()?))
    }

    /// Free 2-reductive `n`-symmetric quandle on `gens` generators.
    #[staticmethod]
    fn red2sym(n: u64, gens: usize) -> PyResult<Self> {
        let set = GeneratorSet::numbered(gens).py()?;
        Ok(Self(free_2reductive_symmetric(n, &set, DEFAULT_SIZE_LIMIT).py()?))
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    fn op(&self, x: u32, y: u32) -> PyResult<u32> {
        let n = self.0.size() as u32;
        if x >= n || y >= n {
            return Err(QuandleError::new_err("element out of range"));
        }
        Ok(self.0.op(x, y))
    }

    fn rows(&self) -> Vec<Vec<u32>> {
        self.0.rows()
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn check_axioms(&self) -> BTreeMap<&'static str, bool> {
        let r = self.0.check_axioms();
        BTreeMap::from([
            ("idempotent", r.idempotent),
            ("left_quasigroup", r.left_quasigroup),
            ("left_distributive", r.left_distributive),
            ("medial", r.medial),
        ])
    }

    fn is_quandle(&self) -> bool {
        self.0.is_quandle()
    }

    fn check_symmetry(&self, n: u64) -> bool {
        self.0.check_symmetry(n)
    }

    fn check_reductivity(&self, m: u64) -> bool {
        self.0.check_reductivity(m)
    }

    fn lmlt_order(&self) -> PyResult<usize> {
        Ok(analysis::lmlt(&self.0, DEFAULT_CLOSURE_CAP).py()?.order())
    }

    fn dis_order(&self) -> PyResult<usize> {
        Ok(analysis::dis(&self.0, DEFAULT_CLOSURE_CAP).py()?.order())
    }

    fn dis_abelian(&self) -> PyResult<bool> {
        Ok(analysis::dis(&self.0, DEFAULT_CLOSURE_CAP).py()?.is_abelian())
    }

    fn orbits(&self) -> PyResult<Vec<Vec<u32>>> {
        analysis::orbits(&self.0).py()
    }

    fn check_i_quandle(&self, f: &PyPoly) -> PyResult<bool> {
        analysis::check_i_quandle(&self.0, &f.0).py()
    }

    fn __repr__(&self) -> String {
        format!("Table(size={})", self.0.size())
    }
}

/// Runs the worked example check; returns `(passed, detail)`.
#[pyfunction]
fn verify_example() -> (bool, String) {
    let r = quandle_core::suite::worked_example();
    (r.passed, r.detail)
}

#[pymodule]
fn quandle(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("QuandleError", m.py().get_type::<QuandleError>())?;
    m.add_class::<PyPoly>()?;
    m.add_class::<PyFreeElement>()?;
    m.add_class::<PyFreeQuandle>()?;
    m.add_class::<PyTable>()?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(crt, m)?)?;
    m.add_function(wrap_pyfunction!(verify_example, m)?)?;
    Ok(())
}
