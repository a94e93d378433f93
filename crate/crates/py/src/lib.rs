//! Python bindings. Words are lists of 1-based letters, multidegrees are lists
//! of counts, and scalars cross the boundary as strings.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use nilcube::elements::{canonicalize, generate_S};
use nilcube::{certificates, cli, invariants, linalg, nilpotency, tables};
use nilcube::{EchelonSystem, Element, FieldSpec, Multidegree, Scalar, Word};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field(p: u32) -> PyResult<FieldSpec> {
    FieldSpec::new(p).map_err(err)
}

fn word(letters: Vec<u8>) -> PyResult<Word> {
    Word::new(letters).map_err(err)
}

/// `Vec<u8>` would surface as `bytes` in Python, so words go out as `list[int]`.
fn ints(w: &Word) -> Vec<u32> {
    w.letters().iter().map(|&l| l as u32).collect()
}

fn letters(words: &[Word]) -> Vec<Vec<u32>> {
    words.iter().map(ints).collect()
}

#[derive(FromPyObject)]
enum Coefficient {
    Int(i64),
    Text(String),
}

fn scalar(f: FieldSpec, c: Coefficient) -> PyResult<Scalar> {
    match c {
        Coefficient::Int(n) => Ok(f.from_i64(n)),
        Coefficient::Text(s) => f.parse_scalar(&s).map_err(err),
    }
}

/// A homogeneous element of the free algebra.
#[pyclass(name = "Element", module = "nilcube_py", frozen)]
struct PyElement {
    inner: Element,
}

#[pymethods]
impl PyElement {
    /// `terms` is a list of `(letters, coefficient)` pairs; coefficients are
    /// ints or strings such as `"3/4"`.
    #[new]
    fn new(p: u32, terms: Vec<(Vec<u8>, Coefficient)>) -> PyResult<Self> {
        let f = field(p)?;
        let mut list = Vec::with_capacity(terms.len());
        for (l, c) in terms {
            list.push((word(l)?, scalar(f, c)?));
        }
        Ok(PyElement {
            inner: Element::from_terms(f, list).map_err(err)?,
        })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.field().characteristic()
    }

    #[getter]
    fn mdeg(&self) -> Vec<u32> {
        self.inner.mdeg().counts().to_vec()
    }

    /// Terms in descending word order.
    fn terms(&self) -> Vec<(Vec<u32>, String)> {
        self.inner
            .terms()
            .iter()
            .rev()
            .map(|(w, c)| (ints(w), c.to_string()))
            .collect()
    }

    fn highest_term(&self) -> Option<(Vec<u32>, String)> {
        self.inner
            .highest_term()
            .map(|(w, c)| (ints(w), c.to_string()))
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn canonicalize(&self) -> Self {
        PyElement {
            inner: canonicalize(&self.inner),
        }
    }

    fn __add__(&self, other: &PyElement) -> PyResult<Self> {
        Ok(PyElement {
            inner: self.inner.add(&other.inner).map_err(err)?,
        })
    }

    fn __sub__(&self, other: &PyElement) -> PyResult<Self> {
        Ok(PyElement {
            inner: self.inner.sub(&other.inner).map_err(err)?,
        })
    }

    fn __mul__(&self, other: &PyElement) -> PyResult<Self> {
        Ok(PyElement {
            inner: self.inner.mul(&other.inner).map_err(err)?,
        })
    }

    fn __eq__(&self, other: &PyElement) -> bool {
        self.inner == other.inner
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        let body: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(w, c)| format!("{c}*{w:?}"))
            .collect();
        format!("Element(p={}, {})", self.p(), body.join(" + "))
    }
}

/// The reduced identity system of one homogeneous component.
#[pyclass(name = "EchelonSystem", module = "nilcube_py", frozen)]
struct PyEchelonSystem {
    inner: EchelonSystem,
}

#[pymethods]
impl PyEchelonSystem {
    #[new]
    fn new(p: u32, mdeg: Vec<u32>) -> PyResult<Self> {
        let inner = EchelonSystem::for_component(&Multidegree::new(mdeg), field(p)?).map_err(err)?;
        Ok(PyEchelonSystem { inner })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn word_count(&self) -> usize {
        self.inner.word_count()
    }

    #[getter]
    fn quotient_dim(&self) -> usize {
        self.inner.quotient_dim()
    }

    #[getter]
    fn denominator_flag(&self) -> bool {
        self.inner.denominator_flag()
    }

    fn minimal_basis(&self) -> Vec<Vec<u32>> {
        letters(&self.inner.minimal_basis())
    }

    fn leading_words(&self) -> Vec<Vec<u32>> {
        letters(&self.inner.leading_words())
    }

    fn reduce(&self, g: &PyElement) -> PyResult<PyElement> {
        Ok(PyElement {
            inner: self.inner.reduce(&g.inner).map_err(err)?,
        })
    }

    fn membership(&self, g: &PyElement) -> PyResult<bool> {
        self.inner.membership(&g.inner).map_err(err)
    }

    fn is_quotient_basis(&self, words: Vec<Vec<u8>>) -> PyResult<bool> {
        let words = words.into_iter().map(word).collect::<PyResult<Vec<_>>>()?;
        self.inner.is_quotient_basis(&words).map_err(err)
    }
}

#[pyfunction]
fn dim_component(p: u32, mdeg: Vec<u32>) -> PyResult<usize> {
    linalg::dim_component(field(p)?, &Multidegree::new(mdeg)).map_err(err)
}

#[pyfunction(name = "generate_S")]
fn generate_s(p: u32, mdeg: Vec<u32>) -> PyResult<Vec<PyElement>> {
    let rows = generate_S(&Multidegree::new(mdeg), field(p)?).map_err(err)?;
    Ok(rows.into_iter().map(|inner| PyElement { inner }).collect())
}

/// Closed-form table: `(words, source)`.
#[pyfunction]
fn paper_table(p: u32, mdeg: Vec<u32>) -> PyResult<(Vec<Vec<u32>>, String)> {
    let t = tables::paper_table(field(p)?, &Multidegree::new(mdeg)).map_err(err)?;
    let source = serde_json::to_value(t.source).map_err(err)?;
    Ok((letters(&t.words), source.as_str().unwrap_or_default().to_string()))
}

#[pyfunction(name = "B1d")]
fn b1d(p: u32, d: usize) -> PyResult<Vec<Vec<u32>>> {
    Ok(letters(&tables::B1d(p, d).map_err(err)?.words))
}

#[pyfunction(name = "C_formula")]
fn c_formula(p: u32, d: usize) -> PyResult<usize> {
    nilpotency::C_formula(p, d).map_err(err)
}

/// `(C, witness letters, method)`.
#[pyfunction]
#[pyo3(signature = (p, d, max_words = 20_000))]
fn nilpotency_degree(p: u32, d: usize, max_words: u128) -> PyResult<(usize, Option<Vec<u32>>, String)> {
    let r = nilpotency::C_compute(p, d, max_words).map_err(err)?;
    let method = serde_json::to_value(r.method).map_err(err)?;
    Ok((
        r.c,
        r.witness.as_ref().map(ints),
        method.as_str().unwrap_or_default().to_string(),
    ))
}

/// `(independent, method)` for the recursive multilinear table of degree `d`.
#[pyfunction]
fn certify(p: u32, d: usize) -> PyResult<(bool, String)> {
    let chain = certificates::certify_chain(p, d).map_err(err)?;
    let last = chain.last().ok_or_else(|| err("degree must be at least 5"))?;
    let method = serde_json::to_value(last.method).map_err(err)?;
    Ok((
        last.d == d && last.independent,
        method.as_str().unwrap_or_default().to_string(),
    ))
}

/// `(total, {degree: count})` for the invariant generating system.
#[pyfunction]
fn generator_counts(p: u32, d: usize) -> PyResult<(usize, BTreeMap<usize, usize>)> {
    let g = invariants::full_system(p, d).map_err(err)?;
    Ok((g.total(), g.by_degree()))
}

/// Runs the command line front end; returns `(exit code, output text)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String) {
    cli::run(std::iter::once("nilcube".to_string()).chain(args))
}

#[pymodule]
fn nilcube_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyElement>()?;
    m.add_class::<PyEchelonSystem>()?;
    m.add_function(wrap_pyfunction!(dim_component, m)?)?;
    m.add_function(wrap_pyfunction!(generate_s, m)?)?;
    m.add_function(wrap_pyfunction!(paper_table, m)?)?;
    m.add_function(wrap_pyfunction!(b1d, m)?)?;
    m.add_function(wrap_pyfunction!(c_formula, m)?)?;
    m.add_function(wrap_pyfunction!(nilpotency_degree, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(generator_counts, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
