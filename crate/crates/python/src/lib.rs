//! Python bindings: root data, weight multiplicities, torus elements,
//! spectra and the verification checks.

use std::sync::Arc;

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use spectra::rootdata::{Family, GroupType, RootDatum};
use spectra::spectra::Spectrum;
use spectra::torus::{generic_stratum_element, StratumSpec, TorusElement};
use spectra::verify::{self, VerificationReport};
use spectra::weights::{Dominance, LevelCache, Weight};
use spectra::{Error, VALIDITY_BANNER};

create_exception!(torus_spectra, ResourceLimitError, PyException);

fn py_err(e: Error) -> PyErr {
    if e.is_resource_limit() {
        ResourceLimitError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn coords(w: &Weight) -> Vec<i64> {
    w.coords().to_vec()
}

/// Root datum of a simply connected simple group (`"A3"`, `"G2"`, ...).
#[pyclass(name = "RootDatum", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyRootDatum {
    inner: Arc<RootDatum>,
}

impl PyRootDatum {
    fn weight(&self, c: Vec<i64>) -> PyResult<Weight> {
        self.inner.weight(c).map_err(py_err)
    }

    fn dominant(&self, c: Vec<i64>) -> PyResult<Weight> {
        let w = self.weight(c)?;
        if !w.is_dominant() {
            return Err(py_err(Error::NotDominant(w.to_string())));
        }
        Ok(w)
    }
}

#[pymethods]
impl PyRootDatum {
    #[new]
    fn new(group: &str) -> PyResult<Self> {
        let ty: GroupType = group.trim().parse().map_err(py_err)?;
        Ok(PyRootDatum {
            inner: Arc::new(RootDatum::from_type(ty)),
        })
    }

    #[getter]
    fn family(&self) -> String {
        self.inner.family().letter().to_string()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// `cartan[i][j] = <alpha_j, alpha_i^vee>`.
    #[getter]
    fn cartan(&self) -> Vec<Vec<i64>> {
        self.inner.cartan().to_vec()
    }

    fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.inner.positive_roots().iter().map(coords).collect()
    }

    fn fundamental(&self, i: usize) -> PyResult<Vec<i64>> {
        if i >= self.inner.rank() {
            return Err(PyValueError::new_err(format!("no fundamental weight {i}")));
        }
        Ok(coords(&self.inner.fundamental(i)))
    }

    fn weyl_group_order(&self) -> u128 {
        self.inner.weyl_group_order()
    }

    fn weyl_dimension(&self, highest: Vec<i64>) -> PyResult<BigInt> {
        let w = self.weight(highest)?;
        self.inner.weyl_dimension(&w).map_err(py_err)
    }

    fn weyl_orbit(&self, weight: Vec<i64>) -> PyResult<Vec<Vec<i64>>> {
        let w = self.weight(weight)?;
        Ok(self.inner.weyl_orbit(&w).map_err(py_err)?.iter().map(coords).collect())
    }

    /// `"equal"`, `"first"` (a succeeds b), `"second"` or `"incomparable"`.
    fn dominance_compare(&self, a: Vec<i64>, b: Vec<i64>) -> PyResult<&'static str> {
        let (a, b) = (self.weight(a)?, self.weight(b)?);
        Ok(match self.inner.dominance_compare(&a, &b).map_err(py_err)? {
            Dominance::Equal => "equal",
            Dominance::FirstSucceeds => "first",
            Dominance::SecondSucceeds => "second",
            Dominance::Incomparable => "incomparable",
        })
    }

    fn is_minuscule(&self, weight: Vec<i64>) -> PyResult<bool> {
        Ok(self.inner.is_minuscule(&self.weight(weight)?))
    }

    fn is_radical(&self, weight: Vec<i64>) -> PyResult<bool> {
        Ok(self.inner.is_radical(&self.weight(weight)?))
    }

    fn subdominant_weights(&self, highest: Vec<i64>) -> PyResult<Vec<Vec<i64>>> {
        let w = self.dominant(highest)?;
        Ok(self.inner.subdominant_weights(&w).map_err(py_err)?.iter().map(coords).collect())
    }

    fn level(&self, highest: Vec<i64>) -> PyResult<u32> {
        let w = self.dominant(highest)?;
        LevelCache::new(&self.inner).level(&w).map_err(py_err)
    }

    /// Weights of `V(highest)` with multiplicities.
    fn weights(&self, highest: Vec<i64>) -> PyResult<Vec<(Vec<i64>, u64)>> {
        let w = self.dominant(highest)?;
        let ms = self.inner.freudenthal_multiplicities(&w).map_err(py_err)?;
        Ok(ms.entries().iter().map(|(w, m)| (coords(w), *m)).collect())
    }

    fn __repr__(&self) -> String {
        format!("RootDatum('{}')", self.inner.group_type())
    }
}

/// A semisimple element of the maximal torus with symbolic eigenvalues.
#[pyclass(name = "TorusElement", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyTorusElement {
    inner: TorusElement,
}

#[pymethods]
impl PyTorusElement {
    /// Epsilon shorthand such as `"a,a,1/a,1/a"` (families A-D).
    #[staticmethod]
    fn from_epsilon(datum: &PyRootDatum, text: &str) -> PyResult<Self> {
        let inner = TorusElement::parse_epsilon(datum.inner.clone(), text).map_err(py_err)?;
        Ok(PyTorusElement { inner })
    }

    /// `{"omega_values": [{"torsion": "1/2", "free": [1, 0]}, ...]}`.
    #[staticmethod]
    fn from_json(datum: &PyRootDatum, text: &str) -> PyResult<Self> {
        let inner = TorusElement::parse_json(datum.inner.clone(), text).map_err(py_err)?;
        Ok(PyTorusElement { inner })
    }

    /// Generic element of the stratum on which the given weights are trivial.
    #[staticmethod]
    #[pyo3(signature = (datum, kernel, seed = 0))]
    fn generic(datum: &PyRootDatum, kernel: Vec<Vec<i64>>, seed: u64) -> PyResult<Self> {
        let kernel = kernel.into_iter().map(|c| datum.weight(c)).collect::<PyResult<_>>()?;
        let inner = generic_stratum_element(datum.inner.clone(), &StratumSpec::new(kernel), seed)
            .map_err(py_err)?;
        Ok(PyTorusElement { inner })
    }

    fn is_regular(&self) -> bool {
        self.inner.is_regular()
    }

    fn is_central(&self) -> bool {
        self.inner.is_central()
    }

    fn vanishing_roots(&self) -> Vec<Vec<i64>> {
        self.inner.vanishing_roots().iter().map(coords).collect()
    }

    /// `mu(s)` rendered as a monomial, e.g. `"-a^2*b"`.
    fn evaluate(&self, weight: Vec<i64>) -> PyResult<String> {
        let w = self.inner.datum().weight(weight).map_err(py_err)?;
        Ok(self.inner.evaluate(&w).to_string())
    }

    fn spectrum(&self, highest: Vec<i64>) -> PyResult<PySpectrum> {
        let w = self.inner.datum().weight(highest).map_err(py_err)?;
        let inner = spectra::spectrum(&self.inner, &w).map_err(py_err)?;
        Ok(PySpectrum { inner })
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner.to_json()).expect("serializable")
    }

    fn __repr__(&self) -> String {
        match self.inner.label() {
            Some(l) => format!("TorusElement({l})"),
            None => format!("TorusElement({})", self.to_json()),
        }
    }
}

/// Eigenvalues of a torus element on a module, with multiplicities.
#[pyclass(name = "Spectrum", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySpectrum {
    inner: Spectrum,
}

#[pymethods]
impl PySpectrum {
    fn entries(&self) -> Vec<(String, u64)> {
        self.inner.entries().map(|(v, m)| (v.to_string(), m)).collect()
    }

    fn total(&self) -> u64 {
        self.inner.total()
    }

    /// `"Simple"`, `"AlmostSimple"` or `"NotAlmostSimple"`.
    fn classification(&self) -> String {
        self.inner.classify().kind.to_string()
    }

    fn is_almost_simple(&self) -> bool {
        self.inner.classify().is_almost_simple()
    }

    fn max_multiplicity(&self) -> u64 {
        self.inner.classify().max_multiplicity
    }

    fn tensor(&self, other: &PySpectrum) -> PySpectrum {
        PySpectrum {
            inner: self.inner.tensor(&other.inner),
        }
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner.to_json()).expect("serializable")
    }

    fn __len__(&self) -> usize {
        self.inner.distinct_values()
    }

    fn __repr__(&self) -> String {
        format!("Spectrum({})", self.inner)
    }
}

/// Outcome of a verification check.
#[pyclass(name = "Report", frozen)]
struct PyReport {
    inner: VerificationReport,
}

#[pymethods]
impl PyReport {
    #[getter]
    fn check_id(&self) -> String {
        self.inner.check_id.clone()
    }

    #[getter]
    fn passed(&self) -> bool {
        self.inner.passed()
    }

    #[getter]
    fn scope(&self) -> Option<String> {
        self.inner.scope.clone()
    }

    /// `(label, status, expected, actual)` per case.
    fn cases(&self) -> Vec<(String, String, String, String)> {
        self.inner
            .cases
            .iter()
            .map(|c| {
                (
                    c.label.clone(),
                    format!("{:?}", c.status),
                    c.expected.clone(),
                    c.actual.clone(),
                )
            })
            .collect()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("serializable")
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }
}

fn family(c: char) -> PyResult<Family> {
    Family::from_letter(c.to_ascii_uppercase())
        .ok_or_else(|| PyValueError::new_err(format!("unknown family {c}")))
}

/// Runs a check: `level-table`, `witnesses`, `c99`, `bounds`, `natural` or `thm12`.
#[pyfunction]
#[pyo3(signature = (check, family_letter = None, rank = None, dim_bound = 30, depth = 1, seed = 0, samples = 500))]
fn run_check(
    check: &str,
    family_letter: Option<char>,
    rank: Option<usize>,
    dim_bound: u64,
    depth: usize,
    seed: u64,
    samples: usize,
) -> PyResult<PyReport> {
    let group = || -> PyResult<(Family, usize)> {
        match (family_letter, rank) {
            (Some(f), Some(r)) => Ok((family(f)?, r)),
            _ => Err(PyValueError::new_err(format!("check {check} needs family_letter and rank"))),
        }
    };
    let datum = || -> PyResult<Arc<RootDatum>> {
        let (f, r) = group()?;
        Ok(Arc::new(RootDatum::new(f, r).map_err(py_err)?))
    };
    let report = match check {
        "level-table" => {
            let (f, r) = group()?;
            verify::verify_level_table(f, r)
        }
        "witnesses" => verify::verify_paper_witnesses(),
        "c99" => verify::verify_theorem_c99(&datum()?, dim_bound, depth, seed),
        "bounds" => verify::verify_corollary_bounds(&datum()?, dim_bound, seed),
        "natural" => {
            let (f, r) = group()?;
            verify::verify_natural_module_regularity(f, r, samples, seed)
        }
        "thm12" => verify::verify_theorem_12(&datum()?, dim_bound, depth, samples, seed),
        other => return Err(PyValueError::new_err(format!("unknown check {other}"))),
    }
    .map_err(py_err)?;
    Ok(PyReport { inner: report })
}

#[pymodule]
fn torus_spectra(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootDatum>()?;
    m.add_class::<PyTorusElement>()?;
    m.add_class::<PySpectrum>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    m.add("ResourceLimitError", m.py().get_type::<ResourceLimitError>())?;
    m.add("VALIDITY_BANNER", VALIDITY_BANNER)?;
    Ok(())
}
