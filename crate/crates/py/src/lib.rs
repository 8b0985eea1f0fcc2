//! Python module `syzygy`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::{PyKeyError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use syzygy_core::bwb::{self, GrassmannWeight};
use syzygy_core::exactlinalg::{self, PrimeField, SparseMatrix, DEFAULT_PRIME};
use syzygy_core::koszul::{self, DEFAULT_ENTRY_BUDGET};
use syzygy_core::numerology;
use syzygy_core::runner::{self, RunConfig};
use syzygy_core::varieties::{K3Type, VarietySpec};
use syzygy_core::Error;

create_exception!(syzygy, SyzygyError, PyRuntimeError, "Computation failed.");
create_exception!(
    syzygy,
    DegenerateSampleError,
    SyzygyError,
    "Sampled equations were not generic."
);
create_exception!(
    syzygy,
    ResourceLimitError,
    SyzygyError,
    "A differential exceeded the entry budget."
);

fn to_py(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::InvalidInput(_) => PyValueError::new_err(msg),
        Error::MissingEntry { .. } => PyKeyError::new_err(msg),
        Error::DegenerateSample { .. } => DegenerateSampleError::new_err(msg),
        Error::ResourceLimit { .. } => ResourceLimitError::new_err(msg),
        _ => SyzygyError::new_err(msg),
    }
}

fn k3_type(name: &str) -> PyResult<K3Type> {
    K3Type::from_name(name).ok_or_else(|| PyValueError::new_err(format!("unknown K3 type {name}")))
}

/// Recipe for a polarized variety; equations are sampled from `seed`.
#[pyclass(frozen, module = "syzygy")]
struct Variety {
    spec: VarietySpec,
}

#[pymethods]
impl Variety {
    #[staticmethod]
    #[pyo3(signature = (n, prime = DEFAULT_PRIME))]
    fn rnc(n: usize, prime: u64) -> Self {
        Self {
            spec: VarietySpec::rnc(n).with_prime(prime),
        }
    }

    #[staticmethod]
    #[pyo3(signature = (g, seed = 0, prime = DEFAULT_PRIME))]
    fn canonical(g: usize, seed: u64, prime: u64) -> Self {
        Self {
            spec: VarietySpec::canonical(g, seed).with_prime(prime),
        }
    }

    /// `kind` is one of `quartic_P3`, `ci23_P4`, `ci222_P5`.
    #[staticmethod]
    #[pyo3(signature = (kind, seed = 0, prime = DEFAULT_PRIME))]
    fn k3(kind: &str, seed: u64, prime: u64) -> PyResult<Self> {
        Ok(Self {
            spec: VarietySpec::k3(k3_type(kind)?, seed).with_prime(prime),
        })
    }

    #[staticmethod]
    #[pyo3(signature = (kind, var = 0, seed = 0, prime = DEFAULT_PRIME))]
    fn k3_section(kind: &str, var: usize, seed: u64, prime: u64) -> PyResult<Self> {
        Ok(Self {
            spec: VarietySpec::k3_section(k3_type(kind)?, var, seed).with_prime(prime),
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        VarietySpec::from_json(text).map(|spec| Self { spec }).map_err(to_py)
    }

    fn to_json(&self) -> String {
        self.spec.to_json()
    }

    #[getter]
    fn constructor(&self) -> &str {
        &self.spec.constructor
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.spec.seed
    }

    #[getter]
    fn prime(&self) -> u64 {
        self.spec.prime
    }

    #[getter]
    fn genus(&self) -> Option<usize> {
        self.spec.genus()
    }

    #[getter]
    fn clifford_index(&self) -> Option<usize> {
        self.spec.clifford_index()
    }

    /// `dim R_q` of the section ring.
    fn hilbert(&self, q: usize) -> PyResult<usize> {
        let (ring, _) = self.spec.build_with_reseed().map_err(to_py)?;
        ring.dim(q).map_err(to_py)
    }

    #[pyo3(signature = (max_p = None, max_q = 3, crosscheck_primes = 1, entry_budget = DEFAULT_ENTRY_BUDGET))]
    fn betti(
        &self,
        py: Python<'_>,
        max_p: Option<usize>,
        max_q: usize,
        crosscheck_primes: usize,
        entry_budget: usize,
    ) -> PyResult<BettiTable> {
        let cfg = RunConfig {
            prime: self.spec.prime,
            seed: self.spec.seed,
            max_p,
            max_q,
            entry_budget,
            crosscheck_primes,
            ..Default::default()
        };
        let spec = self.spec.clone();
        let run = py.detach(move || runner::compute_betti(&spec, &cfg)).map_err(to_py)?;
        Ok(BettiTable { inner: run.table })
    }

    /// Rows `(p, expected, computed, matches)` comparing predicted and
    /// computed `K_{p,1}`.
    fn green_check(&self, py: Python<'_>) -> PyResult<Vec<(usize, String, usize, bool)>> {
        let cfg = RunConfig {
            prime: self.spec.prime,
            seed: self.spec.seed,
            ..Default::default()
        };
        let spec = self.spec.clone();
        let report = py.detach(move || runner::green_check(&spec, &cfg)).map_err(to_py)?;
        Ok(report
            .rows
            .iter()
            .map(|r| (r.p, expectation_name(r.expected), r.computed, r.matches))
            .collect())
    }

    fn __repr__(&self) -> String {
        format!("Variety({})", self.spec.to_json())
    }
}

#[pyclass(frozen, module = "syzygy")]
struct BettiTable {
    inner: koszul::BettiTable,
}

#[pymethods]
impl BettiTable {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        koszul::BettiTable::from_json(text)
            .map(|inner| Self { inner })
            .map_err(to_py)
    }

    #[getter]
    fn variety(&self) -> &str {
        &self.inner.variety
    }

    #[getter]
    fn prime(&self) -> u64 {
        self.inner.prime
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.inner.seed
    }

    #[getter]
    fn max_p(&self) -> usize {
        self.inner.max_p()
    }

    #[getter]
    fn max_q(&self) -> usize {
        self.inner.max_q()
    }

    /// `dim K_{p,q}`; raises `KeyError` outside the computed range.
    fn __getitem__(&self, key: (usize, usize)) -> PyResult<usize> {
        self.inner.entry(key.0, key.1).map_err(to_py)
    }

    fn row(&self, q: usize) -> Vec<usize> {
        self.inner.row(q)
    }

    fn entries(&self) -> BTreeMap<(usize, usize), usize> {
        self.inner.entries().clone()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn to_csv(&self) -> String {
        self.inner.to_csv()
    }

    fn __str__(&self) -> String {
        self.inner.to_pretty()
    }

    fn __repr__(&self) -> String {
        format!(
            "BettiTable({}, prime={}, seed={})",
            self.inner.variety, self.inner.prime, self.inner.seed
        )
    }
}

fn expectation_name(e: numerology::Expectation) -> String {
    use numerology::Expectation::*;
    match e {
        Zero => "zero",
        Nonzero => "nonzero",
        ConjecturedZero => "conjectured-zero",
        Unknown => "unknown",
    }
    .to_string()
}

/// Rank of an integer matrix reduced modulo `prime`.
#[pyfunction]
#[pyo3(signature = (rows, prime = DEFAULT_PRIME))]
fn rank(rows: Vec<Vec<i64>>, prime: u64) -> PyResult<usize> {
    let field = PrimeField::new(prime).map_err(to_py)?;
    let ncols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(PyValueError::new_err("rows have different lengths"));
    }
    let dense: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
        .collect();
    Ok(exactlinalg::rank(&SparseMatrix::from_dense(field, ncols, &dense)))
}

/// `dim K_{p,q}` of a variety.
#[pyfunction]
fn koszul_dim(variety: &Variety, p: usize, q: i64) -> PyResult<usize> {
    let (ring, _) = variety.spec.build_with_reseed().map_err(to_py)?;
    koszul::koszul_dim(&ring, p, q).map_err(to_py)
}

/// `(degree, dimension)` of the cohomology of `Σ^mu S*` on `G(r, n)`;
/// `degree` is `None` when everything vanishes.
#[pyfunction]
fn bott(r: usize, n: usize, mu: Vec<i64>) -> PyResult<(Option<usize>, BigUint)> {
    let res = bwb::bott(&GrassmannWeight::new(r, n, mu).map_err(to_py)?);
    Ok((res.degree, res.dimension))
}

/// Rows `(k, q, q', degree, dimension)` of the checked appendix sweep.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn verify_appendix(k_max: usize) -> PyResult<Vec<(usize, i64, i64, Option<usize>, BigUint)>> {
    Ok(bwb::verify_appendix(k_max)
        .map_err(to_py)?
        .into_iter()
        .map(|e| (e.k, e.q, e.q_prime, e.result.degree, e.result.dimension))
        .collect())
}

#[pyfunction]
fn dimension_identity(k: usize) -> bool {
    bwb::dimension_identity(k)
}

#[pyfunction]
fn generic_gonality(g: usize) -> PyResult<usize> {
    if g < 2 {
        return Err(PyValueError::new_err("g must be at least 2"));
    }
    Ok(numerology::generic_gonality(g))
}

#[pyfunction]
fn brill_noether_number(g: i64, r: i64, d: i64) -> i64 {
    numerology::brill_noether_number(g, r, d)
}

/// `{"k", "c1_sq", "c2", "chi"}` for the Lazarsfeld–Mukai bundle.
#[pyfunction]
fn lm_chi(k: u64) -> PyResult<BTreeMap<&'static str, i64>> {
    if k == 0 {
        return Err(PyValueError::new_err("k must be positive"));
    }
    let inv = numerology::lm_chi(k);
    Ok(BTreeMap::from([
        ("k", k as i64),
        ("c1_sq", inv.c1_sq),
        ("c2", inv.c2),
        ("chi", inv.chi),
    ]))
}

/// Pairs `(g, gon)` of the gonality band up to `g_max`, after checking the
/// parametrization.
#[pyfunction]
fn corollary2_range(g_max: usize) -> PyResult<Vec<(usize, usize)>> {
    numerology::corollary2_range(g_max).map(|r| r.members).map_err(to_py)
}

#[pyfunction]
fn green_prediction(g: usize, cliff: usize) -> Vec<(usize, String)> {
    numerology::green_prediction(g, cliff)
        .into_iter()
        .map(|p| (p.p, expectation_name(p.expected)))
        .collect()
}

#[pymodule]
fn syzygy(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Variety>()?;
    m.add_class::<BettiTable>()?;
    m.add("SyzygyError", m.py().get_type::<SyzygyError>())?;
    m.add("DegenerateSampleError", m.py().get_type::<DegenerateSampleError>())?;
    m.add("ResourceLimitError", m.py().get_type::<ResourceLimitError>())?;
    m.add_function(wrap_pyfunction!(rank, m)?)?;
    m.add_function(wrap_pyfunction!(koszul_dim, m)?)?;
    m.add_function(wrap_pyfunction!(bott, m)?)?;
    m.add_function(wrap_pyfunction!(verify_appendix, m)?)?;
    m.add_function(wrap_pyfunction!(dimension_identity, m)?)?;
    m.add_function(wrap_pyfunction!(generic_gonality, m)?)?;
    m.add_function(wrap_pyfunction!(brill_noether_number, m)?)?;
    m.add_function(wrap_pyfunction!(lm_chi, m)?)?;
    m.add_function(wrap_pyfunction!(corollary2_range, m)?)?;
    m.add_function(wrap_pyfunction!(green_prediction, m)?)?;
    m.add("DEFAULT_PRIME", DEFAULT_PRIME)?;
    Ok(())
}
