//! Python bindings. Reports come back as JSON strings in the same format the
//! CLI writes; complex values as Python `complex`.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use metatheta_core::gauss::GaussStore;
use metatheta_core::hecke::HeckeModel;
use metatheta_core::report::VerifyReport;
use metatheta_core::ring::{factorize, primes_up_to, CycInt, RingTag};
use metatheta_core::series::{
    cancellation_check, euler_compare, local_euler_report, required_bound, series_report, SeriesParams,
};
use metatheta_core::suite::{run_suite, Stores};
use metatheta_core::{symbols, tau as tau_mod, unfold, Error};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn ring_of(s: &str) -> PyResult<RingTag> {
    RingTag::from_short_name(s).map_err(py_err)
}

fn parse(ring: RingTag, s: &str) -> PyResult<CycInt> {
    CycInt::parse(ring, s).map_err(py_err)
}

fn json(r: VerifyReport) -> String {
    r.to_json()
}

/// An element of Z[w] (`ring="eis"`) or Z[i] (`ring="gau"`).
#[pyclass(name = "Element", frozen)]
struct PyElement {
    inner: CycInt,
}

#[pymethods]
impl PyElement {
    #[new]
    fn new(ring: &str, text: &str) -> PyResult<Self> {
        Ok(PyElement { inner: parse(ring_of(ring)?, text)? })
    }

    #[getter]
    fn ring(&self) -> &'static str {
        self.inner.ring().short_name()
    }

    fn norm(&self) -> String {
        self.inner.norm().to_string()
    }

    fn is_primary(&self) -> bool {
        self.inner.is_primary()
    }

    /// `[(prime, exponent), ...]` with the unit dropped.
    fn factorize(&self) -> PyResult<Vec<(String, u32)>> {
        let f = factorize(&self.inner).map_err(py_err)?;
        Ok(f.factors.iter().map(|(p, e)| (p.to_string(), *e)).collect())
    }

    fn __mul__(&self, other: &PyElement) -> PyResult<PyElement> {
        if self.inner.ring() != other.inner.ring() {
            return Err(PyValueError::new_err("elements of different rings"));
        }
        Ok(PyElement { inner: &self.inner * &other.inner })
    }

    fn __eq__(&self, other: &PyElement) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element('{}', '{}')", self.ring(), self.inner)
    }
}

/// Gauss sum cache; in memory unless `path` is given.
#[pyclass(name = "GaussStore", frozen)]
struct PyGaussStore {
    inner: GaussStore,
}

#[pymethods]
impl PyGaussStore {
    #[new]
    #[pyo3(signature = (ring, path=None))]
    fn new(ring: &str, path: Option<String>) -> PyResult<Self> {
        let ring = ring_of(ring)?;
        let inner = match path {
            Some(p) => GaussStore::open(p, ring).map_err(py_err)?,
            None => GaussStore::in_memory(ring),
        };
        Ok(PyGaussStore { inner })
    }

    #[pyo3(signature = (d, t=1))]
    fn get(&self, d: &str, t: i64) -> PyResult<Complex64> {
        let d = parse(self.inner.ring(), d)?;
        Ok(self.inner.get(&d, t).map_err(py_err)?.value)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

/// Hecke coefficient model with its own in-memory Gauss store.
#[pyclass(name = "HeckeModel", frozen)]
struct PyHeckeModel {
    model: HeckeModel,
    store: GaussStore,
}

#[pymethods]
impl PyHeckeModel {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        // The store must match the model's ring; try each.
        for ring in [RingTag::Eisenstein, RingTag::Gaussian] {
            let store = GaussStore::in_memory(ring);
            match HeckeModel::from_json(text, &store) {
                Ok(model) => return Ok(PyHeckeModel { model, store }),
                Err(Error::RingMismatch(_)) => continue,
                Err(e) => return Err(py_err(e)),
            }
        }
        Err(PyValueError::new_err("model ring matches neither store"))
    }

    /// Random canonical model over the primes of norm at most `bound`.
    #[staticmethod]
    #[pyo3(signature = (ring, bound, seed=0))]
    fn random(ring: &str, bound: u64, seed: u64) -> PyResult<Self> {
        let ring = ring_of(ring)?;
        let store = GaussStore::in_memory(ring);
        let model = HeckeModel::random(ring, &primes_up_to(ring, bound), &mut ChaCha8Rng::seed_from_u64(seed), &store)
            .map_err(py_err)?;
        Ok(PyHeckeModel { model, store })
    }

    fn primes(&self) -> Vec<String> {
        self.model.primes().iter().map(|p| p.to_string()).collect()
    }

    /// `b(prod p_i^e_i)` over the model primes, in order.
    fn coeff(&self, exps: Vec<u32>) -> PyResult<Complex64> {
        self.model.coeff(&exps).map_err(py_err)
    }

    fn to_json(&self) -> String {
        self.model.to_json()
    }

    #[pyo3(signature = (n, s, bound, restrict=false))]
    fn series(&self, n: u32, s: Complex64, bound: u128, restrict: bool) -> PyResult<String> {
        let mut params = SeriesParams::new(n, s, bound);
        if restrict {
            params = params.with_primes(self.model.primes());
        }
        series_report(&params, &self.model, &self.store).map(json).map_err(py_err)
    }

    #[pyo3(signature = (k=8))]
    fn local_euler(&self, k: usize) -> PyResult<String> {
        local_euler_report(&self.model, k).map(json).map_err(py_err)
    }

    #[pyo3(signature = (k=4))]
    fn euler_check(&self, k: usize) -> PyResult<String> {
        let primes = self.model.primes();
        let bound = required_bound(&primes, k)
            .ok_or_else(|| PyValueError::new_err("prod N(p)^(3K) overflows"))?;
        let params = SeriesParams::new(3, Complex64::new(0.6, 0.3), bound).with_primes(primes);
        euler_compare(&params, &self.model, &self.store, k).map(json).map_err(py_err)
    }

    #[pyo3(signature = (k=5, p=0, q=1))]
    fn cancel_check(&self, k: usize, p: usize, q: usize) -> PyResult<String> {
        let count = self.model.locals().len();
        if p >= count || q >= count || p == q {
            return Err(PyValueError::new_err(format!("need distinct prime indices below {count}")));
        }
        cancellation_check(&self.model, p, q, k).map(json).map_err(py_err)
    }
}

/// Exponent `k` with `(a/m)^t = zeta_n^k`.
#[pyfunction]
#[pyo3(signature = (ring, a, m, t=1))]
fn residue_symbol(ring: &str, a: &str, m: &str, t: i64) -> PyResult<u32> {
    let r = ring_of(ring)?;
    Ok(symbols::residue_symbol(&parse(r, a)?, &parse(r, m)?, t).map_err(py_err)?.exponent())
}

#[pyfunction]
#[pyo3(signature = (ring, d, t=1))]
fn gauss_sum(ring: &str, d: &str, t: i64) -> PyResult<Complex64> {
    let r = ring_of(ring)?;
    Ok(metatheta_core::gauss::gauss_sum(&parse(r, d)?, t).map_err(py_err)?.value)
}

/// `tau(m, 1)` on the `n`-fold cover; the ring follows `n` unless given.
#[pyfunction]
#[pyo3(signature = (n, m, ring=None))]
fn tau(n: u32, m: &str, ring: Option<&str>) -> PyResult<(Complex64, bool)> {
    let r = match (ring, n) {
        (Some(r), _) => ring_of(r)?,
        (None, 4) => RingTag::Gaussian,
        _ => RingTag::Eisenstein,
    };
    let store = GaussStore::in_memory(r);
    let t = tau_mod::tau(n, &parse(r, m)?, &store).map_err(py_err)?;
    Ok((t.value, t.support))
}

#[pyfunction]
fn kubota_sl2(ring: &str, a: &str, b: &str, c: &str, d: &str) -> PyResult<u32> {
    let r = ring_of(ring)?;
    let mu = symbols::kubota_sl2(&parse(r, a)?, &parse(r, b)?, &parse(r, c)?, &parse(r, d)?).map_err(py_err)?;
    Ok(mu.exponent())
}

#[pyfunction]
fn orbit_dim(parts: Vec<u32>) -> PyResult<u64> {
    Ok(unfold::orbit_dim(&unfold::Partition::new(parts).map_err(py_err)?))
}

#[pyfunction]
#[pyo3(signature = (samples=100, seed=0))]
fn unfold_verify(samples: usize, seed: u64) -> PyResult<String> {
    unfold::unfold_verify(samples, seed).map(json).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (bound=50))]
fn coset_count(bound: u64) -> PyResult<String> {
    unfold::coset_count_check(RingTag::Eisenstein, bound).map(json).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (rmax=10))]
fn dims(rmax: u32) -> PyResult<String> {
    unfold::dims_report(rmax).map(json).map_err(py_err)
}

/// The acceptance suite as JSON.
#[pyfunction]
#[pyo3(signature = (seed=0))]
fn verify_all(py: Python<'_>, seed: u64) -> PyResult<String> {
    py.detach(|| run_suite(seed, &Stores::in_memory()).map(|s| s.to_json()))
        .map_err(py_err)
}

#[pymodule]
fn metatheta(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyElement>()?;
    m.add_class::<PyGaussStore>()?;
    m.add_class::<PyHeckeModel>()?;
    m.add_function(wrap_pyfunction!(residue_symbol, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_sum, m)?)?;
    m.add_function(wrap_pyfunction!(tau, m)?)?;
    m.add_function(wrap_pyfunction!(kubota_sl2, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_dim, m)?)?;
    m.add_function(wrap_pyfunction!(unfold_verify, m)?)?;
    m.add_function(wrap_pyfunction!(coset_count, m)?)?;
    m.add_function(wrap_pyfunction!(dims, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    Ok(())
}
