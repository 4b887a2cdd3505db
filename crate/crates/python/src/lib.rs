//! Python bindings: parse networks, compute PRC, rank candidates and run the
//! oracle comparison.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use rootcause::attribution::{default_candidates, run_oracle_check, OracleCheckConfig};
use rootcause::model::{validate_monotone_cpt, Candidate};
use rootcause::netformat::{fingerprint, parse_candidate, parse_evidence, parse_network, serialize_network};
use rootcause::{closedform, counterfactual, Engine};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn engine_of(name: &str) -> PyResult<Engine> {
    match name {
        "closed" => Ok(Engine::ClosedForm),
        "oracle" => Ok(Engine::Oracle),
        "both" => Ok(Engine::Both),
        other => Err(PyValueError::new_err(format!("engine must be closed, oracle or both, not {other:?}"))),
    }
}

/// A binary causal network with a distinguished outcome.
#[pyclass(name = "Network", module = "rootcause_py", frozen)]
struct PyNetwork {
    inner: rootcause::Network,
}

#[pymethods]
impl PyNetwork {
    /// Parses the text network format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_network(text).map(|inner| PyNetwork { inner }).map_err(value_err)
    }

    /// Canonical text form.
    fn serialize(&self) -> String {
        serialize_network(&self.inner)
    }

    /// SHA-256 of the canonical form.
    fn fingerprint(&self) -> String {
        fingerprint(&self.inner)
    }

    /// Monotonicity violations as readable strings; empty when monotone.
    fn validate(&self) -> Vec<String> {
        validate_monotone_cpt(&self.inner)
            .violations
            .iter()
            .map(|v| format!("{} row {} = {} exceeds row {} = {}", v.variable, v.lower_row, v.lower_prob, v.upper_row, v.upper_prob))
            .collect()
    }

    #[getter]
    fn p(&self) -> usize {
        self.inner.p()
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    #[getter]
    fn outcome(&self) -> String {
        self.inner.outcome_name().to_string()
    }

    fn __repr__(&self) -> String {
        format!("Network(p={}, outcome={:?})", self.inner.p(), self.inner.outcome_name())
    }
}

/// PRC of one candidate (`{A,B}` or `none`) under evidence (`A=1 Y=1`).
#[pyfunction]
#[pyo3(signature = (network, candidate, evidence = "", engine = "closed"))]
fn prc(network: &PyNetwork, candidate: &str, evidence: &str, engine: &str) -> PyResult<f64> {
    let net = &network.inner;
    let c = parse_candidate(net, candidate).map_err(value_err)?;
    let e = parse_evidence(net, evidence).map_err(value_err)?;
    match engine_of(engine)? {
        Engine::ClosedForm => closedform::prc(net, &c, &e).map_err(runtime_err),
        Engine::Oracle => {
            let sem = counterfactual::canonical_sem_from_network(net).map_err(runtime_err)?;
            counterfactual::oracle_prc(&sem, &c, &e).map_err(runtime_err)
        }
        Engine::Both => Err(PyValueError::new_err("use rank() to compare engines")),
    }
}

/// Ranked report rows as dictionaries.
#[pyfunction]
#[pyo3(signature = (network, evidence = "", candidates = None, engine = "closed"))]
fn rank<'py>(
    py: Python<'py>,
    network: &PyNetwork,
    evidence: &str,
    candidates: Option<Vec<String>>,
    engine: &str,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let net = &network.inner;
    let e = parse_evidence(net, evidence).map_err(value_err)?;
    let list: Vec<Candidate> = match candidates {
        None => default_candidates(net.p()),
        Some(cs) => cs.iter().map(|c| parse_candidate(net, c)).collect::<Result<_, _>>().map_err(value_err)?,
    };
    let report = rootcause::rank_candidates(net, &list, &e, engine_of(engine)?).map_err(runtime_err)?;
    report
        .rows
        .iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("candidate", &r.label)?;
            d.set_item("prc", r.prc)?;
            d.set_item("posttce", r.posttce)?;
            d.set_item("posterior", r.posterior)?;
            d.set_item("engine", r.engine.as_str())?;
            d.set_item("delta", r.discrepancy)?;
            Ok(d)
        })
        .collect()
}

/// Closed form versus enumeration on seeded random monotone models.
#[pyfunction]
#[pyo3(signature = (p = 4, seeds = 200, seed = 0, tolerance = 1e-10))]
fn oracle_check<'py>(py: Python<'py>, p: usize, seeds: u64, seed: u64, tolerance: f64) -> PyResult<Bound<'py, PyDict>> {
    if !(1..=6).contains(&p) {
        return Err(PyValueError::new_err("p must be between 1 and 6"));
    }
    let config = OracleCheckConfig { p_values: vec![p], seeds, base_seed: seed, tolerance, ..Default::default() };
    let summary = run_oracle_check(&config).map_err(runtime_err)?;
    let d = PyDict::new(py);
    d.set_item("models", summary.models)?;
    d.set_item("comparisons", summary.comparisons)?;
    d.set_item("max_delta", summary.max_delta)?;
    d.set_item("failures", summary.failures.len())?;
    d.set_item("passed", summary.passed())?;
    Ok(d)
}

#[pymodule]
pub fn rootcause_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNetwork>()?;
    m.add_function(wrap_pyfunction!(prc, m)?)?;
    m.add_function(wrap_pyfunction!(rank, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_check, m)?)?;
    Ok(())
}
