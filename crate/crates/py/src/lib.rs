//! Python bindings: `quartic_lab_py`.
//!
//! Exact values cross the boundary as `"p/q"` strings; floats stay floats.

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use quartic_lab::arith::rational::frac;
use quartic_lab::evaluate::{
    boros_moll_coeffs, closed_form_t1, integral_quadrature, series_sum, EvalError, IntegralParams, QUAD_BUDGET,
};
use quartic_lab::holonomic::fixtures::{resolve_family, quartic, Triple};
use quartic_lab::holonomic::grammar::parse_operator;
use quartic_lab::holonomic::{ode_to_recurrence, unroll, DiffOp, HolonomicError};

fn eval_err(e: EvalError) -> PyErr {
    match e {
        EvalError::NonConvergence { .. } | EvalError::Budget(_) => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn hol_err(e: HolonomicError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// `∫₀^∞ (x^{2n} + α·a·x^n + 1)^{-(m+1)} dx` with its parameters.
#[pyclass(name = "IntegralParams", frozen)]
struct PyParams {
    inner: IntegralParams,
}

#[pymethods]
impl PyParams {
    #[new]
    #[pyo3(signature = (m, a, n = 2, alpha = None))]
    fn new(m: u32, a: f64, n: u32, alpha: Option<f64>) -> Self {
        Self {
            inner: IntegralParams::new(n, alpha.unwrap_or(n as f64), m, a),
        }
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n
    }
    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha
    }
    #[getter]
    fn m(&self) -> u32 {
        self.inner.m
    }
    #[getter]
    fn a(&self) -> f64 {
        self.inner.a
    }

    /// Adaptive quadrature; returns `(value, error_estimate, evaluations)`.
    #[pyo3(signature = (tol = 1e-12))]
    fn quadrature(&self, tol: f64) -> PyResult<(f64, f64, usize)> {
        let r = integral_quadrature(&self.inner, tol).map_err(eval_err)?;
        Ok((r.value, r.error_estimate, r.evaluations))
    }

    /// Series in `a`; returns `(value, tail_bound, terms_used)`.
    #[pyo3(signature = (tol = 1e-12, max_terms = 20_000))]
    fn series(&self, tol: f64, max_terms: usize) -> PyResult<(f64, f64, usize)> {
        let r = series_sum(&self.inner, tol, max_terms).map_err(eval_err)?;
        Ok((r.value, r.tail_bound, r.terms_used))
    }

    /// Closed form; only for the quartic case `n = 2, α = 2`.
    fn closed(&self) -> PyResult<f64> {
        if self.inner.n != 2 || self.inner.alpha != 2.0 {
            return Err(PyValueError::new_err("closed form needs n = 2 and alpha = 2"));
        }
        closed_form_t1(self.inner.m, self.inner.a).map_err(eval_err)
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!("IntegralParams(m={}, a={:?}, n={}, alpha={:?})", p.m, p.a, p.n, p.alpha)
    }
}

/// Exact coefficients `d_l(m)` of `P_m(a) = Σ d_l a^l`, as strings.
#[pyfunction]
fn poly_coeffs(m: u32) -> Vec<String> {
    boros_moll_coeffs(m).coeffs.iter().map(|c| c.to_string()).collect()
}

/// Whether `P_m` has positive, log-concave coefficients.
#[pyfunction]
fn poly_shape(m: u32) -> (bool, bool) {
    let p = boros_moll_coeffs(m);
    (p.all_positive(), p.is_log_concave())
}

/// Outcome of checking one operator/certificate triple.
#[pyclass(name = "Verification", frozen, get_all)]
struct PyVerification {
    variant: String,
    verified: bool,
    residual: String,
    spot_checks_pass: bool,
    denominator_ok: bool,
}

#[pymethods]
impl PyVerification {
    fn __repr__(&self) -> String {
        format!("Verification(variant={:?}, verified={})", self.variant, self.verified)
    }
}

fn verification(t: &Triple, seed: u64) -> PyVerification {
    let r = t.verify(seed);
    PyVerification {
        variant: t.name.clone(),
        verified: r.verified,
        spot_checks_pass: r.spot_checks_pass(),
        residual: r.residual_text,
        denominator_ok: r.denominator_ok,
    }
}

/// Verifies the quartic certificate; `corrupt` perturbs it first.
#[pyfunction]
#[pyo3(signature = (seed = 42, corrupt = false))]
fn verify_quartic(seed: u64, corrupt: bool) -> PyVerification {
    let t = if corrupt { quartic().corrupted() } else { quartic() };
    verification(&t, seed)
}

/// Verifies a triple given in the text grammar.
#[pyfunction]
#[pyo3(signature = (text, seed = 42))]
fn verify_text(text: &str, seed: u64) -> PyResult<PyVerification> {
    Ok(verification(&Triple::parse(text).map_err(hol_err)?, seed))
}

/// Every general-`n` variant, in sweep order.
#[pyfunction]
#[pyo3(signature = (seed = 42))]
fn verify_family(seed: u64) -> Vec<PyVerification> {
    resolve_family(seed)
        .variants
        .into_iter()
        .map(|v| PyVerification {
            variant: v.triple.name,
            verified: v.report.verified,
            spot_checks_pass: v.report.spot_checks_pass(),
            residual: v.report.residual_text,
            denominator_ok: v.report.denominator_ok,
        })
        .collect()
}

/// Recurrence text for an operator in `a`, `D_a`, `m`, `n`.
#[pyfunction]
fn ode2rec(op: &str) -> PyResult<String> {
    let (op, _) = DiffOp::from_expr(&parse_operator(op).map_err(hol_err)?).map_err(hol_err)?;
    Ok(ode_to_recurrence(&op).to_string())
}

/// First `count` multipliers `q_l` of the recurrence at fixed `m` and `n`.
#[pyfunction]
fn unroll_multipliers(op: &str, m: i64, n: i64, count: usize) -> PyResult<Vec<String>> {
    if n < 1 {
        return Err(PyValueError::new_err("n must be at least 1"));
    }
    let (op, _) = DiffOp::from_expr(&parse_operator(op).map_err(hol_err)?).map_err(hol_err)?;
    let s = unroll(&ode_to_recurrence(&op), m, &frac(1, n), count).map_err(hol_err)?;
    Ok(s.multipliers().iter().map(|q| q.to_string()).collect())
}

#[pymodule]
fn quartic_lab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParams>()?;
    m.add_class::<PyVerification>()?;
    m.add_function(wrap_pyfunction!(poly_coeffs, m)?)?;
    m.add_function(wrap_pyfunction!(poly_shape, m)?)?;
    m.add_function(wrap_pyfunction!(verify_quartic, m)?)?;
    m.add_function(wrap_pyfunction!(verify_text, m)?)?;
    m.add_function(wrap_pyfunction!(verify_family, m)?)?;
    m.add_function(wrap_pyfunction!(ode2rec, m)?)?;
    m.add_function(wrap_pyfunction!(unroll_multipliers, m)?)?;
    m.add("QUAD_BUDGET", QUAD_BUDGET)?;
    Ok(())
}
