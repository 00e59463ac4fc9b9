//! Python bindings. Rationals cross the boundary as strings such as `"-3/2"`;
//! ints and `fractions.Fraction` are accepted wherever a rational is expected.

use geoprog::eliminator::{self, OpenBox, Piece, Status, DEFAULT_DEPTH_BUDGET};
use geoprog::logic::{self, qe_linear};
use geoprog::numeric::parse_rational;
use geoprog::oracle::{self, Depth};
use geoprog::progression::{self, CoeffVector, EConstraintSystem, SatResult};
use geoprog::quasiperiodic::{self, CycleReport};
use geoprog::{ExactRational, GeoBase};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(geoprog_py, GeoprogError, PyValueError, "Invalid input or unsupported formula.");
create_exception!(geoprog_py, UndecidedError, GeoprogError, "The exponent solver left a query open.");

fn err(e: geoprog::Error) -> PyErr {
    match e {
        geoprog::Error::Unknown(_) => UndecidedError::new_err(e.to_string()),
        _ => GeoprogError::new_err(e.to_string()),
    }
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<ExactRational> {
    let text = obj.str()?.to_string();
    parse_rational(&text).map_err(err)
}

fn rationals(objs: &[Bound<'_, PyAny>]) -> PyResult<Vec<ExactRational>> {
    objs.iter().map(rational).collect()
}

fn base(rho: &Bound<'_, PyAny>) -> PyResult<GeoBase> {
    GeoBase::new(rational(rho)?).map_err(err)
}

fn strings(qs: &[ExactRational]) -> Vec<String> {
    qs.iter().map(ToString::to_string).collect()
}

/// A parsed first-order formula.
#[pyclass(module = "geoprog_py", frozen)]
struct Formula {
    inner: logic::Formula,
}

#[pymethods]
impl Formula {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Formula {
            inner: logic::parse_formula(text).map_err(err)?,
        })
    }

    fn free_vars(&self) -> Vec<String> {
        self.inner.free_vars().into_iter().collect()
    }

    fn is_quantifier_free(&self) -> bool {
        self.inner.is_quantifier_free()
    }

    /// Eliminates real quantifiers from an E-free formula.
    fn qe(&self) -> PyResult<Formula> {
        Ok(Formula {
            inner: qe_linear(&self.inner).map_err(err)?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Formula({:?})", self.inner.to_string())
    }

    fn __eq__(&self, other: &Formula) -> bool {
        self.inner == other.inner
    }
}

/// An E-free set inside an open box, as produced by [`eliminate`].
#[pyclass(module = "geoprog_py", frozen)]
struct Elimination {
    inner: eliminator::EliminationResult,
}

#[pymethods]
impl Elimination {
    /// `"exact"` or `"under_approx"`.
    #[getter]
    fn status(&self) -> &'static str {
        self.inner.status.as_str()
    }

    #[getter]
    fn is_exact(&self) -> bool {
        self.inner.status == Status::Exact
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.inner.set.vars().to_vec()
    }

    #[getter]
    fn cell_count(&self) -> usize {
        self.inner.set.cells().len()
    }

    fn contains(&self, point: Vec<Bound<'_, PyAny>>) -> PyResult<bool> {
        let p = rationals(&point)?;
        if p.len() != self.inner.set.vars().len() {
            return Err(GeoprogError::new_err("point has the wrong dimension"));
        }
        Ok(self.inner.set.contains(&p))
    }

    /// One-dimensional decomposition: `("point", q)` or `("interval", lo, hi)`.
    fn pieces(&self, py: Python<'_>) -> PyResult<Vec<Py<PyAny>>> {
        let pieces = self.inner.set.pieces().map_err(err)?;
        pieces
            .into_iter()
            .map(|p| {
                Ok(match p {
                    Piece::Point(q) => ("point", q.to_string()).into_pyobject(py)?.into_any().unbind(),
                    Piece::Interval(a, b) => ("interval", a.to_string(), b.to_string())
                        .into_pyobject(py)?
                        .into_any()
                        .unbind(),
                })
            })
            .collect()
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __str__(&self) -> String {
        self.inner.set.render()
    }
}

/// Values of `sum c_i rho^(k_i)` inside `(-radius, radius)`, each with its
/// witness exponent tuples.
#[pyfunction]
#[pyo3(signature = (coeffs, radius, rho = None))]
fn enumerate_window(
    coeffs: Vec<Bound<'_, PyAny>>,
    radius: &Bound<'_, PyAny>,
    rho: Option<&Bound<'_, PyAny>>,
) -> PyResult<Vec<(String, Vec<Vec<u32>>)>> {
    let b = base_or_two(rho)?;
    let w = progression::enumerate_window(&b, &CoeffVector::new(rationals(&coeffs)?), &rational(radius)?).map_err(err)?;
    Ok(w.witnesses.into_iter().map(|(v, ks)| (v.to_string(), ks)).collect())
}

fn base_or_two(rho: Option<&Bound<'_, PyAny>>) -> PyResult<GeoBase> {
    match rho {
        Some(r) => base(r),
        None => GeoBase::integer(2).map_err(err),
    }
}

#[pyfunction]
#[pyo3(signature = (coeffs, rho = None))]
fn separation_radius(coeffs: Vec<Bound<'_, PyAny>>, rho: Option<&Bound<'_, PyAny>>) -> PyResult<String> {
    let b = base_or_two(rho)?;
    Ok(progression::separation_radius(&b, &CoeffVector::new(rationals(&coeffs)?)).to_string())
}

/// Decides a constraint system given in the text format (one
/// `a_1 ... a_m REL b` row per line). Returns `(verdict, witness)`.
#[pyfunction]
#[pyo3(signature = (system, rho = None, depth_budget = DEFAULT_DEPTH_BUDGET))]
fn esystem_sat(
    system: &str,
    rho: Option<&Bound<'_, PyAny>>,
    depth_budget: u32,
) -> PyResult<(&'static str, Option<Vec<u32>>)> {
    let b = base_or_two(rho)?;
    let sys = EConstraintSystem::parse(system).map_err(err)?;
    let res = progression::esystem_sat(&b, &sys, depth_budget).map_err(err)?;
    let witness = match &res {
        SatResult::Sat { witness } => Some(witness.clone()),
        _ => None,
    };
    Ok((res.verdict(), witness))
}

#[pyfunction]
#[pyo3(signature = (formula, radius, rho = None, vars = None, depth_budget = DEFAULT_DEPTH_BUDGET))]
fn eliminate(
    formula: &str,
    radius: &Bound<'_, PyAny>,
    rho: Option<&Bound<'_, PyAny>>,
    vars: Option<Vec<String>>,
    depth_budget: u32,
) -> PyResult<Elimination> {
    let b = base_or_two(rho)?;
    let f = logic::parse_formula(formula).map_err(err)?;
    let vars = vars.unwrap_or_else(|| f.free_vars().into_iter().collect());
    let bx = OpenBox::new(vars.len(), rational(radius)?).map_err(err)?;
    let inner = eliminator::eliminate_bounded_in(&f, &vars, &bx, &b, depth_budget).map_err(err)?;
    Ok(Elimination { inner })
}

/// Whether `point` (coordinates in `vars` order, sorted free variables by
/// default) satisfies the formula. Raises `UndecidedError` if the exponent
/// solver cannot settle it.
#[pyfunction]
#[pyo3(signature = (formula, point, rho = None, vars = None, depth_budget = DEFAULT_DEPTH_BUDGET))]
fn member(
    formula: &str,
    point: Vec<Bound<'_, PyAny>>,
    rho: Option<&Bound<'_, PyAny>>,
    vars: Option<Vec<String>>,
    depth_budget: u32,
) -> PyResult<bool> {
    let b = base_or_two(rho)?;
    let f = logic::parse_formula(formula).map_err(err)?;
    let vars = vars.unwrap_or_else(|| f.free_vars().into_iter().collect());
    eliminator::decide_membership_in(&f, &vars, &rationals(&point)?, &b, depth_budget).map_err(err)
}

/// Rows `(k, rho^k, rho^k mod r, denominator)` for `k = 0..=max_k`.
#[pyfunction]
#[pyo3(signature = (modulus, max_k, rho = None))]
fn residues(
    modulus: &Bound<'_, PyAny>,
    max_k: u32,
    rho: Option<&Bound<'_, PyAny>>,
) -> PyResult<Vec<(u32, String, String, String)>> {
    let b = base_or_two(rho)?;
    let t = quasiperiodic::residues(&b, &rational(modulus)?, max_k).map_err(err)?;
    Ok(t.rows()
        .into_iter()
        .map(|r| (r.k, r.power.to_string(), r.residue.to_string(), r.denominator.to_string()))
        .collect())
}

/// `(preperiod, period)` of the residue sequence, or `None` if no cycle
/// shows up within `max_k`.
#[pyfunction]
#[pyo3(signature = (modulus, max_k, rho = None))]
fn detect_cycle(
    modulus: &Bound<'_, PyAny>,
    max_k: u32,
    rho: Option<&Bound<'_, PyAny>>,
) -> PyResult<Option<(usize, usize)>> {
    let b = base_or_two(rho)?;
    let t = quasiperiodic::residues(&b, &rational(modulus)?, max_k).map_err(err)?;
    Ok(match quasiperiodic::detect_cycle(&t) {
        CycleReport::Cycle { preperiod, period } => Some((preperiod, period)),
        CycleReport::NoCycleWithin(_) => None,
    })
}

#[pyfunction]
#[pyo3(signature = (coeffs, radius, depth, rho = None))]
fn brute_window(
    coeffs: Vec<Bound<'_, PyAny>>,
    radius: &Bound<'_, PyAny>,
    depth: u32,
    rho: Option<&Bound<'_, PyAny>>,
) -> PyResult<Vec<String>> {
    let b = base_or_two(rho)?;
    let vals = oracle::brute_window(&b, &CoeffVector::new(rationals(&coeffs)?), &rational(radius)?, Depth(depth))
        .map_err(err)?;
    Ok(strings(&vals.into_iter().collect::<Vec<_>>()))
}

#[pymodule]
pub fn geoprog_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("GeoprogError", m.py().get_type::<GeoprogError>())?;
    m.add("UndecidedError", m.py().get_type::<UndecidedError>())?;
    m.add_class::<Formula>()?;
    m.add_class::<Elimination>()?;
    m.add_function(wrap_pyfunction!(enumerate_window, m)?)?;
    m.add_function(wrap_pyfunction!(separation_radius, m)?)?;
    m.add_function(wrap_pyfunction!(esystem_sat, m)?)?;
    m.add_function(wrap_pyfunction!(eliminate, m)?)?;
    m.add_function(wrap_pyfunction!(member, m)?)?;
    m.add_function(wrap_pyfunction!(residues, m)?)?;
    m.add_function(wrap_pyfunction!(detect_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(brute_window, m)?)?;
    Ok(())
}
