//! Python bindings: exact rational cones, Fujita invariants, del Pezzo
//! enumerations and case-study verification. Rationals cross the boundary
//! as strings in the wire syntax (`"-3"`, `"9/10"`); vectors as lists of
//! such strings; everything stays exact.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use manin_core::casestudy as cs;
use manin_core::delpezzo as dp;
use manin_core::fujita;
use manin_core::invariants as inv;
use manin_core::rat::{format_rat, parse_rat, RatVec};
use manin_core::{PairingForm, PolyCone, PolarizedSpace};

fn err<T>(r: manin_core::Result<T>) -> PyResult<T> {
    r.map_err(|e| PyValueError::new_err(e.to_string()))
}

fn vec_in(entries: Vec<String>) -> PyResult<RatVec> {
    err(RatVec::parse(&entries))
}

fn vecs_in(rows: Vec<Vec<String>>) -> PyResult<Vec<RatVec>> {
    rows.into_iter().map(vec_in).collect()
}

fn vec_out(v: &RatVec) -> Vec<String> {
    v.to_strings()
}

/// Exact bilinear pairing between two class spaces.
#[pyclass(name = "Pairing", module = "manin_py", from_py_object)]
#[derive(Clone)]
struct PyPairing {
    inner: PairingForm,
}

#[pymethods]
impl PyPairing {
    #[new]
    fn new(rows: Vec<Vec<String>>) -> PyResult<Self> {
        let rows = vecs_in(rows)?;
        let cols = rows.first().map_or(0, |r| r.dim());
        Ok(PyPairing {
            inner: err(PairingForm::new(rows, cols))?,
        })
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        PyPairing {
            inner: PairingForm::identity(n),
        }
    }

    fn eval(&self, facet: Vec<String>, gen: Vec<String>) -> PyResult<String> {
        Ok(format_rat(&self.inner.eval(&vec_in(facet)?, &vec_in(gen)?)))
    }

    fn is_symmetric(&self) -> bool {
        self.inner.is_symmetric()
    }

    fn __repr__(&self) -> String {
        format!(
            "Pairing({}x{})",
            self.inner.row_dim(),
            self.inner.col_dim()
        )
    }
}

/// Pointed rational polyhedral cone with canonical V- and H-representations.
#[pyclass(name = "Cone", module = "manin_py", from_py_object)]
#[derive(Clone)]
struct PyCone {
    inner: PolyCone,
}

#[pymethods]
impl PyCone {
    #[staticmethod]
    fn from_generators(gens: Vec<Vec<String>>, pairing: PyPairing) -> PyResult<Self> {
        Ok(PyCone {
            inner: err(PolyCone::from_generators(&vecs_in(gens)?, pairing.inner))?,
        })
    }

    fn generators(&self) -> Vec<Vec<String>> {
        self.inner.generators().iter().map(vec_out).collect()
    }

    fn facets(&self) -> Vec<Vec<String>> {
        self.inner.facets().iter().map(vec_out).collect()
    }

    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    fn is_full_dimensional(&self) -> bool {
        self.inner.is_full_dimensional()
    }

    fn dual(&self) -> PyResult<PyCone> {
        Ok(PyCone {
            inner: err(self.inner.dual())?,
        })
    }

    fn contains(&self, x: Vec<String>) -> PyResult<bool> {
        err(self.inner.contains(&vec_in(x)?))
    }

    fn minimal_supported_face(&self, x: Vec<String>) -> PyResult<(PyCone, usize)> {
        let (face, codim) = err(self.inner.minimal_supported_face(&vec_in(x)?))?;
        Ok((PyCone { inner: face }, codim))
    }

    fn __eq__(&self, other: &PyCone) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Cone(dim={}, generators={}, facets={})",
            self.inner.ambient_dim(),
            self.inner.generators().len(),
            self.inner.facets().len()
        )
    }
}

/// Néron–Severi lattice model with pseudo-effective cone, K and big L.
#[pyclass(name = "Space", module = "manin_py")]
struct PySpace {
    inner: PolarizedSpace,
}

#[pymethods]
impl PySpace {
    #[new]
    #[pyo3(signature = (name, pseff, pairing, k, l, adjoint_rigid=None))]
    fn new(
        name: String,
        pseff: Vec<Vec<String>>,
        pairing: PyPairing,
        k: Vec<String>,
        l: Vec<String>,
        adjoint_rigid: Option<bool>,
    ) -> PyResult<Self> {
        let cone = err(PolyCone::from_generators(&vecs_in(pseff)?, pairing.inner))?;
        Ok(PySpace {
            inner: err(PolarizedSpace::new(
                name,
                vec![],
                cone,
                vec_in(k)?,
                vec_in(l)?,
                None,
                adjoint_rigid,
            ))?,
        })
    }

    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// The Fujita invariant a(X, L), as a wire-syntax rational.
    fn a_invariant(&self) -> PyResult<String> {
        Ok(format_rat(&err(inv::a_invariant(&self.inner))?))
    }

    fn adjoint_class(&self) -> PyResult<Vec<String>> {
        Ok(vec_out(&err(inv::adjoint_class(&self.inner))?))
    }

    fn b_invariant(&self) -> PyResult<usize> {
        err(inv::b_invariant(&self.inner))
    }

    /// Equivariant b-value for integer matrix generators and rigid classes.
    #[pyo3(signature = (generators, rigid_components, closure_bound=None))]
    fn b_equivariant(
        &self,
        generators: Vec<Vec<Vec<i64>>>,
        rigid_components: Vec<Vec<String>>,
        closure_bound: Option<usize>,
    ) -> PyResult<usize> {
        let mats = generators
            .into_iter()
            .map(|m| err(inv::IntMatrix::new(m)))
            .collect::<PyResult<Vec<_>>>()?;
        let mut action = inv::GroupAction::new(mats, vecs_in(rigid_components)?);
        if let Some(bound) = closure_bound {
            action = action.with_closure_bound(bound);
        }
        err(inv::b_equivariant(&self.inner, &action))
    }

    fn __repr__(&self) -> String {
        format!("Space({:?}, rank={})", self.inner.name(), self.inner.rank())
    }
}

/// Lexicographic comparison of (a, b) pairs: returns "less", "equal" or
/// "greater" for the first pair against the second.
#[pyfunction]
fn compare_lex(a1: String, b1: usize, a2: String, b2: usize) -> PyResult<String> {
    let left = inv::AbPair::new(err(parse_rat(&a1))?, b1);
    let right = inv::AbPair::new(err(parse_rat(&a2))?, b2);
    Ok(match inv::compare_lex(&left, &right) {
        std::cmp::Ordering::Less => "less".to_string(),
        std::cmp::Ordering::Equal => "equal".to_string(),
        std::cmp::Ordering::Greater => "greater".to_string(),
    })
}

/// Balanced-property verdict for cover pair (a2, b2) against base (a1, b1).
#[pyfunction]
#[pyo3(signature = (a_base, b_base, a_other, b_other, pullback_big=true))]
fn balanced_verdict(
    a_base: String,
    b_base: usize,
    a_other: String,
    b_other: usize,
    pullback_big: bool,
) -> PyResult<String> {
    let base = inv::AbPair::new(err(parse_rat(&a_base))?, b_base);
    let other = inv::AbPair::new(err(parse_rat(&a_other))?, b_other);
    Ok(inv::balanced_verdict(&base, &other, pullback_big)
        .as_str()
        .to_string())
}

fn verdict_tuple(v: fujita::Verdict) -> (String, String) {
    (
        if v.implies_big() {
            "implies_big".to_string()
        } else {
            "inconclusive".to_string()
        },
        v.cited_rule,
    )
}

/// Dimension-dependent bigness certificate; returns (status, cited_rule).
#[pyfunction]
#[pyo3(signature = (dim, vol, min_curve=None, min_surface=None))]
fn bigness_criterion(
    dim: u8,
    vol: String,
    min_curve: Option<String>,
    min_surface: Option<String>,
) -> PyResult<(String, String)> {
    let mut w = err(fujita::GeometricWitness::new(dim, err(parse_rat(&vol))?))?;
    if let Some(c) = min_curve {
        w = err(w.with_min_curve_deg(err(parse_rat(&c))?))?;
    }
    if let Some(s) = min_surface {
        w = err(w.with_min_surface_vol(err(parse_rat(&s))?))?;
    }
    Ok(verdict_tuple(err(fujita::bigness_criterion(&w))?))
}

/// Threefold bigness from rational curves only: Vol > 64 and L·C > 3.
#[pyfunction]
fn bigness_dim3_improved(vol: String, min_rational_curve: String) -> PyResult<(String, String)> {
    let w = err(fujita::GeometricWitness::new(3, err(parse_rat(&vol))?))?;
    let w = err(w.with_min_rational_curve_deg(err(parse_rat(&min_rational_curve))?))?;
    Ok(verdict_tuple(err(fujita::bigness_dim3_improved(&w))?))
}

/// Surface bigness from rational curves: L·C > 3 for every rational curve.
#[pyfunction]
fn surface_rational_curve_criterion(min_rational_curve: String) -> PyResult<(String, String)> {
    let deg = err(parse_rat(&min_rational_curve))?;
    Ok(verdict_tuple(err(fujita::surface_rational_curve_criterion(
        &deg,
    ))?))
}

/// Rigid-adjoint surface volume bound: "consistent" or "violates".
#[pyfunction]
fn rigid_surface_volume_check(a: String, vol: String) -> PyResult<String> {
    let status = err(fujita::rigid_surface_volume_check(
        &err(parse_rat(&a))?,
        &err(parse_rat(&vol))?,
    ))?;
    Ok(match status {
        fujita::RigidVolumeStatus::Consistent => "consistent".to_string(),
        fujita::RigidVolumeStatus::Violates => "violates".to_string(),
    })
}

/// Cover bound on a²: returns (bound_sq, strongly_a_unbalanced_excluded).
#[pyfunction]
fn surface_cover_a_bound(d: u64, e: u64) -> PyResult<(String, bool)> {
    let r = err(fujita::surface_cover_a_bound(d, e))?;
    Ok((format_rat(&r.bound_sq), r.strongly_a_unbalanced_excluded))
}

/// Weak del Pezzo cover bookkeeping: (feasible, b_upper, balanced_forced).
#[pyfunction]
fn weak_dp_cover_b_bound(d: u64, e: u64) -> PyResult<(bool, Option<u64>, bool)> {
    let r = err(fujita::weak_dp_cover_b_bound(d, e))?;
    Ok((r.feasible, r.b_upper, r.balanced_forced))
}

/// Adjoint Hilbert check: (top_intersection, matches_projective,
/// matches_quadric).
#[pyfunction]
fn adjoint_hilbert_check(n: usize, values: Vec<u64>) -> PyResult<(String, bool, bool)> {
    let r = err(fujita::adjoint_hilbert_check(n, &values))?;
    Ok((
        format_rat(&r.top_intersection),
        r.matches_projective,
        r.matches_quadric,
    ))
}

/// All (−1)-classes of the del Pezzo lattice Z^{1,n}.
#[pyfunction]
fn minus_one_classes(n: usize) -> PyResult<Vec<Vec<i64>>> {
    let lat = err(dp::DPLattice::new(n))?;
    Ok(dp::enumerate_minus_one(&lat)
        .iter()
        .map(|c| c.coords().to_vec())
        .collect())
}

/// All roots (both signs) of Z^{1,n}.
#[pyfunction]
fn minus_two_classes(n: usize) -> PyResult<Vec<Vec<i64>>> {
    let lat = err(dp::DPLattice::new(n))?;
    Ok(dp::enumerate_minus_two(&lat)
        .iter()
        .map(|c| c.coords().to_vec())
        .collect())
}

/// Contracts a (−1)-class; returns (new_n, new_degree).
#[pyfunction]
fn blow_down(n: usize, class: Vec<i64>) -> PyResult<(usize, i64)> {
    let lat = err(dp::DPLattice::new(n))?;
    let c = err(dp::CurveClass::classify(&lat, class))?;
    let down = err(dp::blow_down(&lat, &c))?;
    Ok((down.n(), down.degree()))
}

/// Rank of the span of a set of roots.
#[pyfunction]
fn crepant_rank_drop(n: usize, roots: Vec<Vec<i64>>) -> PyResult<usize> {
    let lat = err(dp::DPLattice::new(n))?;
    let roots = roots
        .into_iter()
        .map(|r| err(dp::CurveClass::classify(&lat, r)))
        .collect::<PyResult<Vec<_>>>()?;
    err(dp::crepant_rank_drop(&lat, &roots))
}

/// Names of the bundled case studies.
#[pyfunction]
fn bundled_datasets() -> Vec<String> {
    cs::bundled_names().iter().map(|s| s.to_string()).collect()
}

/// Verifies a bundled or external dataset; returns (all_pass, report_json).
#[pyfunction]
fn verify_dataset(name_or_path: String) -> PyResult<(bool, String)> {
    let study = err(cs::load_case_study(&name_or_path))?;
    let report = err(cs::verify_case_study(&study))?;
    Ok((report.all_pass(), report.to_structured()))
}

#[pymodule]
fn manin_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPairing>()?;
    m.add_class::<PyCone>()?;
    m.add_class::<PySpace>()?;
    m.add_function(wrap_pyfunction!(compare_lex, m)?)?;
    m.add_function(wrap_pyfunction!(balanced_verdict, m)?)?;
    m.add_function(wrap_pyfunction!(bigness_criterion, m)?)?;
    m.add_function(wrap_pyfunction!(bigness_dim3_improved, m)?)?;
    m.add_function(wrap_pyfunction!(surface_rational_curve_criterion, m)?)?;
    m.add_function(wrap_pyfunction!(rigid_surface_volume_check, m)?)?;
    m.add_function(wrap_pyfunction!(surface_cover_a_bound, m)?)?;
    m.add_function(wrap_pyfunction!(weak_dp_cover_b_bound, m)?)?;
    m.add_function(wrap_pyfunction!(adjoint_hilbert_check, m)?)?;
    m.add_function(wrap_pyfunction!(minus_one_classes, m)?)?;
    m.add_function(wrap_pyfunction!(minus_two_classes, m)?)?;
    m.add_function(wrap_pyfunction!(blow_down, m)?)?;
    m.add_function(wrap_pyfunction!(crepant_rank_drop, m)?)?;
    m.add_function(wrap_pyfunction!(bundled_datasets, m)?)?;
    m.add_function(wrap_pyfunction!(verify_dataset, m)?)?;
    Ok(())
}
