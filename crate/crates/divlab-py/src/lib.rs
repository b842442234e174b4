//! Python bindings. Ground sets, divisor counting, the rank-poset width
//! machinery, the extremal families, and the exhaustive search are exposed
//! 1:1; exact rationals cross the boundary as `fractions.Fraction` and big
//! integers as plain `int`.
//!
//! Input errors raise `ValueError`; configured resource ceilings (budgets,
//! factorization caps, profile length caps) raise `RuntimeError` so callers
//! can tell the two apart, mirroring the CLI's exit codes 2 and 3.

use std::path::PathBuf;

use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use divlab::ground::{k_subsets, SubsetMask};
use divlab::rational::{parse_rational, rat_int, Rational};
use divlab::{divisor, families, numtheory, poset, search};

fn py_err(e: divlab::Error) -> PyErr {
    if e.is_resource_limit() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

/// Accepts int, `fractions.Fraction` (anything with integer
/// numerator/denominator), or a `p/q` string.
fn to_rational(v: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(s) = v.extract::<String>() {
        return parse_rational(&s).map_err(py_err);
    }
    if let Ok(i) = v.extract::<i64>() {
        return Ok(rat_int(i));
    }
    v.extract::<Rational>()
}

fn to_rationals(values: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<Rational>> {
    values.iter().map(to_rational).collect()
}

fn to_mask(indices: &[usize]) -> PyResult<SubsetMask> {
    let mask = SubsetMask::from_indices(indices);
    if mask.k() as usize != indices.len() {
        return Err(PyValueError::new_err("subset lists an index twice"));
    }
    Ok(mask)
}

fn mask_indices(mask: SubsetMask) -> Vec<usize> {
    mask.indices().collect()
}

/// A set of distinct positive rationals, ascending.
#[pyclass(name = "GroundSet", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGroundSet {
    inner: divlab::GroundSet,
}

#[pymethods]
impl PyGroundSet {
    #[new]
    fn new(values: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let inner = divlab::GroundSet::new(to_rationals(values)?).map_err(py_err)?;
        Ok(PyGroundSet { inner })
    }

    /// Parses a comma-separated list of `p` or `p/q` entries.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGroundSet {
            inner: divlab::GroundSet::parse(text).map_err(py_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn elements(&self) -> Vec<Rational> {
        self.inner.elements().to_vec()
    }

    #[getter]
    fn total(&self) -> Rational {
        self.inner.total()
    }

    #[getter]
    fn max_element(&self) -> Rational {
        self.inner.max_element().clone()
    }

    fn is_normalized(&self) -> bool {
        self.inner.is_normalized()
    }

    /// The scaling-class representative with total 1.
    fn normalize(&self) -> Self {
        PyGroundSet {
            inner: self.inner.normalize(),
        }
    }

    fn scale(&self, factor: &Bound<'_, PyAny>) -> PyResult<Self> {
        let f = to_rational(factor)?;
        if f <= rat_int(0) {
            return Err(PyValueError::new_err("scale factor must be positive"));
        }
        Ok(PyGroundSet {
            inner: self.inner.scale(&f),
        })
    }

    /// The elements as ints when they all are; None otherwise.
    fn as_integers(&self) -> Option<Vec<u64>> {
        self.inner.as_integers()
    }

    fn subset_sum(&self, indices: Vec<usize>) -> PyResult<Rational> {
        let mask = to_mask(&indices)?;
        self.inner.check_mask(mask).map_err(py_err)?;
        Ok(self.inner.subset_sum(mask))
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("GroundSet(\"{}\")", self.inner)
    }
}

/// Count and classification of the k-subsets whose sum divides s times the
/// set total.
#[pyclass(name = "DivisorReport", frozen)]
struct PyDivisorReport {
    inner: divisor::DivisorReport,
}

#[pymethods]
impl PyDivisorReport {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }
    #[getter]
    fn k(&self) -> usize {
        self.inner.k
    }
    #[getter]
    fn s(&self) -> u64 {
        self.inner.s
    }
    #[getter]
    fn count(&self) -> u64 {
        self.inner.count
    }
    /// C(n-1, k), the count an anti-pencil realizes.
    #[getter]
    fn binom_target(&self) -> u64 {
        self.inner.binom_target
    }
    #[getter]
    fn is_anti_pencil(&self) -> bool {
        self.inner.is_anti_pencil
    }
    /// Divisor subsets as index lists, when requested.
    #[getter]
    fn witnesses(&self) -> Option<Vec<Vec<usize>>> {
        self.inner
            .witnesses
            .as_ref()
            .map(|w| w.iter().map(|&m| mask_indices(m)).collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "DivisorReport(n={}, k={}, s={}, count={}, binom_target={}, is_anti_pencil={})",
            self.inner.n,
            self.inner.k,
            self.inner.s,
            self.inner.count,
            self.inner.binom_target,
            self.inner.is_anti_pencil
        )
    }
}

#[pyfunction]
#[pyo3(signature = (set, k, s=1, witnesses=false))]
fn count_divisors(set: &PyGroundSet, k: usize, s: u64, witnesses: bool) -> PyResult<PyDivisorReport> {
    Ok(PyDivisorReport {
        inner: divisor::count_divisors(&set.inner, k, s, witnesses).map_err(py_err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (set, indices, s=1))]
fn is_s_divisor(set: &PyGroundSet, indices: Vec<usize>, s: u64) -> PyResult<bool> {
    divisor::is_s_divisor(&set.inner, to_mask(&indices)?, s).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (set, k, s=1))]
fn is_anti_pencil(set: &PyGroundSet, k: usize, s: u64) -> PyResult<bool> {
    divisor::is_anti_pencil(&set.inner, k, s).map_err(py_err)
}

/// A maximal dominance-ordered chain of k-subset s-divisors, as index lists.
#[pyfunction]
#[pyo3(signature = (set, k, s=1))]
fn divisor_chain(set: &PyGroundSet, k: usize, s: u64) -> PyResult<Vec<Vec<usize>>> {
    let chain = divisor::divisor_chain(&set.inner, k, s).map_err(py_err)?;
    Ok(chain.into_iter().map(mask_indices).collect())
}

/// Multiplier sequence and sum/element bounds verified on an explicit chain.
#[pyclass(name = "ChainBoundReport", frozen)]
struct PyChainBoundReport {
    inner: divisor::ChainBoundReport,
}

#[pymethods]
impl PyChainBoundReport {
    #[getter]
    fn length(&self) -> usize {
        self.inner.length
    }
    /// The strictly decreasing integers s * total / sum(B_i).
    #[getter]
    fn multipliers(&self) -> Vec<BigInt> {
        self.inner.multipliers.clone()
    }
    #[getter]
    fn q(&self) -> BigInt {
        self.inner.q.clone()
    }
    #[getter]
    fn bottom_sum(&self) -> Rational {
        self.inner.bottom_sum.clone()
    }
    #[getter]
    fn sum_bound(&self) -> Rational {
        self.inner.sum_bound.clone()
    }
    #[getter]
    fn sum_bound_holds(&self) -> bool {
        self.inner.sum_bound_holds
    }
    #[getter]
    fn element_bound(&self) -> Option<Rational> {
        self.inner.element_bound.clone()
    }
    #[getter]
    fn element_bound_holds(&self) -> bool {
        self.inner.element_bound_holds
    }
    #[getter]
    fn holds(&self) -> bool {
        self.inner.holds
    }

    fn __repr__(&self) -> String {
        format!(
            "ChainBoundReport(length={}, q={}, bottom_sum={}, sum_bound={}, holds={})",
            self.inner.length, self.inner.q, self.inner.bottom_sum, self.inner.sum_bound, self.inner.holds
        )
    }
}

#[pyfunction]
#[pyo3(signature = (set, chain, s=1))]
fn check_chain_bound(set: &PyGroundSet, chain: Vec<Vec<usize>>, s: u64) -> PyResult<PyChainBoundReport> {
    let masks: Vec<SubsetMask> = chain
        .iter()
        .map(|c| to_mask(c))
        .collect::<PyResult<_>>()?;
    Ok(PyChainBoundReport {
        inner: divisor::check_chain_bound(&set.inner, &masks, s).map_err(py_err)?,
    })
}

/// Nonnegative k-subset sums of a value list against the C(n-1, k-1) target.
#[pyclass(name = "MmsReport", frozen)]
struct PyMmsReport {
    inner: divisor::MmsReport,
}

#[pymethods]
impl PyMmsReport {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }
    #[getter]
    fn k(&self) -> usize {
        self.inner.k
    }
    #[getter]
    fn count(&self) -> u64 {
        self.inner.count
    }
    #[getter]
    fn target(&self) -> u64 {
        self.inner.target
    }
    /// The minimum is only claimed from n >= 4k on.
    #[getter]
    fn conjecture_applies(&self) -> bool {
        self.inner.conjecture_applies
    }
    #[getter]
    fn meets_target(&self) -> bool {
        self.inner.meets_target
    }

    fn __repr__(&self) -> String {
        format!(
            "MmsReport(n={}, k={}, count={}, target={}, meets_target={})",
            self.inner.n, self.inner.k, self.inner.count, self.inner.target, self.inner.meets_target
        )
    }
}

/// Values may repeat and carry any sign; the total must be nonnegative.
#[pyfunction]
fn mms_count(values: Vec<Bound<'_, PyAny>>, k: usize) -> PyResult<PyMmsReport> {
    Ok(PyMmsReport {
        inner: divisor::mms_count(&to_rationals(values)?, k).map_err(py_err)?,
    })
}

/// Unit-fraction set of total 1 whose n singletons are all 1-divisors.
#[pyfunction]
fn gen_k1_exception(n: usize) -> PyResult<PyGroundSet> {
    Ok(PyGroundSet {
        inner: families::gen_k1_exception(n).map_err(py_err)?,
    })
}

/// Total-1 set with at least two (n-1)-subset s-divisors; `filler` is
/// "geometric" (default) or "balanced".
#[pyfunction]
#[pyo3(signature = (s, n, filler="geometric"))]
fn gen_s_exception(s: u64, n: usize, filler: &str) -> PyResult<PyGroundSet> {
    let strategy = match filler {
        "geometric" => families::FillerStrategy::Geometric,
        "balanced" => families::FillerStrategy::Balanced,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown filler strategy '{other}' (expected 'geometric' or 'balanced')"
            )))
        }
    };
    Ok(PyGroundSet {
        inner: families::gen_s_exception(s, n, strategy).map_err(py_err)?,
    })
}

#[pyfunction]
fn s_exception_min_n(s: u64) -> u64 {
    families::s_exception_min_n(s)
}

/// The reference 4-element set whose pair-divisor count beats C(3,2).
#[pyfunction]
fn huynh_counterexample() -> PyGroundSet {
    PyGroundSet {
        inner: families::huynh_counterexample(),
    }
}

/// An integer prefix completed by one new maximum into a (k,s)-anti-pencil.
#[pyclass(name = "AntiPencilBuild", frozen)]
struct PyAntiPencilBuild {
    inner: families::AntiPencilBuild,
}

#[pymethods]
impl PyAntiPencilBuild {
    #[getter]
    fn set(&self) -> PyGroundSet {
        PyGroundSet {
            inner: self.inner.set.clone(),
        }
    }
    #[getter]
    fn completion(&self) -> Rational {
        self.inner.completion.clone()
    }
    #[getter]
    fn multiplier(&self) -> u64 {
        self.inner.multiplier
    }
    #[getter]
    fn total(&self) -> Rational {
        self.inner.total.clone()
    }
    /// False when every multiplier up to the limit leaves some k-subset
    /// through the completion dividing; the set still meets the target.
    #[getter]
    fn strict(&self) -> bool {
        self.inner.strict
    }

    fn __repr__(&self) -> String {
        format!(
            "AntiPencilBuild(set=\"{}\", multiplier={}, strict={})",
            self.inner.set, self.inner.multiplier, self.inner.strict
        )
    }
}

#[pyfunction]
#[pyo3(signature = (prefix, k, s=1, multiplier_limit=1000))]
fn build_anti_pencil(prefix: &PyGroundSet, k: usize, s: u64, multiplier_limit: u64) -> PyResult<PyAntiPencilBuild> {
    Ok(PyAntiPencilBuild {
        inner: families::build_anti_pencil(&prefix.inner, k, s, multiplier_limit).map_err(py_err)?,
    })
}

/// Level sizes of a ranked poset, lowest rank first.
#[pyclass(name = "RankProfile", frozen)]
struct PyRankProfile {
    inner: poset::RankProfile,
}

#[pymethods]
impl PyRankProfile {
    #[getter]
    fn sizes(&self) -> Vec<u64> {
        self.inner.sizes.clone()
    }
    #[getter]
    fn total(&self) -> u64 {
        self.inner.total
    }
    /// Largest level; the poset width for strongly Sperner posets.
    fn width(&self) -> u64 {
        self.inner.width()
    }
    fn is_symmetric(&self) -> bool {
        self.inner.is_symmetric()
    }
    fn is_unimodal(&self) -> bool {
        self.inner.is_unimodal()
    }

    fn __repr__(&self) -> String {
        format!("RankProfile(sizes={:?})", self.inner.sizes)
    }
}

/// Coefficients of (1 + q + ... + q^(n-1))^d: the cube {0..n-1}^d ranked by
/// coordinate sum.
#[pyfunction]
fn cube_rank_profile(n: usize, d: usize) -> PyResult<PyRankProfile> {
    Ok(PyRankProfile {
        inner: poset::cube_rank_profile(n, d).map_err(py_err)?,
    })
}

/// The Gaussian binomial [n, d]_q: d-subsets of {1..n} ranked under the
/// dominance order.
#[pyfunction]
fn dominance_rank_profile(n: usize, d: usize) -> PyResult<PyRankProfile> {
    Ok(PyRankProfile {
        inner: poset::dominance_rank_profile(n, d).map_err(py_err)?,
    })
}

/// Exact width of the dominance poset on the given index subsets, by
/// maximum matching on the comparability relation.
#[pyfunction]
fn dilworth_width(subsets: Vec<Vec<u32>>) -> PyResult<u64> {
    poset::dilworth_width(&subsets).map_err(py_err)
}

/// All d-subsets of {0..n-1} as sorted index vectors.
#[pyfunction]
fn index_subsets(n: u32, d: u32) -> Vec<Vec<u32>> {
    poset::index_subsets(n, d).collect()
}

/// True when no two of the given subsets are dominance-comparable.
#[pyfunction]
fn antichain_verify(subsets: Vec<Vec<usize>>) -> PyResult<bool> {
    let masks: Vec<SubsetMask> = subsets
        .iter()
        .map(|s| to_mask(s))
        .collect::<PyResult<_>>()?;
    poset::antichain_verify(&masks).map_err(py_err)
}

/// A width bound checked exactly on squared integers.
#[pyclass(name = "BoundComparison", frozen)]
struct PyBoundComparison {
    inner: poset::BoundComparison,
}

#[pymethods]
impl PyBoundComparison {
    #[getter]
    fn exact_width(&self) -> u64 {
        self.inner.exact_width
    }
    #[getter]
    fn bound_squared_lhs(&self) -> BigUint {
        self.inner.bound_squared_lhs.clone()
    }
    #[getter]
    fn bound_squared_rhs(&self) -> BigUint {
        self.inner.bound_squared_rhs.clone()
    }
    #[getter]
    fn holds(&self) -> bool {
        self.inner.holds
    }

    fn __repr__(&self) -> String {
        format!(
            "BoundComparison(exact_width={}, holds={})",
            self.inner.exact_width, self.inner.holds
        )
    }
}

/// Cube-width bound w^2 d <= 2 (n+d-2)^(2(d-1)); equality at d = 2.
#[pyfunction]
fn lemma1_check(n: usize, d: usize) -> PyResult<PyBoundComparison> {
    Ok(PyBoundComparison {
        inner: poset::lemma1_check(n, d).map_err(py_err)?,
    })
}

/// Dominance-width bound (w n)^2 d < 4 C(n,d)^2 at one point.
#[pyfunction]
fn lemma2_check(n: usize, d: usize) -> PyResult<PyBoundComparison> {
    Ok(PyBoundComparison {
        inner: poset::lemma2_check(n, d).map_err(py_err)?.comparison,
    })
}

/// Least n from which the dominance-width bound holds through n_max, with
/// the failing prefix listed; threshold is None when n_max itself fails.
#[pyfunction]
fn lemma2_threshold(d: usize, n_max: usize) -> PyResult<(Option<usize>, Vec<usize>)> {
    let t = poset::lemma2_threshold(d, n_max).map_err(py_err)?;
    Ok((t.threshold, t.failures))
}

#[pyfunction]
fn binomial(n: u64, k: u64) -> u64 {
    numtheory::binomial(n, k)
}

#[pyfunction]
fn binomial_big(n: u64, k: u64) -> BigUint {
    numtheory::binomial_big(n, k)
}

/// (prime, exponent) pairs, ascending.
#[pyfunction]
fn factorize(n: u64) -> PyResult<Vec<(u64, u32)>> {
    numtheory::factorize(n).map_err(py_err)
}

#[pyfunction]
fn divisor_count(n: u64) -> PyResult<u64> {
    numtheory::divisor_count(n).map_err(py_err)
}

#[pyfunction]
fn divisors(n: u64) -> PyResult<Vec<u64>> {
    numtheory::divisors(n).map_err(py_err)
}

/// Where d(n)^k / n peaks on 2..=n_max: returns (best_n, best_d, ratio).
#[pyfunction]
fn lemma3_scan(k: u32, n_max: u64) -> PyResult<(u64, u64, Rational)> {
    let r = numtheory::lemma3_scan(k, n_max).map_err(py_err)?;
    Ok((r.best_n, r.best_d, r.ratio))
}

/// All positive (x, y) with m/n = a/x + b/y, a/x and b/y in lowest terms,
/// sorted by x. Needs gcd(m, n) = 1.
#[pyfunction]
fn frac_pair_solutions(m: u64, n: u64, a: u64, b: u64) -> PyResult<Vec<(u64, u64)>> {
    let inst = numtheory::FracPairInstance::new(m, n, a, b).map_err(py_err)?;
    numtheory::frac_pair_solutions(&inst).map_err(py_err)
}

/// Brute-force x-scan solver for the same equation, for cross-checking.
#[pyfunction]
#[pyo3(signature = (m, n, a, b, budget=None))]
fn frac_pair_oracle(m: u64, n: u64, a: u64, b: u64, budget: Option<u64>) -> PyResult<Vec<(u64, u64)>> {
    let inst = numtheory::FracPairInstance::new(m, n, a, b).map_err(py_err)?;
    numtheory::frac_pair_oracle(&inst, budget).map_err(py_err)
}

/// Agreement report for the two fraction-pair solvers over a full grid.
#[pyclass(name = "GridCheckReport", frozen)]
struct PyGridCheckReport {
    inner: numtheory::GridCheckReport,
}

#[pymethods]
impl PyGridCheckReport {
    #[getter]
    fn limit(&self) -> u64 {
        self.inner.limit
    }
    #[getter]
    fn instances(&self) -> u64 {
        self.inner.instances
    }
    #[getter]
    fn total_solutions(&self) -> u64 {
        self.inner.total_solutions
    }
    #[getter]
    fn all_match(&self) -> bool {
        self.inner.all_match
    }
    /// The first disagreeing (m, n, a, b), if any.
    #[getter]
    fn first_mismatch(&self) -> Option<(u64, u64, u64, u64)> {
        self.inner.first_mismatch.map(|i| (i.m, i.n, i.a, i.b))
    }
    /// Instances with more solutions than divisors of a b n^2; always 0.
    #[getter]
    fn bound_violations(&self) -> u64 {
        self.inner.bound_violations
    }

    fn __repr__(&self) -> String {
        format!(
            "GridCheckReport(limit={}, instances={}, all_match={})",
            self.inner.limit, self.inner.instances, self.inner.all_match
        )
    }
}

/// Runs both fraction-pair solvers on every m, n, a, b <= limit with
/// gcd(m, n) = 1 and compares their ordered solution lists.
#[pyfunction]
fn frac_pair_grid_check(limit: u64) -> PyResult<PyGridCheckReport> {
    Ok(PyGridCheckReport {
        inner: numtheory::frac_pair_grid_check(limit).map_err(py_err)?,
    })
}

/// One canonical set that met the report threshold.
#[pyclass(name = "SearchRecord", frozen)]
struct PySearchRecord {
    inner: search::SearchRecord,
}

#[pymethods]
impl PySearchRecord {
    /// Elements ascending, gcd 1.
    #[getter]
    fn set(&self) -> Vec<u64> {
        self.inner.set.clone()
    }
    #[getter]
    fn total(&self) -> u64 {
        self.inner.total
    }
    #[getter]
    fn count(&self) -> u64 {
        self.inner.count
    }
    #[getter]
    fn is_anti_pencil(&self) -> bool {
        self.inner.is_anti_pencil
    }
    #[getter]
    fn exceeds(&self) -> bool {
        self.inner.exceeds
    }

    fn __repr__(&self) -> String {
        format!(
            "SearchRecord(set={:?}, count={}, is_anti_pencil={}, exceeds={})",
            self.inner.set, self.inner.count, self.inner.is_anti_pencil, self.inner.exceeds
        )
    }
}

/// Aggregates over the recorded sets of one search.
#[pyclass(name = "SearchSummary", frozen)]
struct PySearchSummary {
    inner: search::SearchSummary,
}

#[pymethods]
impl PySearchSummary {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }
    #[getter]
    fn k(&self) -> usize {
        self.inner.k
    }
    #[getter]
    fn s(&self) -> u64 {
        self.inner.s
    }
    #[getter]
    fn sum_bound(&self) -> u64 {
        self.inner.sum_bound
    }
    #[getter]
    fn target(&self) -> u64 {
        self.inner.target
    }
    #[getter]
    fn report_threshold(&self) -> u64 {
        self.inner.report_threshold
    }
    #[getter]
    fn max_count(&self) -> u64 {
        self.inner.max_count
    }
    #[getter]
    fn max_attainers(&self) -> Vec<Vec<u64>> {
        self.inner.max_attainers.clone()
    }
    /// Sets with count above the C(n-1, k) target.
    #[getter]
    fn exceeders(&self) -> Vec<PySearchRecord> {
        self.inner
            .exceeders
            .iter()
            .map(|r| PySearchRecord { inner: r.clone() })
            .collect()
    }
    /// Sets meeting the target exactly without being anti-pencils.
    #[getter]
    fn boundary_non_anti_pencils(&self) -> Vec<PySearchRecord> {
        self.inner
            .boundary_non_anti_pencils
            .iter()
            .map(|r| PySearchRecord { inner: r.clone() })
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "SearchSummary(n={}, k={}, s={}, sum_bound={}, max_count={}, max_attainers={:?})",
            self.inner.n, self.inner.k, self.inner.s, self.inner.sum_bound, self.inner.max_count, self.inner.max_attainers
        )
    }
}

/// Searches every canonical set (distinct positive integers, gcd 1) of size
/// n with total at most sum_bound; returns (records, summary). `threshold`
/// overrides the default C(n-1, k) reporting cutoff (0 records everything),
/// `checkpoint` makes the scan resumable, and `budget` caps the number of
/// sets evaluated in this run, raising RuntimeError when exhausted.
#[pyfunction]
#[pyo3(signature = (n, k, sum_bound, s=1, jobs=1, checkpoint=None, threshold=None, budget=None))]
#[allow(clippy::too_many_arguments)]
fn exhaustive_search(
    n: usize,
    k: usize,
    sum_bound: u64,
    s: u64,
    jobs: usize,
    checkpoint: Option<PathBuf>,
    threshold: Option<u64>,
    budget: Option<u64>,
) -> PyResult<(Vec<PySearchRecord>, PySearchSummary)> {
    let mut cfg = search::SearchConfig::new(n, k, s, sum_bound);
    cfg.jobs = jobs;
    cfg.checkpoint_path = checkpoint;
    cfg.report_threshold = threshold;
    cfg.budget = budget;
    let out = search::exhaustive_search(&cfg).map_err(py_err)?;
    let records = out
        .records
        .into_iter()
        .map(|r| PySearchRecord { inner: r })
        .collect();
    Ok((records, PySearchSummary { inner: out.summary }))
}

/// One (n, k) cell of `verify_theorem_grid`.
#[pyclass(name = "GridCell", frozen)]
struct PyGridCell {
    inner: search::GridCell,
}

#[pymethods]
impl PyGridCell {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }
    #[getter]
    fn k(&self) -> usize {
        self.inner.k
    }
    #[getter]
    fn s(&self) -> u64 {
        self.inner.s
    }
    #[getter]
    fn sum_bound(&self) -> u64 {
        self.inner.sum_bound
    }
    #[getter]
    fn target(&self) -> u64 {
        self.inner.target
    }
    /// Canonical sets meeting the target without being anti-pencils.
    #[getter]
    fn exceptions(&self) -> Vec<PySearchRecord> {
        self.inner
            .exceptions
            .iter()
            .map(|r| PySearchRecord { inner: r.clone() })
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "GridCell(n={}, k={}, s={}, exceptions={})",
            self.inner.n,
            self.inner.k,
            self.inner.s,
            self.inner.exceptions.len()
        )
    }
}

/// Runs the search on every (n, k) in the inclusive ranges and reports, per
/// cell, the sets that meet the C(n-1, k) target without being anti-pencils.
#[pyfunction]
#[pyo3(signature = (n_lo, n_hi, k_lo, k_hi, sum_bound, s=1, jobs=1))]
fn verify_theorem_grid(
    n_lo: usize,
    n_hi: usize,
    k_lo: usize,
    k_hi: usize,
    sum_bound: u64,
    s: u64,
    jobs: usize,
) -> PyResult<Vec<PyGridCell>> {
    let cells = search::verify_theorem_grid(n_lo..=n_hi, k_lo..=k_hi, s, sum_bound, jobs).map_err(py_err)?;
    Ok(cells.into_iter().map(|c| PyGridCell { inner: c }).collect())
}

/// All k-subsets of {0..n-1} as index lists, in increasing mask order.
#[pyfunction(name = "k_subsets")]
fn k_subsets_py(n: usize, k: usize) -> Vec<Vec<usize>> {
    k_subsets(n, k).map(mask_indices).collect()
}

#[pymodule]
fn divlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyGroundSet>()?;
    m.add_class::<PyDivisorReport>()?;
    m.add_class::<PyChainBoundReport>()?;
    m.add_class::<PyMmsReport>()?;
    m.add_class::<PyAntiPencilBuild>()?;
    m.add_class::<PyRankProfile>()?;
    m.add_class::<PyBoundComparison>()?;
    m.add_class::<PyGridCheckReport>()?;
    m.add_class::<PySearchRecord>()?;
    m.add_class::<PySearchSummary>()?;
    m.add_class::<PyGridCell>()?;
    m.add_function(wrap_pyfunction!(count_divisors, m)?)?;
    m.add_function(wrap_pyfunction!(is_s_divisor, m)?)?;
    m.add_function(wrap_pyfunction!(is_anti_pencil, m)?)?;
    m.add_function(wrap_pyfunction!(divisor_chain, m)?)?;
    m.add_function(wrap_pyfunction!(check_chain_bound, m)?)?;
    m.add_function(wrap_pyfunction!(mms_count, m)?)?;
    m.add_function(wrap_pyfunction!(gen_k1_exception, m)?)?;
    m.add_function(wrap_pyfunction!(gen_s_exception, m)?)?;
    m.add_function(wrap_pyfunction!(s_exception_min_n, m)?)?;
    m.add_function(wrap_pyfunction!(huynh_counterexample, m)?)?;
    m.add_function(wrap_pyfunction!(build_anti_pencil, m)?)?;
    m.add_function(wrap_pyfunction!(cube_rank_profile, m)?)?;
    m.add_function(wrap_pyfunction!(dominance_rank_profile, m)?)?;
    m.add_function(wrap_pyfunction!(dilworth_width, m)?)?;
    m.add_function(wrap_pyfunction!(index_subsets, m)?)?;
    m.add_function(wrap_pyfunction!(antichain_verify, m)?)?;
    m.add_function(wrap_pyfunction!(lemma1_check, m)?)?;
    m.add_function(wrap_pyfunction!(lemma2_check, m)?)?;
    m.add_function(wrap_pyfunction!(lemma2_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(binomial, m)?)?;
    m.add_function(wrap_pyfunction!(binomial_big, m)?)?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    m.add_function(wrap_pyfunction!(divisor_count, m)?)?;
    m.add_function(wrap_pyfunction!(divisors, m)?)?;
    m.add_function(wrap_pyfunction!(lemma3_scan, m)?)?;
    m.add_function(wrap_pyfunction!(frac_pair_solutions, m)?)?;
    m.add_function(wrap_pyfunction!(frac_pair_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(frac_pair_grid_check, m)?)?;
    m.add_function(wrap_pyfunction!(exhaustive_search, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem_grid, m)?)?;
    m.add_function(wrap_pyfunction!(k_subsets_py, m)?)?;
    Ok(())
}
