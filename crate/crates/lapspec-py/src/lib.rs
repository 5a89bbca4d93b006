//! Python bindings for the core graph, spectrum, target, construction, and
//! search operations.

use num_bigint::BigInt;
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyType;

use lapspec::{expr, targets, Error};

fn err(e: Error) -> PyErr {
    match e {
        Error::Io { .. } => PyIOError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

#[pyclass(name = "Graph", frozen)]
#[derive(Clone)]
struct PyGraph {
    inner: lapspec::Graph,
}

#[pymethods]
impl PyGraph {
    /// Graph from a graph6 string.
    #[classmethod]
    fn from_graph6(_cls: &Bound<'_, PyType>, s: &str) -> PyResult<PyGraph> {
        Ok(PyGraph { inner: lapspec::Graph::from_graph6(s).map_err(err)? })
    }

    /// Graph on n vertices from an edge list.
    #[classmethod]
    fn from_edges(_cls: &Bound<'_, PyType>, n: usize, edges: Vec<(usize, usize)>) -> PyResult<PyGraph> {
        Ok(PyGraph { inner: lapspec::Graph::from_edges(n, &edges).map_err(err)? })
    }

    /// Graph from a composition expression such as "K2 v (K1 u P3)".
    #[classmethod]
    fn from_expression(_cls: &Bound<'_, PyType>, s: &str) -> PyResult<PyGraph> {
        Ok(PyGraph { inner: expr::parse(s).map_err(err)?.eval().map_err(err)? })
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn to_graph6(&self) -> String {
        self.inner.to_graph6()
    }

    fn complement(&self) -> PyGraph {
        PyGraph { inner: self.inner.complement() }
    }

    fn union(&self, other: &PyGraph) -> PyResult<PyGraph> {
        Ok(PyGraph { inner: lapspec::Graph::disjoint_union(&self.inner, &other.inner).map_err(err)? })
    }

    fn join(&self, other: &PyGraph) -> PyResult<PyGraph> {
        Ok(PyGraph { inner: lapspec::Graph::join(&self.inner, &other.inner).map_err(err)? })
    }

    fn cartesian_product(&self, other: &PyGraph) -> PyResult<PyGraph> {
        Ok(PyGraph {
            inner: lapspec::Graph::cartesian_product(&self.inner, &other.inner).map_err(err)?,
        })
    }

    /// Canonical representative of the isomorphism class.
    fn canonical(&self) -> PyGraph {
        PyGraph { inner: lapspec::canonical_graph(&self.inner) }
    }

    fn is_isomorphic(&self, other: &PyGraph) -> bool {
        lapspec::canonical_form(&self.inner) == lapspec::canonical_form(&other.inner)
    }

    /// Laplacian characteristic polynomial coefficients, constant term first.
    fn char_poly(&self) -> Vec<BigInt> {
        lapspec::laplacian_char_poly(&self.inner).coefficients().to_vec()
    }

    /// Exact integer Laplacian spectrum, or None when not integral.
    fn spectrum(&self) -> Option<Vec<usize>> {
        lapspec::integer_spectrum(&self.inner).map(|s| s.entries().to_vec())
    }

    fn spanning_trees(&self) -> BigInt {
        lapspec::spanning_tree_count(&self.inner)
    }

    fn __richcmp__(&self, other: &PyGraph, op: pyo3::basic::CompareOp) -> PyResult<bool> {
        match op {
            pyo3::basic::CompareOp::Eq => Ok(self.inner == other.inner),
            pyo3::basic::CompareOp::Ne => Ok(self.inner != other.inner),
            _ => Err(PyValueError::new_err("graphs are not ordered")),
        }
    }

    fn __repr__(&self) -> String {
        format!("Graph(graph6={:?}, order={})", self.inner.to_graph6(), self.inner.order())
    }
}

#[pyclass(name = "SpecTarget", frozen)]
#[derive(Clone)]
struct PyTarget {
    inner: targets::SpecTarget,
}

#[pymethods]
impl PyTarget {
    /// Parse "S{i,j}_n^m", "S_i,n", or a printed label.
    #[classmethod]
    fn parse(_cls: &Bound<'_, PyType>, s: &str) -> PyResult<PyTarget> {
        Ok(PyTarget { inner: targets::SpecTarget::parse(s).map_err(err)? })
    }

    #[classmethod]
    fn sin(_cls: &Bound<'_, PyType>, i: usize, n: usize) -> PyResult<PyTarget> {
        Ok(PyTarget { inner: targets::SpecTarget::sin(i, n).map_err(err)? })
    }

    #[classmethod]
    fn sijm(_cls: &Bound<'_, PyType>, i: usize, j: usize, n: usize, m: usize) -> PyResult<PyTarget> {
        Ok(PyTarget { inner: targets::SpecTarget::sijm(i, j, n, m).map_err(err)? })
    }

    /// Recover the target from an integer spectrum, when it has either shape.
    #[classmethod]
    fn from_spectrum(_cls: &Bound<'_, PyType>, entries: Vec<usize>) -> PyResult<Option<PyTarget>> {
        let s = lapspec::Spectrum::new(entries).map_err(err)?;
        Ok(targets::SpecTarget::from_spectrum(&s).map(|inner| PyTarget { inner }))
    }

    fn label(&self) -> String {
        self.inner.label()
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    fn expand(&self) -> Vec<usize> {
        self.inner.expand().entries().to_vec()
    }

    /// "realizable", "not_realizable", or "unknown" by the structure theorems.
    fn theorem_verdict(&self) -> &'static str {
        match targets::theorem_realizable(&self.inner) {
            targets::TheoremVerdict::Realizable => "realizable",
            targets::TheoremVerdict::NotRealizable => "not_realizable",
            targets::TheoremVerdict::Unknown => "unknown",
        }
    }

    fn obstructions(&self) -> Vec<String> {
        targets::all_obstructions(&self.inner).iter().map(|o| o.to_string()).collect()
    }

    fn __repr__(&self) -> String {
        format!("SpecTarget({:?})", self.inner.label())
    }
}

#[pyclass(name = "Construction", frozen)]
struct PyConstruction {
    #[pyo3(get)]
    target: String,
    #[pyo3(get)]
    expression: String,
    /// Applied rules as (rule, target, expression) triples, outermost first.
    #[pyo3(get)]
    trace: Vec<(String, String, String)>,
    witness: PyGraph,
}

#[pymethods]
impl PyConstruction {
    #[getter]
    fn witness(&self) -> PyGraph {
        self.witness.clone()
    }

    fn __repr__(&self) -> String {
        format!("Construction(target={:?}, expression={:?})", self.target, self.expression)
    }
}

/// Verified witness for a theorem-classified realizable target.
#[pyfunction]
fn construct(target: &PyTarget) -> PyResult<PyConstruction> {
    let built = lapspec::construct(&target.inner).map_err(err)?;
    Ok(PyConstruction {
        target: built.target.label(),
        expression: built.trace.expression.to_string(),
        trace: built
            .trace
            .steps
            .iter()
            .map(|s| (s.rule.clone(), s.target.clone(), s.expression.clone()))
            .collect(),
        witness: PyGraph { inner: built.graph },
    })
}

#[pyclass(name = "Searcher")]
struct PySearcher {
    inner: lapspec::Searcher,
}

#[pymethods]
impl PySearcher {
    #[new]
    #[pyo3(signature = (cache_dir=None, allow_long_runs=false))]
    fn new(cache_dir: Option<String>, allow_long_runs: bool) -> PySearcher {
        let mut s = lapspec::Searcher::new().with_long_runs(allow_long_runs);
        if let Some(dir) = cache_dir {
            s = s.with_cache(lapspec::CensusCache::new(dir));
        }
        PySearcher { inner: s }
    }

    /// All connected graphs of one order, one per isomorphism class.
    fn connected(&self, n: usize) -> PyResult<Vec<PyGraph>> {
        Ok(self
            .inner
            .connected_census(n)
            .map_err(err)?
            .iter()
            .map(|g| PyGraph { inner: g.clone() })
            .collect())
    }

    /// Census summary: (connected count, integral count, {spectrum: [graph6]}).
    fn census(&self, n: usize) -> PyResult<(usize, usize, std::collections::BTreeMap<String, Vec<String>>)> {
        let record = self.inner.census(n).map_err(err)?;
        Ok((record.total_connected, record.laplacian_integral, record.by_spectrum.clone()))
    }

    /// Every non-isomorphic realizer of the target at its order.
    fn find_realizations(&self, target: &PyTarget) -> PyResult<Vec<PyGraph>> {
        Ok(self
            .inner
            .find_realizations(&target.inner)
            .map_err(err)?
            .into_iter()
            .map(|g| PyGraph { inner: g })
            .collect())
    }
}

#[pymodule]
fn lapspec_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyTarget>()?;
    m.add_class::<PyConstruction>()?;
    m.add_class::<PySearcher>()?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    Ok(())
}
