//! Python bindings. Graphs, degree sequences and the main simulation, exact
//! and prediction entry points are exposed under the `covertime_py` module.

#[pyo3::pymodule]
pub mod covertime_py {
    use std::collections::BTreeMap;

    use covertime::exact::{self, MixingOutcome};
    use covertime::graph::{self, Multigraph};
    use covertime::predict::{self, Regime, RegimeThresholds};
    use covertime::rng::trial_rng;
    use covertime::walk::{self, CoverMode, StartMode, WalkOptions};
    use covertime::{surrogate, WeightedGraph};
    use pyo3::exceptions::{PyOverflowError, PyRuntimeError, PyValueError};
    use pyo3::prelude::*;

    fn err(e: covertime::Error) -> PyErr {
        match e {
            covertime::Error::SizeLimit { .. } => PyOverflowError::new_err(e.to_string()),
            covertime::Error::Truncated(_) => PyRuntimeError::new_err(e.to_string()),
            _ => PyValueError::new_err(e.to_string()),
        }
    }

    fn mode(name: &str) -> PyResult<CoverMode> {
        match name {
            "vertex" => Ok(CoverMode::Vertex),
            "edge" => Ok(CoverMode::Edge),
            _ => Err(PyValueError::new_err(format!(
                "mode must be 'vertex' or 'edge', got {name:?}"
            ))),
        }
    }

    /// Undirected weighted multigraph; loops and parallel edges allowed.
    #[pyclass(name = "Graph", frozen)]
    pub struct Graph {
        inner: WeightedGraph,
    }

    impl Graph {
        fn wrap(g: &Multigraph) -> Self {
            Graph {
                inner: WeightedGraph::from_multigraph(g),
            }
        }
    }

    #[pymethods]
    impl Graph {
        /// `edges` is a list of `(u, v)` or `(u, v, conductance)`.
        #[new]
        #[pyo3(signature = (n, edges, weights=None))]
        fn new(n: usize, edges: Vec<(usize, usize)>, weights: Option<Vec<f64>>) -> PyResult<Self> {
            let w = weights.unwrap_or_else(|| vec![1.0; edges.len()]);
            if w.len() != edges.len() {
                return Err(PyValueError::new_err("weights and edges differ in length"));
            }
            let e = edges
                .into_iter()
                .zip(w)
                .map(|((u, v), k)| (u, v, k))
                .collect();
            Ok(Graph {
                inner: WeightedGraph::new(n, e).map_err(err)?,
            })
        }

        #[staticmethod]
        fn cycle(n: usize) -> Self {
            Self::wrap(&Multigraph::cycle(n))
        }

        #[staticmethod]
        fn path(n: usize) -> Self {
            Self::wrap(&Multigraph::path(n))
        }

        #[staticmethod]
        fn complete(n: usize) -> Self {
            Self::wrap(&Multigraph::complete(n))
        }

        #[staticmethod]
        fn star(leaves: usize) -> Self {
            Self::wrap(&Multigraph::star(leaves))
        }

        #[staticmethod]
        fn petersen() -> Self {
            Self::wrap(&Multigraph::petersen())
        }

        /// Parses the text graph format (`vertices n` then `u v [kappa]` lines).
        #[staticmethod]
        fn parse(text: &str) -> PyResult<Self> {
            let f = graph::io::GraphFile::parse(text).map_err(err)?;
            Ok(Graph {
                inner: f.to_weighted().map_err(err)?,
            })
        }

        fn render(&self) -> String {
            graph::io::GraphFile::from_weighted(&self.inner).render()
        }

        #[getter]
        fn vertex_count(&self) -> usize {
            self.inner.vertex_count()
        }

        #[getter]
        fn edge_count(&self) -> usize {
            self.inner.edge_count()
        }

        fn edges(&self) -> Vec<(usize, usize, f64)> {
            self.inner.edges().to_vec()
        }

        fn degrees(&self) -> Vec<usize> {
            self.inner.to_multigraph().degrees()
        }

        fn stationary(&self) -> Vec<f64> {
            self.inner.stationary()
        }

        fn is_connected(&self) -> bool {
            self.inner.is_connected()
        }

        fn __repr__(&self) -> String {
            format!(
                "Graph(vertices={}, edges={})",
                self.inner.vertex_count(),
                self.inner.edge_count()
            )
        }
    }

    #[pyclass(name = "DegreeSequence", frozen)]
    pub struct Degrees {
        inner: graph::DegreeSequence,
    }

    #[pymethods]
    impl Degrees {
        #[new]
        fn new(degrees: Vec<usize>) -> PyResult<Self> {
            Ok(Degrees {
                inner: graph::DegreeSequence::new(degrees).map_err(err)?,
            })
        }

        /// `n` vertices of degree `d` and `nu2` of degree two.
        #[staticmethod]
        #[pyo3(signature = (d, n, nu2=0))]
        fn regular(d: usize, n: usize, nu2: usize) -> PyResult<Self> {
            Ok(Degrees {
                inner: graph::DegreeSequence::from_counts(&[(d, n), (2, nu2)]).map_err(err)?,
            })
        }

        #[getter]
        fn nu2(&self) -> usize {
            self.inner.nu2()
        }

        #[getter]
        fn kernel_edges(&self) -> usize {
            self.inner.kernel_edges()
        }

        #[getter]
        fn total_edges(&self) -> usize {
            self.inner.total_edges()
        }

        #[getter]
        fn xi(&self) -> f64 {
            self.inner.xi()
        }

        /// Draws the subdivided configuration-model graph and returns it
        /// expanded.
        fn sample(&self, seed: u64) -> PyResult<Graph> {
            let sub = graph::sample_g_d(&self.inner, &mut trial_rng(seed, 0)).map_err(err)?;
            Ok(Graph::wrap(&sub.expand()))
        }

        fn __len__(&self) -> usize {
            self.inner.len()
        }
    }

    /// Mean, standard error, min and max of the cover time from `start`
    /// (`None` draws a uniform start per trial).
    #[pyfunction]
    #[pyo3(signature = (graph, trials, seed, start=None, mode="vertex", lazy=false))]
    fn cover_time(
        py: Python<'_>,
        graph: &Graph,
        trials: usize,
        seed: u64,
        start: Option<usize>,
        mode: &str,
        lazy: bool,
    ) -> PyResult<BTreeMap<&'static str, f64>> {
        let m = self::mode(mode)?;
        let opts = WalkOptions {
            lazy,
            ..WalkOptions::default()
        };
        let g = &graph.inner;
        let s = py
            .detach(|| match start {
                Some(v) => walk::cover_stats_from(g, &[v], trials, m, opts, seed, false)
                    .map(|mut s| s.remove(0)),
                None => {
                    let all: Vec<usize> = (0..g.vertex_count()).collect();
                    walk::cover_stats_random_start(g, &all, trials, m, opts, seed, false)
                }
            })
            .map_err(err)?;
        Ok(BTreeMap::from([
            ("mean", s.mean),
            ("std_err", s.std_err.unwrap_or(f64::NAN)),
            ("min", s.min as f64),
            ("max", s.max as f64),
            ("trials", s.trials as f64),
        ]))
    }

    /// Empirical probability of not visiting `v` during `[window, t]` for
    /// each `t`, from a stationary start.
    #[pyfunction]
    #[pyo3(signature = (graph, v, times, trials, seed, window=0))]
    fn unvisit_probability(
        graph: &Graph,
        v: usize,
        times: Vec<u64>,
        trials: usize,
        seed: u64,
        window: u64,
    ) -> PyResult<Vec<f64>> {
        walk::empirical_unvisit_prob(
            &graph.inner,
            v,
            window,
            &times,
            trials,
            StartMode::Stationary,
            WalkOptions::default(),
            seed,
        )
        .map_err(err)
    }

    #[pyfunction]
    fn effective_resistance(graph: &Graph, u: usize, v: usize) -> PyResult<f64> {
        exact::effective_resistance(&graph.inner, u, v).map_err(err)
    }

    #[pyfunction]
    fn commute_time(graph: &Graph, u: usize, v: usize) -> PyResult<f64> {
        exact::commute_time(&graph.inner, u, v).map_err(err)
    }

    /// `(phi, set)` by exhaustive enumeration; small graphs only.
    #[pyfunction]
    fn conductance(graph: &Graph) -> PyResult<(f64, Vec<usize>)> {
        let c = exact::conductance_exact(&graph.inner).map_err(err)?;
        Ok((c.phi, c.set))
    }

    /// `(gap, lambda2, lambda_min)` of the (optionally lazy) walk.
    #[pyfunction]
    #[pyo3(signature = (graph, lazy=false))]
    fn spectral_gap(graph: &Graph, lazy: bool) -> PyResult<(f64, f64, f64)> {
        let p = exact::transition_matrix(&graph.inner, lazy).map_err(err)?;
        let s = exact::spectral_gap(&p).map_err(err)?;
        Ok((s.gap, s.lambda2, s.lambda_min))
    }

    /// Steps until every row is within `epsilon` of stationarity, or `None`
    /// if the cap is reached.
    #[pyfunction]
    #[pyo3(signature = (graph, epsilon=1e-6, lazy=true, cap=100_000))]
    fn mixing_time(graph: &Graph, epsilon: f64, lazy: bool, cap: u64) -> PyResult<Option<u64>> {
        let p = exact::transition_matrix(&graph.inner, lazy).map_err(err)?;
        Ok(match exact::tv_mixing_time(&p, epsilon, cap) {
            MixingOutcome::Mixed { steps } => Some(steps),
            MixingOutcome::CapReached { .. } => None,
        })
    }

    /// `(bound, set)` maximising the Matthews lower bound.
    #[pyfunction]
    fn matthews_bound(graph: &Graph) -> PyResult<(f64, Vec<usize>)> {
        let m = exact::best_matthews_bound(&graph.inner).map_err(err)?;
        Ok((m.bound, m.set))
    }

    fn regime_name(r: Regime) -> String {
        match r {
            Regime::A => "A".into(),
            Regime::B { .. } => "B".into(),
            Regime::C => "C".into(),
        }
    }

    fn prediction_dict(p: predict::Prediction) -> BTreeMap<&'static str, PredValue> {
        BTreeMap::from([
            ("regime", PredValue::S(regime_name(p.regime))),
            ("alpha_hat", PredValue::F(p.inputs.alpha_hat)),
            ("constant", PredValue::F(p.constant)),
            ("scale", PredValue::F(p.scale)),
            ("value", PredValue::F(p.value)),
        ])
    }

    #[derive(IntoPyObject)]
    enum PredValue {
        S(String),
        F(f64),
    }

    /// Leading-order cover-time prediction from kernel edges `m`, degree-two
    /// count `nu2` and minimum kernel degree `d`.
    #[pyfunction]
    #[pyo3(signature = (m, nu2, d, alpha_lo=0.05, alpha_hi=0.95))]
    fn predict_cover_time(
        m: f64,
        nu2: f64,
        d: u32,
        alpha_lo: f64,
        alpha_hi: f64,
    ) -> PyResult<BTreeMap<&'static str, PredValue>> {
        let th = RegimeThresholds {
            lo: alpha_lo,
            hi: alpha_hi,
        };
        Ok(prediction_dict(
            predict::predict_from_counts(m, nu2, d, th).map_err(err)?,
        ))
    }

    /// `(giant, two_core)` cover-time predictions for G(n, c/n).
    #[pyfunction]
    fn predict_gnp(c: f64, n: f64) -> PyResult<(f64, f64)> {
        let p = predict::predict_gnp(c, n).map_err(err)?;
        Ok((p.cover_giant, p.cover_two_core))
    }

    #[pyfunction]
    fn phi(alpha: f64, d: u32) -> PyResult<f64> {
        predict::phi(alpha, d).map_err(err)
    }

    #[pyfunction]
    fn tree_constant(d: u32) -> f64 {
        predict::tree_constant(d)
    }

    /// Probability that a walk from the hub of a spider first reaches each leaf.
    #[pyfunction]
    fn star_exit_law(lengths: Vec<usize>) -> Vec<f64> {
        walk::star_exit_law(&lengths)
    }

    /// Weighted surrogate of `graph`: degree-two paths are contracted and cut
    /// into pieces of length about `ell_star`.
    #[pyfunction]
    fn surrogate_graph(graph: &Graph, ell_star: usize) -> PyResult<Graph> {
        let ext = graph::extract_kernel(&graph.inner.to_multigraph()).map_err(err)?;
        let sg = surrogate::build_g0(&ext.graph, ell_star).map_err(err)?;
        Ok(Graph {
            inner: sg.graph().clone(),
        })
    }
}
