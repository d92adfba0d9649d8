use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::WeightedGraph;
use crate::error::{Error, Result};
use crate::rng::trial_rng;
use crate::stats::mean_and_se;

pub const DEFAULT_STEP_CAP: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverMode {
    Vertex,
    Edge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkOptions {
    pub lazy: bool,
    /// Hard step budget per walk; exceeding it yields [`Error::Truncated`].
    pub step_cap: u64,
}

impl Default for WalkOptions {
    fn default() -> Self {
        Self {
            lazy: false,
            step_cap: DEFAULT_STEP_CAP,
        }
    }
}

impl WalkOptions {
    pub fn lazy() -> Self {
        Self {
            lazy: true,
            ..Self::default()
        }
    }
}

/// Summary of per-trial cover times.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverStats {
    pub trials: usize,
    pub mean: f64,
    /// Sample standard deviation over √trials; absent for a single trial.
    pub std_err: Option<f64>,
    pub min: u64,
    pub max: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<u64>>,
}

impl CoverStats {
    pub fn from_values(values: Vec<u64>, retain: bool) -> Self {
        let as_f: Vec<f64> = values.iter().map(|&v| v as f64).collect();
        let (mean, std_err) = mean_and_se(&as_f);
        Self {
            trials: values.len(),
            mean,
            std_err,
            min: values.iter().copied().min().unwrap_or(0),
            max: values.iter().copied().max().unwrap_or(0),
            values: retain.then_some(values),
        }
    }

    /// Normal-approximation confidence interval `mean ± z·SE`.
    pub fn confidence_interval(&self, z: f64) -> Option<(f64, f64)> {
        self.std_err
            .map(|se| (self.mean - z * se, self.mean + z * se))
    }
}

/// Per-start cover statistics and the maximising start.
#[derive(Clone, Debug, Serialize)]
pub struct CoverEstimate {
    pub per_start: Vec<(usize, CoverStats)>,
    pub argmax: usize,
    pub max_mean: f64,
}

impl CoverEstimate {
    pub fn max_stats(&self) -> &CoverStats {
        &self
            .per_start
            .iter()
            .find(|(s, _)| *s == self.argmax)
            .expect("argmax is a start")
            .1
    }
}

struct Tracker {
    seen_vertex: Vec<bool>,
    seen_edge: Vec<bool>,
    vertices_left: usize,
    edges_left: usize,
}

impl Tracker {
    fn new(g: &WeightedGraph, start: usize) -> Self {
        let mut seen_vertex = vec![false; g.vertex_count()];
        seen_vertex[start] = true;
        Self {
            seen_vertex,
            seen_edge: vec![false; g.edge_count()],
            vertices_left: g.vertex_count() - 1,
            edges_left: g.edge_count(),
        }
    }

    #[inline]
    fn record(&mut self, v: usize, e: Option<usize>) {
        if !self.seen_vertex[v] {
            self.seen_vertex[v] = true;
            self.vertices_left -= 1;
        }
        if let Some(e) = e {
            if !self.seen_edge[e] {
                self.seen_edge[e] = true;
                self.edges_left -= 1;
            }
        }
    }
}

/// Runs one walk from `start` until both the vertex and the edge sets are
/// covered; returns `(vertex cover time, edge cover time)`.
pub fn cover_times_both<R: Rng + ?Sized>(
    g: &WeightedGraph,
    start: usize,
    opts: WalkOptions,
    rng: &mut R,
) -> Result<(u64, u64)> {
    check_walkable(g, start)?;
    walk_until(g, start, opts, rng, |t| {
        t.vertices_left == 0 && t.edges_left == 0
    })
}

pub fn vertex_cover_time<R: Rng + ?Sized>(
    g: &WeightedGraph,
    start: usize,
    opts: WalkOptions,
    rng: &mut R,
) -> Result<u64> {
    check_walkable(g, start)?;
    cover_unchecked(g, start, CoverMode::Vertex, opts, rng)
}

pub fn edge_cover_time<R: Rng + ?Sized>(
    g: &WeightedGraph,
    start: usize,
    opts: WalkOptions,
    rng: &mut R,
) -> Result<u64> {
    check_walkable(g, start)?;
    cover_unchecked(g, start, CoverMode::Edge, opts, rng)
}

fn check_walkable(g: &WeightedGraph, start: usize) -> Result<()> {
    if start >= g.vertex_count() {
        return Err(Error::invalid(format!("start vertex {start} out of range")));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

fn cover_unchecked<R: Rng + ?Sized>(
    g: &WeightedGraph,
    start: usize,
    mode: CoverMode,
    opts: WalkOptions,
    rng: &mut R,
) -> Result<u64> {
    let (v, e) = match mode {
        CoverMode::Vertex => walk_until(g, start, opts, rng, |t| t.vertices_left == 0)?,
        CoverMode::Edge => walk_until(g, start, opts, rng, |t| t.edges_left == 0)?,
    };
    Ok(match mode {
        CoverMode::Vertex => v,
        CoverMode::Edge => e,
    })
}

/// Walks until `done` holds; returns the first times at which all vertices
/// and all edges were covered (the latter only meaningful if reached).
fn walk_until<R: Rng + ?Sized>(
    g: &WeightedGraph,
    start: usize,
    opts: WalkOptions,
    rng: &mut R,
    done: impl Fn(&Tracker) -> bool,
) -> Result<(u64, u64)> {
    let mut tr = Tracker::new(g, start);
    let mut vertex_time = if tr.vertices_left == 0 { Some(0) } else { None };
    let mut edge_time = if tr.edges_left == 0 { Some(0) } else { None };
    let mut cur = start;
    let mut t: u64 = 0;
    while !done(&tr) {
        if t >= opts.step_cap {
            return Err(Error::Truncated(opts.step_cap));
        }
        t += 1;
        if opts.lazy && rng.random::<bool>() {
            continue;
        }
        let (next, e) = g.step_edge(cur, rng);
        tr.record(next, e);
        cur = next;
        if vertex_time.is_none() && tr.vertices_left == 0 {
            vertex_time = Some(t);
        }
        if edge_time.is_none() && tr.edges_left == 0 {
            edge_time = Some(t);
        }
    }
    Ok((vertex_time.unwrap_or(t), edge_time.unwrap_or(t)))
}

/// Cover-time statistics for each start in `starts`, `trials` walks each.
/// Walk `j` from the `i`-th start uses stream `i * trials + j`.
pub fn cover_stats_from(
    g: &WeightedGraph,
    starts: &[usize],
    trials: usize,
    mode: CoverMode,
    opts: WalkOptions,
    seed: u64,
    retain: bool,
) -> Result<Vec<CoverStats>> {
    if trials == 0 {
        return Err(Error::invalid("trials must be positive"));
    }
    if let Some(&s) = starts.iter().find(|&&s| s >= g.vertex_count()) {
        return Err(Error::invalid(format!("start vertex {s} out of range")));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    starts
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let values: Vec<u64> = (0..trials)
                .into_par_iter()
                .map(|j| {
                    let mut rng = trial_rng(seed, (i * trials + j) as u64);
                    cover_unchecked(g, s, mode, opts, &mut rng)
                })
                .collect::<Result<_>>()?;
            Ok(CoverStats::from_values(values, retain))
        })
        .collect()
}

/// Cover-time statistics where every trial starts at a vertex drawn
/// uniformly from `starts` (from its own stream).
pub fn cover_stats_random_start(
    g: &WeightedGraph,
    starts: &[usize],
    trials: usize,
    mode: CoverMode,
    opts: WalkOptions,
    seed: u64,
    retain: bool,
) -> Result<CoverStats> {
    if trials == 0 || starts.is_empty() {
        return Err(Error::invalid("need at least one trial and one start"));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let values: Vec<u64> = (0..trials)
        .into_par_iter()
        .map(|j| {
            let mut rng = trial_rng(seed, j as u64);
            let s = starts[rng.random_range(0..starts.len())];
            cover_unchecked(g, s, mode, opts, &mut rng)
        })
        .collect::<Result<_>>()?;
    Ok(CoverStats::from_values(values, retain))
}

/// Estimates `max_v C_v` by running `trials` walks from every vertex.
pub fn estimate_cover_time(
    g: &WeightedGraph,
    trials: usize,
    mode: CoverMode,
    opts: WalkOptions,
    seed: u64,
) -> Result<CoverEstimate> {
    let starts: Vec<usize> = (0..g.vertex_count()).collect();
    let stats = cover_stats_from(g, &starts, trials, mode, opts, seed, false)?;
    let (argmax, best) = stats
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.mean.total_cmp(&b.1.mean))
        .expect("nonempty graph");
    let max_mean = best.mean;
    Ok(CoverEstimate {
        per_start: starts.into_iter().zip(stats).collect(),
        argmax,
        max_mean,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Multigraph;

    #[test]
    fn single_edge_covers_in_one_step() {
        let g = WeightedGraph::from_multigraph(&Multigraph::path(2));
        let mut rng = trial_rng(0, 0);
        for _ in 0..10 {
            assert_eq!(
                vertex_cover_time(&g, 0, WalkOptions::default(), &mut rng).unwrap(),
                1
            );
            assert_eq!(
                edge_cover_time(&g, 1, WalkOptions::default(), &mut rng).unwrap(),
                1
            );
        }
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = WeightedGraph::new(3, vec![(0, 1, 1.0)]).unwrap();
        let mut rng = trial_rng(0, 0);
        assert!(matches!(
            vertex_cover_time(&g, 0, WalkOptions::default(), &mut rng),
            Err(Error::Disconnected)
        ));
        assert!(matches!(
            estimate_cover_time(&g, 3, CoverMode::Vertex, WalkOptions::default(), 1),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn truncation_is_reported() {
        let g = WeightedGraph::from_multigraph(&Multigraph::cycle(50));
        let opts = WalkOptions {
            lazy: false,
            step_cap: 10,
        };
        let mut rng = trial_rng(0, 0);
        assert!(matches!(
            vertex_cover_time(&g, 0, opts, &mut rng),
            Err(Error::Truncated(10))
        ));
    }

    #[test]
    fn single_trial_has_no_standard_error() {
        let g = WeightedGraph::from_multigraph(&Multigraph::cycle(4));
        let est = estimate_cover_time(&g, 1, CoverMode::Vertex, WalkOptions::default(), 3).unwrap();
        assert!(est.per_start.iter().all(|(_, s)| s.std_err.is_none()));
    }

    #[test]
    fn edge_cover_dominates_vertex_cover_on_same_stream() {
        let g = WeightedGraph::from_multigraph(&Multigraph::petersen());
        for i in 0..200 {
            let v = vertex_cover_time(&g, 0, WalkOptions::default(), &mut trial_rng(5, i)).unwrap();
            let e = edge_cover_time(&g, 0, WalkOptions::default(), &mut trial_rng(5, i)).unwrap();
            let (bv, be) =
                cover_times_both(&g, 0, WalkOptions::default(), &mut trial_rng(5, i)).unwrap();
            assert!(e >= v);
            assert_eq!((bv, be), (v, e));
        }
    }

    #[test]
    fn results_do_not_depend_on_thread_count() {
        let g = WeightedGraph::from_multigraph(&Multigraph::petersen());
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| {
                    cover_stats_from(
                        &g,
                        &[0, 3],
                        64,
                        CoverMode::Vertex,
                        WalkOptions::default(),
                        9,
                        true,
                    )
                    .unwrap()
                })
        };
        assert_eq!(run(1), run(4));
    }
}
