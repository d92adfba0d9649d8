use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use super::DENSE_LIMIT;
use crate::error::{Error, Result};
use crate::walk::WeightedGraph;

/// Row-stochastic transition matrix of the (optionally lazy) walk, stored by
/// sparse rows, with its stationary vector `π_v = κ(v)/κ(V)`.
#[derive(Clone, Debug)]
pub struct TransitionMatrix {
    rows: Vec<Vec<(usize, f64)>>,
    pi: Vec<f64>,
    lazy: bool,
}

pub fn transition_matrix(g: &WeightedGraph, lazy: bool) -> Result<TransitionMatrix> {
    transition_matrix_with_limit(g, lazy, DENSE_LIMIT)
}

pub fn transition_matrix_with_limit(
    g: &WeightedGraph,
    lazy: bool,
    max_vertices: usize,
) -> Result<TransitionMatrix> {
    let n = g.vertex_count();
    if n > max_vertices {
        return Err(Error::SizeLimit {
            what: "transition matrix vertices",
            limit: max_vertices,
            got: n,
        });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut rows = Vec::with_capacity(n);
    let mut acc = vec![0.0; n];
    let mut touched = Vec::new();
    for u in 0..n {
        let ku = g.vertex_weight(u);
        for &(w, e) in g.neighbours(u) {
            if acc[w] == 0.0 {
                touched.push(w);
            }
            acc[w] += g.edges()[e].2 / ku;
        }
        if lazy {
            if acc[u] == 0.0 {
                touched.push(u);
            }
            for &w in &touched {
                acc[w] *= 0.5;
            }
            acc[u] += 0.5;
        }
        touched.sort_unstable();
        rows.push(touched.iter().map(|&w| (w, acc[w])).collect());
        for &w in &touched {
            acc[w] = 0.0;
        }
        touched.clear();
    }
    Ok(TransitionMatrix {
        rows,
        pi: g.stationary(),
        lazy,
    })
}

impl TransitionMatrix {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pi(&self) -> &[f64] {
        &self.pi
    }

    pub fn is_lazy(&self) -> bool {
        self.lazy
    }

    pub fn row(&self, u: usize) -> &[(usize, f64)] {
        &self.rows[u]
    }

    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.rows[u]
            .binary_search_by_key(&v, |e| e.0)
            .map_or(0.0, |i| self.rows[u][i].1)
    }

    /// Row vector times P.
    pub fn apply(&self, dist: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; dist.len()];
        for (u, &mass) in dist.iter().enumerate() {
            if mass != 0.0 {
                for &(v, p) in &self.rows[u] {
                    out[v] += mass * p;
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> Result<DMatrix<f64>> {
        let n = self.len();
        if n > DENSE_LIMIT {
            return Err(Error::SizeLimit {
                what: "dense matrix vertices",
                limit: DENSE_LIMIT,
                got: n,
            });
        }
        let mut m = DMatrix::zeros(n, n);
        for (u, row) in self.rows.iter().enumerate() {
            for &(v, p) in row {
                m[(u, v)] = p;
            }
        }
        Ok(m)
    }

    /// Largest deviation of a row sum from 1.
    pub fn row_sum_error(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| (r.iter().map(|e| e.1).sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// max_v |(πP)_v − π_v|.
    pub fn stationarity_error(&self) -> f64 {
        self.apply(&self.pi)
            .iter()
            .zip(&self.pi)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// max_{x,y} |π_x P(x,y) − π_y P(y,x)|.
    pub fn detailed_balance_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (x, row) in self.rows.iter().enumerate() {
            for &(y, p) in row {
                worst = worst.max((self.pi[x] * p - self.pi[y] * self.get(y, x)).abs());
            }
        }
        worst
    }

    /// True if the support graph has no odd cycle (hence the chain has period 2).
    pub fn is_bipartite(&self) -> bool {
        let n = self.len();
        let mut colour = vec![u8::MAX; n];
        colour[0] = 0;
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            for &(v, p) in &self.rows[u] {
                if p == 0.0 {
                    continue;
                }
                if colour[v] == u8::MAX {
                    colour[v] = 1 - colour[u];
                    stack.push(v);
                } else if colour[v] == colour[u] {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum MixingOutcome {
    Mixed {
        steps: u64,
    },
    /// The cap was reached; `periodic` flags a bipartite non-lazy chain,
    /// which never mixes.
    CapReached {
        cap: u64,
        periodic: bool,
    },
}

impl MixingOutcome {
    pub fn steps(&self) -> Option<u64> {
        match self {
            MixingOutcome::Mixed { steps } => Some(*steps),
            MixingOutcome::CapReached { .. } => None,
        }
    }
}

/// Least `t` with `max_{u,x} |P^t(u, x) − π_x| ≤ epsilon`.
pub fn tv_mixing_time(p: &TransitionMatrix, epsilon: f64, cap: u64) -> MixingOutcome {
    let n = p.len();
    let mut dists: Vec<Vec<f64>> = (0..n)
        .map(|u| {
            let mut d = vec![0.0; n];
            d[u] = 1.0;
            d
        })
        .collect();
    let distance = |dists: &Vec<Vec<f64>>| {
        dists
            .iter()
            .flat_map(|d| d.iter().zip(&p.pi).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max)
    };
    for t in 0..=cap {
        if distance(&dists) <= epsilon {
            return MixingOutcome::Mixed { steps: t };
        }
        if t == cap {
            break;
        }
        for d in dists.iter_mut() {
            *d = p.apply(d);
        }
    }
    MixingOutcome::CapReached {
        cap,
        periodic: !p.lazy && p.is_bipartite(),
    }
}

/// Return probabilities `r_t = (P^t)_{vv}` for `t < horizon`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReturnSeries {
    pub vertex: usize,
    pub values: Vec<f64>,
}

impl ReturnSeries {
    /// R_v = Σ_t r_t = R_T(1).
    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }
}

pub fn return_series(p: &TransitionMatrix, v: usize, horizon: usize) -> Result<ReturnSeries> {
    if v >= p.len() {
        return Err(Error::invalid(format!("vertex {v} out of range")));
    }
    if horizon == 0 {
        return Err(Error::invalid("horizon must be positive"));
    }
    let mut dist = vec![0.0; p.len()];
    dist[v] = 1.0;
    let mut values = Vec::with_capacity(horizon);
    for t in 0..horizon {
        values.push(dist[v]);
        if t + 1 < horizon {
            dist = p.apply(&dist);
        }
    }
    Ok(ReturnSeries { vertex: v, values })
}

/// R_T(z) = Σ_j r_j z^j by Horner's rule.
pub fn evaluate_rt(series: &ReturnSeries, z: Complex64) -> Complex64 {
    series
        .values
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &r| acc * z + r)
}

/// Minimum of `|R_T(z)|` over `k` equally spaced points of `|z| = radius`;
/// returns the minimum and the angle attaining it.
pub fn min_modulus_on_circle(series: &ReturnSeries, radius: f64, k: usize) -> (f64, f64) {
    (0..k.max(1))
        .map(|i| {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / k.max(1) as f64;
            (
                evaluate_rt(series, Complex64::from_polar(radius, theta)).norm(),
                theta,
            )
        })
        .fold((f64::INFINITY, 0.0), |best, cur| {
            if cur.0 < best.0 {
                cur
            } else {
                best
            }
        })
}

/// Predicted `Pr(A_t(v)) ≈ (1 + p_v)^{−t}` with `p_v = π_v / R_v`; the
/// correction terms, bounded by `O(T π_v)`, are taken as zero.
pub fn first_visit_prediction(pi_v: f64, r_v: f64, t: f64) -> f64 {
    let p_v = pi_v / r_v;
    (1.0 + p_v).powf(-t)
}

/// True when `T π_v` exceeds 0.1, so the prediction's dropped corrections are
/// not small.
pub fn mixing_window_warning(pi_v: f64, window: u64) -> bool {
    window as f64 * pi_v > 0.1
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    /// 1 − λ₂ with λ₂ the second-largest eigenvalue.
    pub gap: f64,
    pub lambda2: f64,
    /// Smallest eigenvalue; negative values near −1 indicate near-periodicity.
    pub lambda_min: f64,
}

/// Spectral gap of a reversible chain via the symmetrised matrix
/// `D^{1/2} P D^{−1/2}` with `D = diag(π)`.
pub fn spectral_gap(p: &TransitionMatrix) -> Result<Spectrum> {
    let db = p.detailed_balance_error();
    if db > 1e-8 {
        return Err(Error::NotReversible(db));
    }
    let n = p.len();
    let dense = p.to_dense()?;
    let sq: Vec<f64> = p.pi.iter().map(|x| x.sqrt()).collect();
    let s = DMatrix::from_fn(n, n, |x, y| {
        0.5 * (sq[x] / sq[y] * dense[(x, y)] + sq[y] / sq[x] * dense[(y, x)])
    });
    let mut eig: Vec<f64> = SymmetricEigen::new(s).eigenvalues.iter().copied().collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    let lambda2 = if n > 1 { eig[1] } else { eig[0] };
    Ok(Spectrum {
        gap: 1.0 - lambda2,
        lambda2,
        lambda_min: *eig.last().unwrap(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Multigraph;

    fn unit(g: &Multigraph) -> WeightedGraph {
        WeightedGraph::from_multigraph(g)
    }

    #[test]
    fn single_edge_matrices() {
        let g = unit(&Multigraph::path(2));
        let p = transition_matrix(&g, false).unwrap();
        assert_eq!(p.get(0, 1), 1.0);
        assert_eq!(p.get(0, 0), 0.0);
        let q = transition_matrix(&g, true).unwrap();
        for (u, v) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert_eq!(q.get(u, v), 0.5);
        }
    }

    #[test]
    fn weighted_path() {
        let g = WeightedGraph::new(3, vec![(0, 1, 2.0), (1, 2, 1.0)]).unwrap();
        let p = transition_matrix(&g, false).unwrap();
        assert!((p.get(1, 0) - 2.0 / 3.0).abs() < 1e-15);
        assert!(p.row_sum_error() < 1e-12);
        assert!(p.stationarity_error() < 1e-12);
        assert!(p.detailed_balance_error() < 1e-12);
    }

    #[test]
    fn loops_and_multi_edges_merge() {
        let g = WeightedGraph::new(2, vec![(0, 0, 1.0), (0, 1, 1.0), (0, 1, 1.0)]).unwrap();
        let p = transition_matrix(&g, false).unwrap();
        assert_eq!(p.get(0, 0), 0.5);
        assert_eq!(p.get(0, 1), 0.5);
        assert_eq!(p.row(0).len(), 2);
    }

    #[test]
    fn size_guard_and_connectivity() {
        let g = unit(&Multigraph::cycle(10));
        assert!(matches!(
            transition_matrix_with_limit(&g, false, 5),
            Err(Error::SizeLimit { .. })
        ));
        let d = WeightedGraph::new(3, vec![(0, 1, 1.0)]).unwrap();
        assert!(matches!(
            transition_matrix(&d, false),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn mixing_times() {
        let k = transition_matrix(&unit(&Multigraph::complete(5)), true).unwrap();
        let t = tv_mixing_time(&k, 1e-6, 1000).steps().unwrap();
        // lazy K5: P^t(u,u) - 1/5 = (4/5)(3/8)^t
        let want = (0..).find(|&t| 0.8 * 0.375f64.powi(t) <= 1e-6).unwrap();
        assert_eq!(t, want as u64);
        let two = transition_matrix(&unit(&Multigraph::cycle(2)), false).unwrap();
        assert_eq!(
            tv_mixing_time(&two, 1e-3, 50),
            MixingOutcome::CapReached {
                cap: 50,
                periodic: true
            }
        );
        assert_eq!(tv_mixing_time(&two, 1.0, 50).steps(), Some(0));
    }

    #[test]
    fn return_series_of_edge() {
        let p = transition_matrix(&unit(&Multigraph::path(2)), false).unwrap();
        for horizon in 1..8 {
            let s = return_series(&p, 0, horizon).unwrap();
            assert_eq!(s.values[0], 1.0);
            assert_eq!(s.total(), horizon.div_ceil(2) as f64);
        }
        let s = return_series(&p, 0, 4).unwrap();
        assert_eq!(evaluate_rt(&s, Complex64::new(1.0, 0.0)).re, 2.0);
        // 1 + z^2 at z = i is 0
        assert!(evaluate_rt(&s, Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let (m, _) = min_modulus_on_circle(&s, 1.0, 4);
        assert!(m < 1e-15);
    }

    #[test]
    fn first_visit_prediction_limits() {
        assert_eq!(first_visit_prediction(0.01, 2.0, 0.0), 1.0);
        assert!((first_visit_prediction(0.01, 1.0, 1.0) - 1.0 / 1.01).abs() < 1e-15);
        assert!(mixing_window_warning(0.01, 11));
        assert!(!mixing_window_warning(0.01, 10));
    }

    #[test]
    fn spectra() {
        let k3 = transition_matrix(&unit(&Multigraph::complete(3)), false).unwrap();
        let s = spectral_gap(&k3).unwrap();
        assert!((s.lambda2 + 0.5).abs() < 1e-12);
        assert!((s.gap - 1.5).abs() < 1e-12);
        let e = transition_matrix(&unit(&Multigraph::path(2)), true).unwrap();
        let s = spectral_gap(&e).unwrap();
        assert!((s.gap - 1.0).abs() < 1e-12);
        let c4 = transition_matrix(&unit(&Multigraph::cycle(4)), true).unwrap();
        let s = spectral_gap(&c4).unwrap();
        assert!((s.gap - 0.5).abs() < 1e-12);
        assert!(s.lambda_min.abs() < 1e-12);
    }
}
