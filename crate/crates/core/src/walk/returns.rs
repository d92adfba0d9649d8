use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{WalkOptions, WeightedGraph};
use crate::error::{Error, Result};
use crate::rng::trial_rng;
use crate::stats::mean_and_se;

/// Where a walk starts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StartMode {
    /// A draw from the stationary distribution.
    #[default]
    Stationary,
    Vertex(usize),
}

impl StartMode {
    fn pick<R: Rng + ?Sized>(self, g: &WeightedGraph, rng: &mut R) -> usize {
        match self {
            StartMode::Stationary => g.sample_stationary(rng),
            StartMode::Vertex(v) => v,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub trials: usize,
    pub mean: f64,
    pub std_err: Option<f64>,
}

fn check_vertex(g: &WeightedGraph, v: usize) -> Result<()> {
    if v >= g.vertex_count() {
        Err(Error::invalid(format!("vertex {v} out of range")))
    } else {
        Ok(())
    }
}

/// Estimates `Pr(A_t(v))`, the probability that the walk does not visit `v`
/// at any time in `[window_start, t]`, for each `t` in `ts`.
#[allow(clippy::too_many_arguments)]
pub fn empirical_unvisit_prob(
    g: &WeightedGraph,
    v: usize,
    window_start: u64,
    ts: &[u64],
    trials: usize,
    start: StartMode,
    opts: WalkOptions,
    seed: u64,
) -> Result<Vec<f64>> {
    check_vertex(g, v)?;
    if let StartMode::Vertex(s) = start {
        check_vertex(g, s)?;
    }
    let Some(&horizon) = ts.iter().max() else {
        return Ok(Vec::new());
    };
    if ts.iter().any(|&t| t < window_start) {
        return Err(Error::invalid("every t must be at least the window start"));
    }
    if trials == 0 {
        return Err(Error::invalid("trials must be positive"));
    }
    // first visit time to v within the window, or horizon + 1 if none
    let first_hits: Vec<u64> = (0..trials)
        .into_par_iter()
        .map(|j| {
            let mut rng = trial_rng(seed, j as u64);
            let mut cur = start.pick(g, &mut rng);
            let mut t = 0;
            loop {
                if t >= window_start && cur == v {
                    return t;
                }
                if t == horizon {
                    return horizon + 1;
                }
                cur = g.step(cur, opts.lazy, &mut rng);
                t += 1;
            }
        })
        .collect();
    Ok(ts
        .iter()
        .map(|&t| first_hits.iter().filter(|&&h| h > t).count() as f64 / trials as f64)
        .collect())
}

/// Mean number of visits to `v` at times `0..horizon` of a walk started at
/// `v`; the start itself counts.
pub fn empirical_returns(
    g: &WeightedGraph,
    v: usize,
    horizon: u64,
    trials: usize,
    opts: WalkOptions,
    seed: u64,
) -> Result<Estimate> {
    check_vertex(g, v)?;
    if horizon == 0 || trials == 0 {
        return Err(Error::invalid("horizon and trials must be positive"));
    }
    let counts: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|j| {
            let mut rng = trial_rng(seed, j as u64);
            let mut cur = v;
            let mut visits = 1u64;
            for _ in 1..horizon {
                cur = g.step(cur, opts.lazy, &mut rng);
                if cur == v {
                    visits += 1;
                }
            }
            visits as f64
        })
        .collect();
    let (mean, std_err) = mean_and_se(&counts);
    Ok(Estimate {
        trials,
        mean,
        std_err,
    })
}

/// Empirical `Pr(Z_t − t·π(A) ≥ γ)` for each `γ`, where `Z_t` counts visits
/// to the set `A` at times `1..=t`.
#[allow(clippy::too_many_arguments)]
pub fn empirical_visit_tail(
    g: &WeightedGraph,
    set: &[usize],
    t: u64,
    gammas: &[f64],
    trials: usize,
    start: StartMode,
    opts: WalkOptions,
    seed: u64,
) -> Result<Vec<f64>> {
    for &a in set {
        check_vertex(g, a)?;
    }
    if trials == 0 {
        return Err(Error::invalid("trials must be positive"));
    }
    let mut in_set = vec![false; g.vertex_count()];
    for &a in set {
        in_set[a] = true;
    }
    let pi = g.stationary();
    let pi_a: f64 = (0..g.vertex_count())
        .filter(|&x| in_set[x])
        .map(|x| pi[x])
        .sum();
    let excess: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|j| {
            let mut rng = trial_rng(seed, j as u64);
            let mut cur = start.pick(g, &mut rng);
            let mut visits = 0u64;
            for _ in 0..t {
                cur = g.step(cur, opts.lazy, &mut rng);
                if in_set[cur] {
                    visits += 1;
                }
            }
            visits as f64 - t as f64 * pi_a
        })
        .collect();
    Ok(gammas
        .iter()
        .map(|&gamma| excess.iter().filter(|&&x| x >= gamma).count() as f64 / trials as f64)
        .collect())
}
