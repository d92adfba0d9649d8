//! Walks on a star of paths: a hub joined to leaves by disjoint paths.

use rand::Rng;
use rayon::prelude::*;

use super::CoverStats;
use crate::error::{Error, Result};
use crate::rng::trial_rng;

fn check_lengths(lengths: &[usize], min_paths: usize) -> Result<()> {
    if lengths.len() < min_paths {
        return Err(Error::invalid(format!("need at least {min_paths} paths")));
    }
    if lengths.contains(&0) {
        return Err(Error::invalid("path lengths must be at least 1"));
    }
    Ok(())
}

/// One unit-weight walk from the hub until a leaf is hit; returns the path
/// index of the leaf and the number of steps.
fn walk_to_leaf<R: Rng + ?Sized>(lengths: &[usize], rng: &mut R) -> (usize, u64) {
    let mut path = 0;
    let mut depth = 0;
    let mut steps = 0u64;
    loop {
        steps += 1;
        if depth == 0 {
            path = rng.random_range(0..lengths.len());
            depth = 1;
        } else if rng.random::<bool>() {
            depth += 1;
        } else {
            depth -= 1;
        }
        if depth == lengths[path] {
            return (path, steps);
        }
    }
}

/// Fraction of walks from the hub that first reach the leaf of each path.
pub fn star_exit_distribution(lengths: &[usize], trials: usize, seed: u64) -> Result<Vec<f64>> {
    check_lengths(lengths, 2)?;
    let exits: Vec<usize> = (0..trials)
        .into_par_iter()
        .map(|j| walk_to_leaf(lengths, &mut trial_rng(seed, j as u64)).0)
        .collect();
    let mut counts = vec![0usize; lengths.len()];
    for e in exits {
        counts[e] += 1;
    }
    Ok(counts.iter().map(|&c| c as f64 / trials as f64).collect())
}

/// Statistics of the time for a walk from the hub to reach any leaf.
pub fn star_leaf_hitting_time(lengths: &[usize], trials: usize, seed: u64) -> Result<CoverStats> {
    check_lengths(lengths, 1)?;
    let times: Vec<u64> = (0..trials)
        .into_par_iter()
        .map(|j| walk_to_leaf(lengths, &mut trial_rng(seed, j as u64)).1)
        .collect();
    Ok(CoverStats::from_values(times, false))
}

/// Exit law `ℓ_i⁻¹ / Σ_j ℓ_j⁻¹`.
pub fn star_exit_law(lengths: &[usize]) -> Vec<f64> {
    let s: f64 = lengths.iter().map(|&l| 1.0 / l as f64).sum();
    lengths.iter().map(|&l| 1.0 / l as f64 / s).collect()
}

/// Expected leaf-hitting time `(ℓ₁ + ⋯ + ℓ_k) / Σ ℓ_i⁻¹`.
pub fn star_leaf_hitting_formula(lengths: &[usize]) -> f64 {
    let total: usize = lengths.iter().sum();
    let s: f64 = lengths.iter().map(|&l| 1.0 / l as f64).sum();
    total as f64 / s
}
