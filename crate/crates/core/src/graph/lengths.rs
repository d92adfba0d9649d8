//! Path lengths of subdivided kernel edges.
//!
//! Placing `ν₂` degree-two vertices on `M` kernel edges uniformly gives a
//! uniform composition `ℓ₁ + ⋯ + ℓ_M = ν₂ + M` with every `ℓ_i ≥ 1`. The same
//! law is that of independent geometrics conditioned on their sum, which the
//! sequential sampler realises exactly.

use num_rational::Ratio;
use rand::seq::index;
use rand::Rng;
use serde::Serialize;

use super::DegreeSequence;
use crate::error::{Error, Result};

/// Uniform composition of `nu2 + m_edges` into `m_edges` positive parts, by
/// choosing the `m_edges - 1` cut points among the `nu2 + m_edges - 1` gaps.
pub fn sample_path_lengths_uniform<R: Rng + ?Sized>(
    m_edges: usize,
    nu2: usize,
    rng: &mut R,
) -> Vec<usize> {
    assert!(m_edges >= 1, "need at least one kernel edge");
    let total = nu2 + m_edges;
    let mut cuts = index::sample(rng, total - 1, m_edges - 1).into_vec();
    cuts.sort_unstable();
    let mut lengths = Vec::with_capacity(m_edges);
    let mut prev = 0;
    for c in cuts {
        lengths.push(c + 1 - prev);
        prev = c + 1;
    }
    lengths.push(total - prev);
    lengths
}

/// Probability that the first of `m_edges` lengths summing to `total` equals
/// `z`: `C(total − z − 1, m_edges − 2) / C(total − 1, m_edges − 1)`.
pub fn first_length_pmf(m_edges: usize, total: usize, z: usize) -> f64 {
    let r = first_length_pmf_exact(m_edges, total, z);
    *r.numer() as f64 / *r.denom() as f64
}

/// Exact rational form of [`first_length_pmf`]. Intended for small arguments.
pub fn first_length_pmf_exact(m_edges: usize, total: usize, z: usize) -> Ratio<u128> {
    assert!(m_edges >= 1 && total >= m_edges);
    if m_edges == 1 {
        return Ratio::from_integer(u128::from(z == total));
    }
    if z == 0 || z + m_edges - 1 > total {
        return Ratio::from_integer(0);
    }
    Ratio::new(
        binomial(total - z - 1, m_edges - 2),
        binomial(total - 1, m_edges - 1),
    )
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Geometric lengths conditioned on their sum, sampled one coordinate at a
/// time from the exact conditional marginal of the first remaining length.
pub fn sample_path_lengths_geometric<R: Rng + ?Sized>(
    m_edges: usize,
    nu2: usize,
    rng: &mut R,
) -> Vec<usize> {
    assert!(m_edges >= 1, "need at least one kernel edge");
    let mut remaining = nu2 + m_edges;
    let mut lengths = Vec::with_capacity(m_edges);
    for k in (2..=m_edges).rev() {
        // k edges left to fill with `remaining` total.
        let max_z = remaining - (k - 1);
        let u: f64 = rng.random();
        // pmf(1) = (k-1)/(remaining-1); successive ratios
        // pmf(z+1)/pmf(z) = (remaining - z - k + 1)/(remaining - z - 1).
        let mut p = (k - 1) as f64 / (remaining - 1) as f64;
        let mut acc = p;
        let mut z = 1;
        while acc < u && z < max_z {
            p *= (remaining - z - k + 1) as f64 / (remaining - z - 1) as f64;
            z += 1;
            acc += p;
        }
        lengths.push(z);
        remaining -= z;
    }
    lengths.push(remaining);
    lengths
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PathLengthBounds {
    /// a_m = 4 (M + ν₂) ln M / M.
    pub upper: f64,
    /// b_m = ⌈(M + ν₂) / (M² ln M)⌉.
    pub lower: usize,
}

pub fn path_length_tail_bounds(seq: &DegreeSequence) -> Result<PathLengthBounds> {
    let m = seq.kernel_edges();
    if m < 2 {
        return Err(Error::invalid("tail bounds need at least two kernel edges"));
    }
    let mf = m as f64;
    let total = (m + seq.nu2()) as f64;
    let ln_m = mf.ln();
    Ok(PathLengthBounds {
        upper: 4.0 * total * ln_m / mf,
        lower: (total / (mf * mf * ln_m)).ceil() as usize,
    })
}

/// Counts lengths strictly below `b_m` and strictly above `a_m`.
pub fn count_bound_violations(lengths: &[usize], bounds: &PathLengthBounds) -> (usize, usize) {
    let below = lengths.iter().filter(|&&l| l < bounds.lower).count();
    let above = lengths.iter().filter(|&&l| l as f64 > bounds.upper).count();
    (below, above)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::trial_rng;
    use crate::stats::chi_square_test;

    #[test]
    fn compositions_are_valid() {
        let mut rng = trial_rng(3, 0);
        for &(m, nu2) in &[(1, 0), (1, 9), (3, 0), (5, 17), (40, 3)] {
            for _ in 0..50 {
                for l in [
                    sample_path_lengths_uniform(m, nu2, &mut rng),
                    sample_path_lengths_geometric(m, nu2, &mut rng),
                ] {
                    assert_eq!(l.len(), m);
                    assert!(l.iter().all(|&x| x >= 1));
                    assert_eq!(l.iter().sum::<usize>(), m + nu2);
                }
            }
        }
    }

    #[test]
    fn degenerate_cases() {
        let mut rng = trial_rng(3, 1);
        assert_eq!(sample_path_lengths_uniform(3, 0, &mut rng), vec![1, 1, 1]);
        assert_eq!(sample_path_lengths_geometric(3, 0, &mut rng), vec![1, 1, 1]);
        assert_eq!(sample_path_lengths_geometric(1, 7, &mut rng), vec![8]);
        assert_eq!(sample_path_lengths_uniform(1, 7, &mut rng), vec![8]);
    }

    #[test]
    fn first_length_marginal() {
        // M = 2, ν₂ = 2: C(2,0)/C(3,1) = 1/3.
        assert_eq!(first_length_pmf_exact(2, 4, 1), Ratio::new(1, 3));
        let total: Ratio<u128> = (1..=10).map(|z| first_length_pmf_exact(4, 10, z)).sum();
        assert_eq!(total, Ratio::from_integer(1));
    }

    #[test]
    fn two_edges_one_extra_vertex() {
        let mut rng = trial_rng(5, 0);
        let mut counts = [0u64; 2];
        for _ in 0..20_000 {
            let l = sample_path_lengths_uniform(2, 1, &mut rng);
            counts[l[0] - 1] += 1;
        }
        let (_, p) = chi_square_test(&counts, &[0.5, 0.5]);
        assert!(p > 0.001, "p = {p}");
    }

    #[test]
    fn tail_bounds_formulae() {
        let s = DegreeSequence::from_counts(&[(2, 100), (4, 50)]).unwrap();
        assert_eq!(s.kernel_edges(), 100);
        let b = path_length_tail_bounds(&s).unwrap();
        assert!((b.upper - 8.0 * 100f64.ln()).abs() < 1e-12);
        assert!((b.upper - 36.84).abs() < 0.01);
        let s = DegreeSequence::regular(3, 20).unwrap();
        let b = path_length_tail_bounds(&s).unwrap();
        assert!((b.upper - 4.0 * 30f64.ln()).abs() < 1e-12);
        assert_eq!(b.lower, 1);
        assert_eq!(count_bound_violations(&[1, 2, 100], &b), (0, 1));
    }
}
