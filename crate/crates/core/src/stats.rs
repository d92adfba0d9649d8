//! Small statistical helpers shared by the simulation checks.

use statrs::distribution::{Beta, ChiSquared, ContinuousCDF};

/// Sample mean and standard error. The standard error is `None` for fewer
/// than two observations.
pub fn mean_and_se(values: &[f64]) -> (f64, Option<f64>) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, None);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n < 2 {
        return (mean, None);
    }
    let var = values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    (mean, Some((var / n as f64).sqrt()))
}

/// Pearson chi-square statistic and upper-tail p-value for observed counts
/// against expected probabilities.
pub fn chi_square_test(observed: &[u64], expected_prob: &[f64]) -> (f64, f64) {
    assert_eq!(observed.len(), expected_prob.len());
    let total: u64 = observed.iter().sum();
    let mut stat = 0.0;
    let mut cells = 0usize;
    for (&o, &p) in observed.iter().zip(expected_prob) {
        if p <= 0.0 {
            assert_eq!(o, 0, "observation in a zero-probability cell");
            continue;
        }
        let e = p * total as f64;
        stat += (o as f64 - e).powi(2) / e;
        cells += 1;
    }
    if cells < 2 {
        return (stat, 1.0);
    }
    let dist = ChiSquared::new((cells - 1) as f64).expect("positive degrees of freedom");
    (stat, 1.0 - dist.cdf(stat))
}

/// Two-sample chi-square test of homogeneity on a shared set of categories.
pub fn chi_square_homogeneity(a: &[u64], b: &[u64]) -> (f64, f64) {
    assert_eq!(a.len(), b.len());
    let na: u64 = a.iter().sum();
    let nb: u64 = b.iter().sum();
    let n = (na + nb) as f64;
    let mut stat = 0.0;
    let mut cells = 0usize;
    for (&x, &y) in a.iter().zip(b) {
        let col = (x + y) as f64;
        if col == 0.0 {
            continue;
        }
        cells += 1;
        for (obs, row) in [(x, na), (y, nb)] {
            let e = row as f64 * col / n;
            stat += (obs as f64 - e).powi(2) / e;
        }
    }
    if cells < 2 {
        return (stat, 1.0);
    }
    let dist = ChiSquared::new((cells - 1) as f64).expect("positive degrees of freedom");
    (stat, 1.0 - dist.cdf(stat))
}

/// Exact two-sided Clopper–Pearson interval for a binomial proportion.
pub fn clopper_pearson(successes: u64, trials: u64, confidence: f64) -> (f64, f64) {
    assert!(trials > 0 && successes <= trials);
    let alpha = 1.0 - confidence;
    let k = successes as f64;
    let n = trials as f64;
    let lower = if successes == 0 {
        0.0
    } else {
        Beta::new(k, n - k + 1.0).unwrap().inverse_cdf(alpha / 2.0)
    };
    let upper = if successes == trials {
        1.0
    } else {
        Beta::new(k + 1.0, n - k)
            .unwrap()
            .inverse_cdf(1.0 - alpha / 2.0)
    };
    (lower, upper)
}

/// Binomial standard deviation of a proportion estimate.
pub fn binomial_sigma(p: f64, trials: u64) -> f64 {
    (p * (1.0 - p) / trials as f64).sqrt()
}
