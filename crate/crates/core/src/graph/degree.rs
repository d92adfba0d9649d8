use serde::Serialize;

use crate::error::{Error, Result};

/// A degree sequence with every degree at least two, kept in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequence {
    degrees: Vec<usize>,
    /// `counts[j]` is the number of vertices of degree `j`.
    counts: Vec<usize>,
}

impl DegreeSequence {
    pub fn new(mut degrees: Vec<usize>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some((vertex, &degree)) = degrees.iter().enumerate().find(|(_, &d)| d < 2) {
            return Err(Error::DegreeTooSmall { vertex, degree });
        }
        let sum: usize = degrees.iter().sum();
        if sum % 2 == 1 {
            return Err(Error::OddDegreeSum(sum));
        }
        degrees.sort_unstable();
        let max = *degrees.last().unwrap();
        let mut counts = vec![0; max + 1];
        for &d in &degrees {
            counts[d] += 1;
        }
        Ok(Self { degrees, counts })
    }

    /// `n` vertices of degree `d`.
    pub fn regular(d: usize, n: usize) -> Result<Self> {
        Self::new(vec![d; n])
    }

    /// Builds a sequence from `(degree, count)` pairs.
    pub fn from_counts(pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .flat_map(|&(d, c)| std::iter::repeat_n(d, c))
                .collect(),
        )
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// ν_j, the number of vertices of degree `j`.
    pub fn nu(&self, j: usize) -> usize {
        self.counts.get(j).copied().unwrap_or(0)
    }

    pub fn nu2(&self) -> usize {
        self.nu(2)
    }

    pub fn max_degree(&self) -> usize {
        *self.degrees.last().unwrap()
    }

    /// Number of kernel vertices `N` (degree at least three).
    pub fn kernel_vertices(&self) -> usize {
        self.degrees.len() - self.nu2()
    }

    /// Number of kernel edges `M = ½ Σ_{j≥3} j ν_j`.
    pub fn kernel_edges(&self) -> usize {
        self.moment(1) as usize / 2
    }

    /// Total number of edges `m = ν₂ + M`.
    pub fn total_edges(&self) -> usize {
        self.nu2() + self.kernel_edges()
    }

    /// Minimum kernel degree `d`, if the kernel is nonempty.
    pub fn min_kernel_degree(&self) -> Option<usize> {
        self.degrees.iter().copied().find(|&d| d >= 3)
    }

    /// ξ = M / m.
    pub fn xi(&self) -> f64 {
        self.kernel_edges() as f64 / self.total_edges() as f64
    }

    /// D_k = Σ_{j≥3} j^k ν_j.
    pub fn moment(&self, k: u32) -> u128 {
        self.degrees
            .iter()
            .filter(|&&d| d >= 3)
            .map(|&d| (d as u128).pow(k))
            .sum()
    }

    /// σ = Σ_j d_j(d_j − 1) / 2m over the whole sequence.
    pub fn sigma(&self) -> f64 {
        let num: usize = self.degrees.iter().map(|d| d * (d - 1)).sum();
        num as f64 / (2 * self.total_edges()) as f64
    }

    /// The degrees of the kernel vertices, ascending.
    pub fn kernel_degrees(&self) -> &[usize] {
        &self.degrees[self.nu2()..]
    }

    /// The same sequence with every count multiplied by `factor`.
    pub fn scaled(&self, factor: usize) -> Self {
        let degrees = self
            .degrees
            .iter()
            .flat_map(|&d| std::iter::repeat_n(d, factor))
            .collect();
        Self::new(degrees).expect("scaling preserves validity")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Measured only; the condition is asymptotic and has no finite-n verdict.
    Reported,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub verdict: Verdict,
    pub measured: f64,
    pub threshold: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NicenessReport {
    pub kernel_size: usize,
    /// Diverging kernel: passes when the kernel is nonempty, measured value `N`.
    pub diverging_kernel: Check,
    /// ζ̂₀ = ln(max degree) / ln N.
    pub sub_poly_degrees: Check,
    /// D₃ / M against `a0`.
    pub third_moment: Check,
    /// ν_d / N against `alpha`.
    pub min_kernel_degree: Check,
}

impl NicenessReport {
    pub fn all_pass(&self) -> bool {
        [
            &self.diverging_kernel,
            &self.sub_poly_degrees,
            &self.third_moment,
            &self.min_kernel_degree,
        ]
        .iter()
        .all(|c| c.verdict != Verdict::Fail)
    }
}

/// Evaluates the four niceness conditions at the sequence's actual size.
pub fn validate_nice(seq: &DegreeSequence, a0: f64, alpha: f64) -> NicenessReport {
    let n_kernel = seq.kernel_vertices();
    let m_kernel = seq.kernel_edges();
    let diverging_kernel = Check {
        verdict: if n_kernel > 0 {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        measured: n_kernel as f64,
        threshold: None,
    };
    let zeta_hat = if n_kernel > 1 {
        (seq.max_degree() as f64).ln() / (n_kernel as f64).ln()
    } else {
        f64::INFINITY
    };
    let sub_poly_degrees = Check {
        verdict: Verdict::Reported,
        measured: zeta_hat,
        threshold: None,
    };
    let third = if m_kernel > 0 {
        seq.moment(3) as f64 / m_kernel as f64
    } else {
        f64::INFINITY
    };
    let third_moment = Check {
        verdict: if third <= a0 {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        measured: third,
        threshold: Some(a0),
    };
    let frac = match seq.min_kernel_degree() {
        Some(d) => seq.nu(d) as f64 / n_kernel as f64,
        None => 0.0,
    };
    let min_kernel_degree = Check {
        verdict: if frac >= alpha && n_kernel > 0 {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        measured: frac,
        threshold: Some(alpha),
    };
    NicenessReport {
        kernel_size: n_kernel,
        diverging_kernel,
        sub_poly_degrees,
        third_moment,
        min_kernel_degree,
    }
}
